import pytest

import oracles
from onesided.complexes import Complex, Verdict, stalk
from onesided.conflations import split_pair
from onesided.derived import (
    PreconditionError,
    conflation_to_triangle,
    derived_hom,
    ext_dim,
    is_extension_closed_probe,
    is_projective,
    projective_resolution,
    r3_triangle_criterion,
    triangle_verdict,
)


@pytest.mark.parametrize("klass", ["ase", "restricted"])
def test_projectives(a3, klass):
    c = getattr(a3, klass)
    found = {n for n, x in a3.objects.items() if is_projective(c, x, a3.probes)}
    assert found == {"S1", "P2", "P3"}


def test_resolution_of_s3(a3):
    r = projective_resolution(a3.restricted, a3.S3)
    assert r.complex.entry(-1).dims == a3.P2.dims
    assert r.complex.entry(0).dims == a3.P3.dims
    assert r.augmentation.dst == stalk(a3.S3)


@pytest.mark.parametrize("src", oracles.NAMES)
@pytest.mark.parametrize("dst", oracles.NAMES)
def test_derived_hom_matches_euler_oracle(a3, src, dst):
    x, y = a3.objects[src], a3.objects[dst]
    for k in (-1, 0, 1, 2):
        assert ext_dim(a3.restricted, x, y, k) == oracles.derived_hom_dim(src, dst, k), k


def test_eta_is_a_triangle_without_being_a_conflation(a3):
    assert triangle_verdict(a3.restricted, a3.eta, a3.probes) == Verdict.YES
    with pytest.raises(ValueError):
        conflation_to_triangle(a3.restricted, a3.eta, a3.probes)


def test_conflation_to_triangle_for_split_sequence(a3):
    cert = conflation_to_triangle(a3.restricted, split_pair(a3.S1, a3.S3), a3.probes)
    assert cert.verdict == Verdict.YES
    assert cert.connecting_is_zero


def test_nonsplit_triangle_has_nonzero_connecting_map(a3):
    cert = conflation_to_triangle(a3.ase, a3.eta, a3.probes)
    assert not cert.connecting_is_zero


def test_r3_criterion_needs_r3(a3):
    with pytest.raises(PreconditionError):
        r3_triangle_criterion(a3.restricted, a3.eta, a3.probes)
    assert r3_triangle_criterion(a3.ase, a3.eta, a3.probes)


def test_split_class_is_extension_closed(a3):
    assert is_extension_closed_probe(a3.split, a3.probes).closed


def test_full_class_is_extension_closed(a3):
    report = is_extension_closed_probe(a3.ase, a3.probes)
    assert report.closed and report.checked > 0


def test_derived_hom_of_complexes(a3):
    eta = Complex(a3.alg, {-1: a3.S2, 0: a3.I2, 1: a3.S3}, {-1: a3.iota, 0: a3.pi})
    # Acyclic in the full class, so it is zero in the derived category.
    assert derived_hom(a3.ase, eta, eta).dimension == 0


def test_injectives_of_full_class(a3):
    from onesided.derived import inflations_split, is_injective
    assert {n for n, x in a3.objects.items() if is_injective(a3.ase, x, a3.probes)} == {"P3", "I2", "S3"}
    assert inflations_split(a3.ase, a3.I2, a3.probes)
    assert not inflations_split(a3.ase, a3.S2, a3.probes)


def test_split_inflations_do_not_force_injectivity(a3):
    from onesided.conflations import ProbeSet
    from onesided.derived import inflations_split, is_injective
    f = [a3.S1, a3.P2, a3.P3, a3.S2, a3.S3]
    probes = ProbeSet(tuple(f))
    assert inflations_split(a3.ase, a3.S2, probes, subcategory=f)
    assert not is_injective(a3.ase, a3.S2, probes, subcategory=f)
