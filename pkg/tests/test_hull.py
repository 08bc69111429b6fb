import pytest

from onesided.complexes import ChainMap, Verdict
from onesided.conflations import is_conflation
from onesided.hull import (
    HullError,
    HullObject,
    hull_cokernel,
    hull_conflation_check,
    hull_embed,
    hull_hom_dim,
    hull_presentation,
    represents,
)
from onesided.quiver import RepMorphism, hom_basis, is_isomorphic


def embedded_sequence(a3, f, g):
    c = a3.restricted
    x, y, z = hull_embed(c, f.src), hull_embed(c, f.dst), hull_embed(c, g.dst)
    maps = (ChainMap(x.complex, y.complex, {0: f}), ChainMap(y.complex, z.complex, {0: g}))
    return x, y, z, maps


def test_hull_objects_need_monic_differential(a3):
    with pytest.raises(HullError):
        HullObject(a3.pi)


def test_eta_becomes_a_conflation_in_the_hull(a3):
    x, y, z, maps = embedded_sequence(a3, a3.iota, a3.pi)
    assert not is_conflation(a3.restricted, a3.eta)
    assert hull_conflation_check(a3.restricted, x, y, z, maps, a3.probes) is True


def test_non_exact_sequence_rejected(a3):
    p3_to_i2 = hom_basis(a3.P3, a3.I2)[0]
    x, y, z, maps = embedded_sequence(a3, p3_to_i2, a3.pi)
    assert hull_conflation_check(a3.restricted, x, y, z, maps, a3.probes) is False


def test_mismatched_maps_rejected(a3):
    x, y, z, maps = embedded_sequence(a3, a3.iota, a3.pi)
    assert hull_conflation_check(a3.restricted, y, x, z, maps, a3.probes) is False


def test_cokernel_of_inflation_represents_quotient(a3):
    h = hull_cokernel(a3.ase, a3.iota)
    assert is_isomorphic(h.homology(), a3.S3)
    assert represents(a3.ase, h, a3.S3) == Verdict.YES
    assert represents(a3.ase, h, a3.S2) == Verdict.NO


def test_presentation_is_a_hull_conflation(a3):
    h = hull_cokernel(a3.ase, a3.iota)
    lo, up, maps = hull_presentation(a3.ase, h)
    assert hull_conflation_check(a3.ase, lo, up, h, maps, a3.probes) is True


def test_hull_hom_agrees_with_ambient_for_embedded_objects(a3):
    for x in a3.ind:
        for y in a3.ind:
            got = hull_hom_dim(a3.restricted, hull_embed(a3.restricted, x), hull_embed(a3.restricted, y))
            assert got == len(hom_basis(x, y))


def test_embedding_is_a_stalk(a3):
    h = hull_embed(a3.ase, a3.I2)
    assert h.lower.is_zero() and h.upper == a3.I2
    assert h.complex.degrees() == [0]
    assert isinstance(h.differential, RepMorphism)
