import random

import pytest

import oracles
from onesided.complexes import stalk
from onesided.conflations import COUNTEREXAMPLE, HOLDS, INCONCLUSIVE
from onesided.derived import ext_dim
from onesided.percolation import (
    ExplicitObjects,
    LiftError,
    NotSerreError,
    PercolatingSpec,
    Roof,
    RoofComplex,
    SerreGenerators,
    WeakIsoError,
    a_reject,
    a_trace,
    check_c2op,
    check_percolating,
    is_weak_iso,
    l2_quotient_probe,
    lift_complex,
    make_roof,
    q_is_zero,
    quotient_hom_dim,
    quotient_hom_roofs,
    roof_compose,
    roof_equal,
    verdier_probe,
)
from onesided.quiver import RepMorphism, hom_basis, is_isomorphic
from onesided.sampling import random_morphism, random_object

NON_A = [n for n in oracles.NAMES if n != "S1"]


@pytest.fixture(scope="module")
def serre(a3):
    return PercolatingSpec(a3.ase, SerreGenerators(("1",)))


def test_membership(a3, serre):
    assert {n for n, x in a3.objects.items() if serre.contains(x)} == {"S1"}
    assert serre.contains(a3.alg.zero())


def test_reject_and_trace(a3, serre):
    assert a_reject(serre, a3.P2)[0].dims == a3.P2.dims
    assert a_trace(serre, a3.P3)[0].dims == a3.S1.dims
    assert a_reject(serre, a3.S1)[0].is_zero()
    assert a_trace(serre, a3.I2)[0].is_zero()


@pytest.mark.parametrize("src", NON_A)
@pytest.mark.parametrize("dst", NON_A)
def test_quotient_hom_matches_restriction_oracle(a3, serre, src, dst):
    assert quotient_hom_dim(serre, a3.objects[src], a3.objects[dst]) == oracles.quotient_hom_dim(src, dst)


def test_q_is_zero_agrees_with_block_oracle(a3, serre):
    rng = random.Random(11)
    for _ in range(60):
        x, y = random_object(rng, a3.ind), random_object(rng, a3.ind)
        f = random_morphism(rng, x, y)
        blocks = {v: f.block(v).tolist() for v in ("2", "3")}
        assert q_is_zero(serre, f) == oracles.vanishes_in_quotient(blocks)


def test_percolating_axioms_hold_for_serre(a3, serre):
    reports = check_percolating(serre, a3.probes)
    assert [r.axiom for r in reports] == ["P1", "P2", "P3", "P4"]
    assert all(r.verdict == HOLDS for r in reports)


def test_non_serre_subcategory_fails_p1(a3):
    spec = PercolatingSpec(a3.ase, ExplicitObjects((a3.P2,)))
    verdicts = {r.axiom: r.verdict for r in check_percolating(spec, a3.probes)}
    assert verdicts["P1"] == COUNTEREXAMPLE
    assert verdicts["P2"] == INCONCLUSIVE


def test_serre_only_operations_refuse_explicit_objects(a3):
    spec = PercolatingSpec(a3.ase, ExplicitObjects((a3.P2,)))
    with pytest.raises(NotSerreError):
        a_reject(spec, a3.P3)


def test_weak_isomorphisms(a3, serre):
    p2_to_s2 = hom_basis(a3.P2, a3.S2)[0]
    w = is_weak_iso(serre, p2_to_s2)
    assert w is not None and [kind for kind, _ in w.chain] == ["deflation"]
    s1_to_p2 = hom_basis(a3.S1, a3.P2)[0]
    assert is_weak_iso(serre, s1_to_p2) is None
    assert len(is_weak_iso(serre, RepMorphism.identity(a3.P3))) == 0


def test_roof_inverts_weak_iso(a3, serre):
    p2_to_s2 = hom_basis(a3.P2, a3.S2)[0]
    inverse = make_roof(serre, p2_to_s2, RepMorphism.identity(a3.P2))
    forward = Roof.of_morphism(p2_to_s2)
    loop = roof_compose(serre, inverse, forward)
    assert roof_equal(serre, loop, Roof.of_morphism(RepMorphism.identity(a3.S2)))
    with pytest.raises(WeakIsoError):
        make_roof(serre, hom_basis(a3.S2, a3.I2)[0], RepMorphism.identity(a3.S2))


def test_quotient_roofs_span_quotient_hom(a3, serre):
    roofs = quotient_hom_roofs(serre, a3.P3, a3.I2)
    assert len(roofs) == oracles.quotient_hom_dim("P3", "I2")
    for r in roofs:
        assert r.source == a3.P3 and r.target == a3.I2


def test_lift_two_term_complex(a3, serre):
    x = RoofComplex({0: a3.S2, 1: a3.S2}, {0: Roof.of_morphism(RepMorphism.identity(a3.S2))})
    z, t = lift_complex(serre, x)
    assert set(t) == {0, 1}
    with pytest.raises(LiftError):
        lift_complex(serre, RoofComplex({}, {}))


def test_verdier_suites_and_c2op(a3, serre):
    suites = verdier_probe(serre, a3.probes)
    assert [s.name for s in suites] == ["a", "b", "c"]
    assert all(s.passed and s.checked > 0 for s in suites)
    c2 = check_c2op(serre, a3.probes)
    assert c2.passed and c2.checked > 0


def test_no_second_extension_between_quotient_objects(a3, serre):
    for x in a3.ind:
        for y in a3.ind:
            assert ext_dim(a3.ase, x, y, 2) == 0
    assert l2_quotient_probe(serre, a3.probes, spans=10).passed


def test_zero_subcategory_is_percolating(a3):
    spec = PercolatingSpec(a3.ase, SerreGenerators(()))
    assert all(r.verdict == HOLDS for r in check_percolating(spec, a3.probes))
    assert quotient_hom_dim(spec, a3.P3, a3.I2) == 1
