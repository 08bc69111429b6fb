import random

import pytest

from onesided.completions import (
    IdemObject,
    find_retraction,
    idem_hom_basis,
    idem_pair_from_summand,
    idem_split_decomposition,
    inherited_conflation,
    is_idem_morphism,
    random_idempotent,
    wic_build,
)
from onesided.quiver import RepMorphism, RepresentationError, direct_sum, is_isomorphic
from onesided.sampling import direct_sum_pair, random_object
from onesided.specs import load_category_spec


def test_non_idempotent_rejected(a3):
    with pytest.raises(RepresentationError):
        IdemObject(a3.S1, 2 * RepMorphism.identity(a3.S1))


def test_summand_hom_space(a3):
    s = direct_sum([a3.S1, a3.S2])
    proj1 = s.injections[0] @ s.projections[0]
    a, b = IdemObject(s.obj, proj1), IdemObject.whole(a3.S1)
    basis = idem_hom_basis(a, b)
    assert len(basis) == 1
    assert all(is_idem_morphism(a, b, f) for f in basis)


def test_random_idempotents_split(a3):
    rng = random.Random(5)
    for _ in range(20):
        x = random_object(rng, a3.ind, 3)
        e = random_idempotent(x, rng)
        assert e @ e == e
        split = idem_split_decomposition(IdemObject(x, e))
        assert split.verify()


def test_find_retraction(a3):
    s = direct_sum([a3.P2, a3.S3]).obj
    ret = find_retraction(s, a3.S3)
    assert ret is not None and (ret.r @ ret.s).is_iso()
    assert is_isomorphic(ret.kernel_object.realize()[0], a3.P2)
    assert find_retraction(a3.P3, a3.S3) is None


def test_wic_levels_on_four_vertices():
    spec = load_category_spec("k4-wic.json")
    tower = wic_build([spec.reps[n] for n in spec.extra["generators"]])
    named = [sorted(spec.name_of(o.realize()[0]) for o in lvl.new_objects) for lvl in tower]
    assert named == [["S0", "S0+S1", "S1+S2", "S2+S3"], ["S1"], ["S2"], ["S3"]]
    assert tower.stable_level == 3


def test_wic_of_indecomposables_is_stable_at_once(a3):
    tower = wic_build(a3.ind)
    assert tower.stable_level == 0
    assert len(tower.objects()) == 6


def test_inherited_conflation_from_summand(a3):
    outer, sums = direct_sum_pair(a3.eta, a3.eta)
    projections = tuple(s.injections[0] @ s.projections[0] for s in sums)
    pair = idem_pair_from_summand(outer, projections)
    assert inherited_conflation(a3.ase, pair)
    assert not inherited_conflation(a3.split, pair)
