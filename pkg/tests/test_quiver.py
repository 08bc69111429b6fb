import pytest

import oracles
from onesided.linalg import Matrix
from onesided.quiver import (
    Arrow,
    QuiverAlgebra,
    RepMorphism,
    Representation,
    RepresentationError,
    cokernel,
    composition_factors,
    direct_sum,
    find_isomorphism,
    hom_dim,
    image,
    is_isomorphic,
    kernel,
    projective_cover,
    pullback,
    pushout,
    split_idempotent,
)


def test_indecomposable_dimension_vectors(a3):
    for name, x in a3.objects.items():
        assert x.dims == oracles.dims(name)


def test_projectives_and_injectives_coincide_where_expected(a3):
    assert is_isomorphic(a3.alg.projective("1"), a3.S1)
    assert is_isomorphic(a3.alg.injective("1"), a3.P3)
    assert is_isomorphic(a3.alg.injective("3"), a3.S3)


@pytest.mark.parametrize("src", oracles.NAMES)
@pytest.mark.parametrize("dst", oracles.NAMES)
def test_hom_dimensions_match_interval_combinatorics(a3, src, dst):
    assert hom_dim(a3.objects[src], a3.objects[dst]) == oracles.hom_dim(src, dst)


def test_bad_map_shape_rejected(a3):
    with pytest.raises((RepresentationError, ValueError)):
        Representation(a3.alg, {"1": 1, "2": 1, "3": 0}, {"a": Matrix.zeros(2, 1), "b": Matrix.zeros(1, 0)})


def test_non_natural_morphism_rejected(a3):
    # Identity at vertex 2 only; the square through arrow a fails.
    blocks = {"1": Matrix.zeros(1, 1), "2": Matrix.identity(1), "3": Matrix.zeros(0, 0)}
    with pytest.raises(RepresentationError):
        RepMorphism(a3.P2, a3.P2, blocks)


def test_relation_kills_path():
    from onesided.quiver import Relation
    alg = QuiverAlgebra(["1", "2", "3"], [Arrow("a", "2", "1"), Arrow("b", "3", "2")],
                        [Relation.of([(1, ["b", "a"])])])
    p3 = alg.projective("3")
    assert p3.dims == (0, 1, 1)


def test_kernel_cokernel_of_iota_pi(a3):
    k, incl = kernel(a3.pi)
    assert k.dims == a3.S2.dims and incl.is_mono()
    q, quot = cokernel(a3.iota)
    assert is_isomorphic(q, a3.S3) and quot.is_epi()
    im, epi, mono = image(a3.pi)
    assert (mono @ epi) == a3.pi


def test_pullback_and_pushout_commute(a3):
    obj, p1, p2 = pullback(a3.pi, a3.pi)
    assert a3.pi @ p1 == a3.pi @ p2
    assert obj.dims == (0, 2, 1)
    obj, q1, q2 = pushout(a3.iota, a3.iota)
    assert q1 @ a3.iota == q2 @ a3.iota


def test_direct_sum_structure_maps(a3):
    s = direct_sum([a3.S1, a3.I2])
    for i, (inj, proj) in enumerate(zip(s.injections, s.projections)):
        assert (proj @ inj).is_iso()
    assert (s.projections[1] @ s.injections[0]).is_zero()


def test_split_idempotent_recovers_summand(a3):
    s = direct_sum([a3.P2, a3.S3])
    e = s.injections[0] @ s.projections[0]
    obj, r, s_ = split_idempotent(e)
    assert is_isomorphic(obj, a3.P2)
    assert s_ @ r == e
    assert (r @ s_).is_iso()


def test_projective_cover_of_indecomposables(a3):
    tops = {"S1": "1", "P2": "2", "P3": "3", "S2": "2", "I2": "3", "S3": "3"}
    for name, x in a3.objects.items():
        cover, map_ = projective_cover(x)
        assert map_.is_epi()
        assert is_isomorphic(cover, a3.alg.projective(tops[name]))


def test_composition_factors(a3):
    assert composition_factors(a3.I2) == {"2": 1, "3": 1}


def test_find_isomorphism_none_between_distinct(a3):
    assert find_isomorphism(a3.S2, a3.S3) is None
    iso = find_isomorphism(a3.P3, a3.P3)
    assert iso is not None and iso.is_iso()
