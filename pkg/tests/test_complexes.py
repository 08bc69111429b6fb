import random

import pytest

from onesided.complexes import (
    STRICT,
    WEAK,
    ChainMap,
    Complex,
    ComplexError,
    TruncationUndefined,
    Verdict,
    chain_map_basis,
    complexes_isomorphic,
    cone,
    is_acyclic,
    is_contractible,
    is_exact,
    is_null_homotopic,
    is_quasi_iso,
    minimal_reduce,
    stalk,
    stalk_map,
    totalize,
    truncate_above,
    truncate_below,
)
from onesided.quiver import RepMorphism
from onesided.sampling import random_acyclic_bicomplex, random_complex, random_complex_exact_at


def eta_complex(a3):
    return Complex(a3.alg, {-1: a3.S2, 0: a3.I2, 1: a3.S3}, {-1: a3.iota, 0: a3.pi})


def test_d_squared_must_vanish(a3):
    with pytest.raises(ComplexError):
        Complex(a3.alg, {0: a3.I2, 1: a3.I2, 2: a3.I2},
                {0: RepMorphism.identity(a3.I2), 1: RepMorphism.identity(a3.I2)})


def test_eta_is_exact_but_not_acyclic_in_restricted_class(a3):
    x = eta_complex(a3)
    assert is_exact(x)
    assert is_acyclic(a3.ase, x)
    assert not is_acyclic(a3.restricted, x)


def test_shift_moves_degrees_and_negates(a3):
    x = eta_complex(a3).shift(1)
    assert x.span() == (-2, 0)
    assert x.diff(-2) == -1 * a3.iota


def test_cone_of_identity_is_contractible(a3):
    f = stalk_map(RepMorphism.identity(a3.P3))
    assert is_contractible(cone(f))
    assert is_null_homotopic(ChainMap.identity(cone(f)))


def test_minimal_reduce_strips_contractible_part(a3):
    f = stalk_map(RepMorphism.identity(a3.P2))
    reduced, _, _ = minimal_reduce(cone(f))
    assert reduced.is_zero()


def test_chain_map_basis_between_stalks(a3):
    assert len(chain_map_basis(stalk(a3.P3), stalk(a3.I2))) == 1
    assert chain_map_basis(stalk(a3.S3), stalk(a3.S2)) == []


def test_quasi_iso_verdicts(a3):
    f = stalk_map(a3.pi)
    assert is_quasi_iso(a3.ase, f) == Verdict.NO
    iso = stalk_map(2 * RepMorphism.identity(a3.S3))
    assert is_quasi_iso(a3.restricted, iso, STRICT) == Verdict.YES
    with pytest.raises(ValueError):
        is_quasi_iso(a3.ase, iso, "sideways")


def test_comparison_of_eta_is_quasi_iso_only_in_full_class(a3):
    from onesided.derived import comparison_map
    h = comparison_map(a3.eta)
    assert is_quasi_iso(a3.ase, h, WEAK) == Verdict.YES
    assert is_quasi_iso(a3.restricted, h, STRICT) != Verdict.YES


def test_truncations_compose_to_original_homology(a3):
    rng = random.Random(7)
    x = random_complex_exact_at(rng, a3.ind, 0)
    below, into = truncate_below(x, 0)
    above, out = truncate_above(x, 0)
    assert into.dst == x and out.src == x
    assert below.span()[1] <= 0 and above.span()[0] >= -1


def test_truncation_undefined_raises(a3):
    # At degree 1 the factor of d^0 through ker d^1 = S3 is pi itself, not an admissible deflation.
    x = Complex(a3.alg, {0: a3.I2, 1: a3.S3}, {0: a3.pi})
    with pytest.raises(TruncationUndefined):
        truncate_below(x, 1, a3.restricted)
    below, _ = truncate_below(x, 1, a3.ase)
    assert below == x


def test_totalization_of_acyclic_bicomplex_is_acyclic(a3):
    rng = random.Random(1)
    for _ in range(5):
        dc = random_acyclic_bicomplex(rng, a3.ind)
        assert is_acyclic(a3.ase, totalize(dc))


def test_random_complexes_are_complexes(a3):
    rng = random.Random(0)
    for _ in range(10):
        x = random_complex(rng, a3.ind, length=4)
        for n in x.degrees():
            assert (x.diff(n + 1) @ x.diff(n)).is_zero()


def test_isomorphism_of_complexes_detects_scaling(a3):
    x = eta_complex(a3)
    y = Complex(a3.alg, x.entries, {-1: 3 * a3.iota, 0: a3.pi})
    assert complexes_isomorphic(x, y)
