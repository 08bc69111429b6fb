import random

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import build_a3
from onesided.complexes import ChainMap, cone, is_acyclic, totalize
from onesided.linalg import Matrix, mat_cokernel, mat_kernel, mat_solve
from onesided.percolation import PercolatingSpec, SerreGenerators, q_is_zero
from onesided.quiver import cokernel, hom_dim, image, kernel, sum_object
from onesided.sampling import random_acyclic_bicomplex, random_complex, random_morphism, random_object

A3 = build_a3()
SERRE = PercolatingSpec(A3.ase, SerreGenerators(("1",)))
seeds = st.integers(min_value=0, max_value=2**32 - 1)
small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_side=4):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    return Matrix.of([[draw(small) for _ in range(cols)] for _ in range(rows)])


@given(matrices())
def test_rank_nullity(m):
    k = mat_kernel(m)
    assert (m @ k).is_zero()
    assert k.cols + m.rank() == m.cols
    assert (mat_cokernel(m) @ m).is_zero()


@given(matrices(), st.data())
def test_solve_recovers_consistent_systems(m, data):
    x = Matrix.of([[data.draw(small)] for _ in range(m.cols)])
    sol = mat_solve(m, m @ x)
    assert sol is not None and m @ sol == m @ x


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_kernel_image_cokernel(seed):
    rng = random.Random(seed)
    x, y = random_object(rng, A3.ind), random_object(rng, A3.ind)
    f = random_morphism(rng, x, y)
    k, incl = kernel(f)
    q, quot = cokernel(f)
    im, epi, mono = image(f)
    assert (f @ incl).is_zero() and (quot @ f).is_zero()
    assert incl.is_mono() and quot.is_epi() and epi.is_epi() and mono.is_mono()
    assert [a + b for a, b in zip(k.dims, im.dims)] == list(x.dims)
    assert [a + b for a, b in zip(q.dims, im.dims)] == list(y.dims)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_hom_dim_is_additive(seed):
    rng = random.Random(seed)
    names = [rng.choice(oracles.NAMES) for _ in range(2)]
    target = rng.choice(oracles.NAMES)
    x = sum_object([A3.objects[n] for n in names], A3.alg)
    assert hom_dim(x, A3.objects[target]) == sum(oracles.hom_dim(n, target) for n in names)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_cones_are_complexes(seed):
    rng = random.Random(seed)
    x = random_complex(rng, A3.ind, length=3)
    f = ChainMap.identity(x)
    c = cone(f)
    for n in c.degrees():
        assert (c.diff(n + 1) @ c.diff(n)).is_zero()
    assert is_acyclic(A3.ase, c)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_totalization_stays_acyclic(seed):
    dc = random_acyclic_bicomplex(random.Random(seed), A3.ind)
    assert is_acyclic(A3.ase, totalize(dc))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_quotient_vanishing_matches_blocks(seed):
    rng = random.Random(seed)
    x, y = random_object(rng, A3.ind), random_object(rng, A3.ind)
    f = random_morphism(rng, x, y)
    blocks = {v: f.block(v).tolist() for v in ("2", "3")}
    assert q_is_zero(SERRE, f) == oracles.vanishes_in_quotient(blocks)
