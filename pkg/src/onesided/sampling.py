"""Seeded random generators for property tests and probe suites."""

from __future__ import annotations

import random
from typing import Sequence

from .complexes import ChainMap, Complex, DoubleComplex, chain_map_basis
from .conflations import KCPair, RetractDiagram
from .linalg import Matrix, mat_kernel
from .quiver import (
    RepMorphism,
    Representation,
    cokernel,
    combine,
    direct_sum,
    hom_basis,
    image,
    kernel,
    matrix_morphism,
    projective_cover,
    sum_object,
)


def random_coefficients(rng: random.Random, n: int, spread: int = 2) -> list[int]:
    return [rng.randint(-spread, spread) for _ in range(n)]


def random_morphism(rng: random.Random, x: Representation, y: Representation, spread: int = 2) -> RepMorphism:
    basis = hom_basis(x, y)
    if not basis:
        return RepMorphism.zero(x, y)
    return combine(basis, random_coefficients(rng, len(basis), spread), x, y)


def random_object(rng: random.Random, pool: Sequence[Representation], max_summands: int = 2) -> Representation:
    parts = [rng.choice(pool) for _ in range(rng.randint(1, max_summands))]
    return sum_object(parts, pool[0].algebra)


def random_automorphism(rng: random.Random, x: Representation, attempts: int = 16) -> RepMorphism:
    basis = hom_basis(x, x)
    for _ in range(attempts):
        g = combine(basis, random_coefficients(rng, len(basis), 3), x, x)
        if g.is_iso():
            return g
    return RepMorphism.identity(x)


def random_complex(rng: random.Random, pool: Sequence[Representation], length: int = 3,
                   start: int = -1, max_summands: int = 2) -> Complex:
    """Each differential is a random map out of the cokernel of the previous one, so d∘d = 0."""
    alg = pool[0].algebra
    entries = {start: random_object(rng, pool, max_summands)}
    diffs: dict[int, RepMorphism] = {}
    for n in range(start, start + length - 1):
        nxt = random_object(rng, pool, max_summands)
        if n - 1 in diffs:
            q, quot = cokernel(diffs[n - 1])
        else:
            q, quot = entries[n], RepMorphism.identity(entries[n])
        diffs[n] = random_morphism(rng, q, nxt) @ quot
        entries[n + 1] = nxt
    return Complex(alg, entries, diffs)


def random_complex_exact_at(rng: random.Random, pool: Sequence[Representation], n: int = 0,
                            max_summands: int = 2) -> Complex:
    """A random complex on degrees n-2 .. n+1 whose homology vanishes at n.

    C^{n-1} contains a projective cover of ker d^n, so d^{n-1} maps onto
    that kernel; the bottom differential lands in ker d^{n-1}.
    """
    alg = pool[0].algebra
    mid, top = random_object(rng, pool, max_summands), random_object(rng, pool, max_summands)
    d_n = random_morphism(rng, mid, top)
    k, k_incl = kernel(d_n)
    cover_obj, cover = projective_cover(k)
    extra = random_object(rng, pool, max_summands)
    below = direct_sum([cover_obj, extra])
    to_k = matrix_morphism([cover_obj, extra], [k], [[cover, random_morphism(rng, extra, k)]])
    d_below = k_incl @ to_k
    k2, k2_incl = kernel(d_below)
    bottom = random_object(rng, pool, max_summands)
    d_bottom = k2_incl @ random_morphism(rng, bottom, k2)
    return Complex(alg, {n - 2: bottom, n - 1: below.obj, n: mid, n + 1: top},
                   {n - 2: d_bottom, n - 1: d_below, n: d_n})


def random_exact_complex(rng: random.Random, pool: Sequence[Representation], start: int = 0) -> Complex:
    """ker f ↣ X -> Y ↠ coker f for a random f."""
    x, y = random_object(rng, pool), random_object(rng, pool)
    f = random_morphism(rng, x, y)
    _, incl = kernel(f)
    _, quot = cokernel(f)
    return Complex(x.algebra, {start: incl.src, start + 1: x, start + 2: y, start + 3: quot.dst},
                   {start: incl, start + 1: f, start + 2: quot})


def _chain_maps_killing(rng: random.Random, x: Complex, y: Complex, previous: ChainMap | None) -> ChainMap:
    """A random chain map x -> y whose composite with ``previous`` vanishes."""
    basis = chain_map_basis(x, y)
    if not basis:
        return ChainMap.zero(x, y)
    if previous is None:
        coeffs = random_coefficients(rng, len(basis))
    else:
        degrees = sorted(set(previous.src.degrees()) | set(y.degrees()))
        composites = [b @ previous for b in basis]
        flats = [tuple(v for n in degrees for v in comp.component(n).flat()) for comp in composites]
        height = len(flats[0])
        if height == 0:
            coeffs = random_coefficients(rng, len(basis))
        else:
            ker = mat_kernel(Matrix.from_columns(flats, height))
            if ker.cols == 0:
                return ChainMap.zero(x, y)
            weights = random_coefficients(rng, ker.cols)
            coeffs = [sum(w * ker[i, j] for j, w in enumerate(weights)) for i in range(ker.rows)]
    total = ChainMap.zero(x, y)
    for c, b in zip(coeffs, basis):
        if c:
            total = total + c * b
    return total


def random_acyclic_bicomplex(rng: random.Random, pool: Sequence[Representation], columns: int = 3) -> DoubleComplex:
    """Exact columns joined by chain maps with vanishing consecutive composites."""
    alg = pool[0].algebra
    cols = [random_exact_complex(rng, pool) for _ in range(columns)]
    horizontals: list[ChainMap] = []
    previous = None
    for i in range(columns - 1):
        h = _chain_maps_killing(rng, cols[i], cols[i + 1], previous)
        horizontals.append(h)
        previous = h
    entries, dh, dv = {}, {}, {}
    for i, col in enumerate(cols):
        for j in col.degrees():
            entries[(i, j)] = col.entry(j)
            if j + 1 in col.entries:
                dv[(i, j)] = col.diff(j)
        if i < columns - 1:
            for j in col.degrees():
                dh[(i, j)] = horizontals[i].component(j)
    return DoubleComplex(alg, entries, dh, dv)


def random_conflation(rng: random.Random, pool: Sequence[Representation]) -> KCPair:
    """ker f ↣ X ↠ im f, a short exact sequence."""
    x, y = random_object(rng, pool), random_object(rng, pool)
    f = random_morphism(rng, x, y)
    _, incl = kernel(f)
    _, epi, _ = image(f)
    return KCPair(incl, epi)


def direct_sum_pair(p: KCPair, q: KCPair) -> tuple[KCPair, tuple]:
    sums = tuple(direct_sum([a, b]) for a, b in ((p.left, q.left), (p.middle, q.middle), (p.right, q.right)))
    infl = matrix_morphism([p.left, q.left], [p.middle, q.middle], [[p.inflation, None], [None, q.inflation]])
    defl = matrix_morphism([p.middle, q.middle], [p.right, q.right], [[p.deflation, None], [None, q.deflation]])
    return KCPair(infl, defl), sums


def random_retract_diagram(rng: random.Random, inner: KCPair, other: KCPair) -> tuple[KCPair, RetractDiagram]:
    """Embed ``inner`` as a summand of inner ⊕ other, twisted by random automorphisms of the three terms."""
    outer, sums = direct_sum_pair(inner, other)
    autos = [random_automorphism(rng, s.obj) for s in sums]
    inverses = [a.inverse() for a in autos]
    twisted = KCPair(autos[1] @ outer.inflation @ inverses[0], autos[2] @ outer.deflation @ inverses[1])
    diagram = RetractDiagram(
        tuple(a @ s.injections[0] for a, s in zip(autos, sums)),
        tuple(s.projections[0] @ a_inv for a_inv, s in zip(inverses, sums)),
    )
    return twisted, diagram
