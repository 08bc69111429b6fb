"""Bounded cochain complexes of representations.

Differentials raise degree: ``d^n: C^n -> C^{n+1}``. Shifting by k moves
entries down (``(Σ^k C)^n = C^{n+k}``) and multiplies the differential by
``(-1)^k``. Only nonzero entries are stored.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping, Sequence

from .conflations import (
    AllShortExact,
    ConflationClass,
    KCPair,
    ProbeSet,
    check_axiom,
    is_conflation,
    is_deflation,
    is_kc_pair,
)
from .linalg import block_diagonal, find_invertible_combination, generic_invertibility
from .linsys import MorphismSystem
from .quiver import (
    QuiverAlgebra,
    RepMorphism,
    Representation,
    combine,
    direct_sum,
    factor_through_mono,
    hom_basis,
    image,
    kernel,
    matrix_morphism,
)


class ComplexError(ValueError):
    pass


class TruncationUndefined(ComplexError):
    """The factor of d^{n-1} through ker d^n is not a deflation of the class."""


class Complex:
    __slots__ = ("algebra", "entries", "diffs", "_hash")

    def __init__(self, algebra: QuiverAlgebra, entries: Mapping[int, Representation],
                 diffs: Mapping[int, RepMorphism] | None = None, check: bool = True):
        self.algebra = algebra
        self.entries = {n: x for n, x in sorted(entries.items()) if not x.is_zero()}
        diffs = dict(diffs or {})
        self.diffs = {}
        for n, d in sorted(diffs.items()):
            if n in self.entries and n + 1 in self.entries and not d.is_zero():
                self.diffs[n] = d
        self._hash = None
        if check:
            for n, d in diffs.items():
                if d.src != self.entry(n) or d.dst != self.entry(n + 1):
                    raise ComplexError(f"differential at degree {n} has the wrong source or target")
            for n, d in self.diffs.items():
                if n + 1 in self.diffs and not (self.diffs[n + 1] @ d).is_zero():
                    raise ComplexError(f"d^{n + 1} d^{n} is not zero")

    @classmethod
    def zero(cls, algebra: QuiverAlgebra) -> "Complex":
        return cls(algebra, {})

    def entry(self, n: int) -> Representation:
        return self.entries.get(n) or self.algebra.zero()

    def diff(self, n: int) -> RepMorphism:
        d = self.diffs.get(n)
        return d if d is not None else RepMorphism.zero(self.entry(n), self.entry(n + 1))

    def degrees(self) -> list[int]:
        return list(self.entries)

    def span(self) -> tuple[int, int] | None:
        return (min(self.entries), max(self.entries)) if self.entries else None

    def is_zero(self) -> bool:
        return not self.entries

    def shift(self, k: int) -> "Complex":
        sign = -1 if k % 2 else 1
        return Complex(self.algebra, {n - k: x for n, x in self.entries.items()},
                       {n - k: sign * d if sign < 0 else d for n, d in self.diffs.items()}, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self.entries == other.entries and self.diffs == other.diffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self.entries.items()), tuple(self.diffs.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{n}:{x.dims}" for n, x in self.entries.items())
        return f"Complex({body})"


def stalk(x: Representation, degree: int = 0) -> Complex:
    return Complex(x.algebra, {degree: x})


class ChainMap:
    __slots__ = ("src", "dst", "components", "_hash")

    def __init__(self, src: Complex, dst: Complex, components: Mapping[int, RepMorphism] | None = None,
                 check: bool = True):
        self.src, self.dst = src, dst
        given = dict(components or {})
        self.components = {}
        for n, f in sorted(given.items()):
            if check and (f.src != src.entry(n) or f.dst != dst.entry(n)):
                raise ComplexError(f"component at degree {n} has the wrong source or target")
            if not f.is_zero():
                self.components[n] = f
        self._hash = None
        if check:
            for n in set(src.degrees()) | set(dst.degrees()):
                lhs = self.component(n + 1) @ src.diff(n)
                rhs = dst.diff(n) @ self.component(n)
                if lhs != rhs:
                    raise ComplexError(f"chain map square at degree {n} does not commute")

    @classmethod
    def zero(cls, src: Complex, dst: Complex) -> "ChainMap":
        return cls(src, dst, check=False)

    @classmethod
    def identity(cls, x: Complex) -> "ChainMap":
        return cls(x, x, {n: RepMorphism.identity(e) for n, e in x.entries.items()}, check=False)

    def component(self, n: int) -> RepMorphism:
        f = self.components.get(n)
        return f if f is not None else RepMorphism.zero(self.src.entry(n), self.dst.entry(n))

    def degrees(self) -> list[int]:
        return sorted(set(self.src.degrees()) | set(self.dst.degrees()))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.dst != self.src:
            raise ComplexError("composition of non-composable chain maps")
        return ChainMap(other.src, self.dst, {n: self.component(n) @ other.component(n)
                                              for n in other.src.degrees()}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.component(n) + other.component(n)
                                             for n in self.degrees()}, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.component(n) - other.component(n)
                                             for n in self.degrees()}, check=False)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: -f for n, f in self.components.items()}, check=False)

    def __rmul__(self, scalar) -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: scalar * f for n, f in self.components.items()}, check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChainMap) and self.src == other.src and self.dst == other.dst
                and self.components == other.components)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.src, self.dst, tuple(self.components.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"ChainMap({self.src!r} -> {self.dst!r})"

    def is_zero(self) -> bool:
        return not self.components

    def shift(self, k: int) -> "ChainMap":
        return ChainMap(self.src.shift(k), self.dst.shift(k),
                        {n - k: f for n, f in self.components.items()}, check=False)


def stalk_map(f: RepMorphism, degree: int = 0) -> ChainMap:
    return ChainMap(stalk(f.src, degree), stalk(f.dst, degree), {degree: f}, check=False)


# -- sums, cones, totalization ---------------------------------------------

def direct_sum_complex(parts: Sequence[Complex]) -> tuple[Complex, list[ChainMap], list[ChainMap]]:
    """Degreewise direct sum with its injections and projections."""
    alg = parts[0].algebra
    degrees = sorted({n for p in parts for n in p.degrees()})
    sums = {n: direct_sum([p.entry(n) for p in parts]) for n in degrees}
    diffs = {}
    for n in degrees:
        if n + 1 in sums:
            k = len(parts)
            grid = [[parts[i].diff(n) if i == j else None for j in range(k)] for i in range(k)]
            diffs[n] = matrix_morphism([p.entry(n) for p in parts], [p.entry(n + 1) for p in parts], grid)
    total = Complex(alg, {n: s.obj for n, s in sums.items()}, diffs, check=False)
    injections = [ChainMap(p, total, {n: sums[n].injections[i] for n in p.degrees()}, check=False)
                  for i, p in enumerate(parts)]
    projections = [ChainMap(total, p, {n: sums[n].projections[i] for n in p.degrees()}, check=False)
                   for i, p in enumerate(parts)]
    return total, injections, projections


def _cone_entry(f: ChainMap, n: int):
    return [f.src.entry(n + 1), f.dst.entry(n)]


def cone(f: ChainMap) -> Complex:
    """cone(f)^n = X^{n+1} ⊕ Y^n with differential [[-d_X, 0], [f, d_Y]]."""
    x, y = f.src, f.dst
    degrees = sorted({n - 1 for n in x.degrees()} | set(y.degrees()))
    entries, diffs = {}, {}
    for n in degrees:
        entries[n] = direct_sum(_cone_entry(f, n)).obj
    for n in degrees:
        if n + 1 in entries:
            diffs[n] = matrix_morphism(_cone_entry(f, n), _cone_entry(f, n + 1),
                                       [[-x.diff(n + 1), None], [f.component(n + 1), y.diff(n)]])
    return Complex(x.algebra, entries, diffs, check=False)


def cone_inclusion(f: ChainMap) -> ChainMap:
    """Y -> cone(f)."""
    c = cone(f)
    return ChainMap(f.dst, c, {n: direct_sum(_cone_entry(f, n)).injections[1] for n in f.dst.degrees()},
                    check=False)


def cone_projection(f: ChainMap) -> ChainMap:
    """cone(f) -> ΣX."""
    c = cone(f)
    return ChainMap(c, f.src.shift(1), {n: direct_sum(_cone_entry(f, n)).projections[0] for n in c.degrees()},
                    check=False)


def cone_map(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap, h: Mapping[int, RepMorphism] | None = None
             ) -> ChainMap:
    """Map cone(f) -> cone(g) induced by a square b∘f ≃ g∘a.

    ``h`` is a homotopy with ``b f - g a = d h + h d`` (h^n: X^n -> Y'^{n-1}),
    giving the component [[a^{n+1}, 0], [h^{n+1}, b^n]].
    """
    h = dict(h or {})
    src, dst = cone(f), cone(g)
    comps = {}
    for n in src.degrees():
        hn = h.get(n + 1) or RepMorphism.zero(f.src.entry(n + 1), g.dst.entry(n))
        comps[n] = matrix_morphism(_cone_entry(f, n), _cone_entry(g, n),
                                   [[a.component(n + 1), None], [hn, b.component(n)]])
    return ChainMap(src, dst, comps)


class DoubleComplex:
    """Bicomplex with commuting squares; ``dh`` raises i, ``dv`` raises j."""

    def __init__(self, algebra: QuiverAlgebra, entries: Mapping[tuple[int, int], Representation],
                 dh: Mapping[tuple[int, int], RepMorphism] | None = None,
                 dv: Mapping[tuple[int, int], RepMorphism] | None = None, check: bool = True):
        self.algebra = algebra
        self.entries = {k: x for k, x in entries.items() if not x.is_zero()}
        self.dh = {k: m for k, m in (dh or {}).items() if k in self.entries and not m.is_zero()}
        self.dv = {k: m for k, m in (dv or {}).items() if k in self.entries and not m.is_zero()}
        if check:
            for (i, j) in self.entries:
                if not (self.h(i + 1, j) @ self.h(i, j)).is_zero() or not (self.v(i, j + 1) @ self.v(i, j)).is_zero():
                    raise ComplexError(f"rows or columns are not complexes at {(i, j)}")
                if self.v(i + 1, j) @ self.h(i, j) != self.h(i, j + 1) @ self.v(i, j):
                    raise ComplexError(f"square at {(i, j)} does not commute")

    def entry(self, i: int, j: int) -> Representation:
        return self.entries.get((i, j)) or self.algebra.zero()

    def h(self, i: int, j: int) -> RepMorphism:
        m = self.dh.get((i, j))
        return m if m is not None else RepMorphism.zero(self.entry(i, j), self.entry(i + 1, j))

    def v(self, i: int, j: int) -> RepMorphism:
        m = self.dv.get((i, j))
        return m if m is not None else RepMorphism.zero(self.entry(i, j), self.entry(i, j + 1))

    def column(self, i: int) -> Complex:
        return Complex(self.algebra, {j: x for (a, j), x in self.entries.items() if a == i},
                       {j: m for (a, j), m in self.dv.items() if a == i}, check=False)

    def row(self, j: int) -> Complex:
        return Complex(self.algebra, {i: x for (i, b), x in self.entries.items() if b == j},
                       {i: m for (i, b), m in self.dh.items() if b == j}, check=False)

    def columns(self) -> list[int]:
        return sorted({i for i, _ in self.entries})

    def rows(self) -> list[int]:
        return sorted({j for _, j in self.entries})


def totalize(dc: DoubleComplex) -> Complex:
    """Tot^n = ⊕_{i+j=n} C^{i,j} (ascending i) with d = d_h + (-1)^i d_v."""
    by_degree: dict[int, list[tuple[int, int]]] = {}
    for (i, j) in sorted(dc.entries):
        by_degree.setdefault(i + j, []).append((i, j))
    entries, diffs = {}, {}
    for n, keys in by_degree.items():
        entries[n] = direct_sum([dc.entries[k] for k in keys]).obj
    for n, keys in by_degree.items():
        targets = by_degree.get(n + 1)
        if not targets:
            continue
        grid = []
        for (k, l) in targets:
            row = []
            for (i, j) in keys:
                if (k, l) == (i + 1, j):
                    row.append(dc.h(i, j))
                elif (k, l) == (i, j + 1):
                    row.append(dc.v(i, j) if i % 2 == 0 else -dc.v(i, j))
                else:
                    row.append(None)
            grid.append(row)
        diffs[n] = matrix_morphism([dc.entries[k] for k in keys], [dc.entries[k] for k in targets], grid)
    tot = Complex(dc.algebra, entries, diffs, check=False)
    for n, d in tot.diffs.items():
        if n + 1 in tot.diffs and not (tot.diffs[n + 1] @ d).is_zero():
            raise AssertionError("totalization sign error: d∘d != 0")
    return tot


# -- acyclicity -------------------------------------------------------------

def kernel_factorization(x: Complex, n: int) -> tuple[Representation, RepMorphism, RepMorphism]:
    """ker d^n with its inclusion i, and the factor p of d^{n-1} with d^{n-1} = i∘p."""
    k, incl = kernel(x.diff(n))
    p = factor_through_mono(incl, x.diff(n - 1))
    return k, incl, p


def degree_pairs(x: Complex) -> list[tuple[int, KCPair]]:
    """For each relevant degree n the pair ker d^n -> C^n -> ker d^{n+1}.

    The degree just below the support is included: there the pair is
    0 -> 0 -> ker d^{n+1}, which is exact only if that kernel vanishes.
    """
    out = []
    for n in sorted(set(x.degrees()) | {m - 1 for m in x.degrees()}):
        _, incl, _ = kernel_factorization(x, n)
        _, _, p = kernel_factorization(x, n + 1)
        out.append((n, KCPair(incl, p)))
    return out


def is_exact(x: Complex) -> bool:
    """Exactness in the ambient abelian category."""
    return all(is_kc_pair(pair) for _, pair in degree_pairs(x))


def is_acyclic(c: ConflationClass, x: Complex) -> bool:
    """Every differential factors as deflation onto its image followed by its inflation into the next term."""
    return all(is_kc_pair(pair) and is_conflation(c, pair) for _, pair in degree_pairs(x))


# -- hom spaces, homotopies ------------------------------------------------

def chain_map_basis(x: Complex, y: Complex) -> list[ChainMap]:
    sys = MorphismSystem()
    degrees = [n for n in x.degrees() if n in y.entries]
    for n in degrees:
        sys.unknown(n, x.entry(n), y.entry(n))
    for n in sorted(set(degrees) | {n - 1 for n in degrees}):
        terms = []
        if n in degrees:
            dy = y.diff(n)
            terms.append((n, lambda f, dy=dy: dy @ f))
        if n + 1 in degrees:
            dx = x.diff(n)
            terms.append((n + 1, lambda f, dx=dx: -(f @ dx)))
        if terms:
            sys.equation(terms, RepMorphism.zero(x.entry(n), y.entry(n + 1)))
    return [ChainMap(x, y, sol, check=False) for sol in sys.solution_space()]


def _homotopy_terms(sys: MorphismSystem, tag, x: Complex, y: Complex, n: int):
    """Terms of (d h + h d)^n for a homotopy with unknowns (tag, m): X^m -> Y^{m-1}."""
    terms = []
    if (n + 1) in x.entries and n in y.entries:
        dx = x.diff(n)
        terms.append(((tag, n + 1), lambda h, dx=dx: h @ dx))
    if n in x.entries and (n - 1) in y.entries:
        dy = y.diff(n - 1)
        terms.append(((tag, n), lambda h, dy=dy: dy @ h))
    return terms


def _declare_homotopy(sys: MorphismSystem, tag, x: Complex, y: Complex) -> None:
    for m in x.degrees():
        if m - 1 in y.entries:
            sys.unknown((tag, m), x.entry(m), y.entry(m - 1))


def _collect_homotopy(sol, tag, x: Complex, y: Complex) -> dict[int, RepMorphism]:
    return {m: sol[(tag, m)] for m in x.degrees() if (tag, m) in sol}


def homotopy_between(f: ChainMap, g: ChainMap) -> dict[int, RepMorphism] | None:
    """h with f - g = d h + h d (h^n: X^n -> Y^{n-1}), or None if there is none."""
    x, y = f.src, f.dst
    if g.src != x or g.dst != y:
        raise ComplexError("homotopy between chain maps with different ends")
    diff = f - g
    if diff.is_zero():
        return {}
    sys = MorphismSystem()
    _declare_homotopy(sys, "h", x, y)
    for n in x.degrees():
        if n in y.entries:
            sys.equation(_homotopy_terms(sys, "h", x, y, n), diff.component(n))
    sol = sys.solve()
    return None if sol is None else _collect_homotopy(sol, "h", x, y)


def is_null_homotopic(f: ChainMap) -> bool:
    return homotopy_between(f, ChainMap.zero(f.src, f.dst)) is not None


def homotopy_inverse(phi: ChainMap) -> tuple[ChainMap, dict, dict] | None:
    """(ψ, h, h') with ψ a chain map, φψ - 1 = dh + hd and ψφ - 1 = dh' + h'd."""
    a, b = phi.src, phi.dst
    sys = MorphismSystem()
    for n in b.degrees():
        if n in a.entries:
            sys.unknown(("psi", n), b.entry(n), a.entry(n))
    _declare_homotopy(sys, "h", b, b)
    _declare_homotopy(sys, "k", a, a)
    has = lambda n: ("psi", n) in sys._unknowns
    for n in sorted(set(b.degrees()) | {n - 1 for n in b.degrees()}):
        terms = []
        if has(n):
            da = a.diff(n)
            terms.append((("psi", n), lambda f, da=da: da @ f))
        if has(n + 1):
            db = b.diff(n)
            terms.append((("psi", n + 1), lambda f, db=db: -(f @ db)))
        if terms:
            sys.equation(terms, RepMorphism.zero(b.entry(n), a.entry(n + 1)))
    for n in b.degrees():
        terms = [(key, lambda h, fn=fn: -fn(h)) for key, fn in _homotopy_terms(sys, "h", b, b, n)]
        if has(n):
            p = phi.component(n)
            terms.append((("psi", n), lambda f, p=p: p @ f))
        sys.equation(terms, RepMorphism.identity(b.entry(n)))
    for n in a.degrees():
        terms = [(key, lambda h, fn=fn: -fn(h)) for key, fn in _homotopy_terms(sys, "k", a, a, n)]
        if has(n):
            p = phi.component(n)
            terms.append((("psi", n), lambda f, p=p: f @ p))
        sys.equation(terms, RepMorphism.identity(a.entry(n)))
    sol = sys.solve()
    if sol is None:
        return None
    psi = ChainMap(b, a, {n: sol[("psi", n)] for n in b.degrees() if has(n)})
    return psi, _collect_homotopy(sol, "h", b, b), _collect_homotopy(sol, "k", a, a)


def is_homotopy_equivalence(phi: ChainMap) -> bool:
    return homotopy_inverse(phi) is not None


def find_complex_isomorphism(x: Complex, y: Complex, seed: int = 0) -> ChainMap | None:
    if x.degrees() != y.degrees() or any(x.entry(n).dims != y.entry(n).dims for n in x.degrees()):
        return None
    if x.is_zero():
        return ChainMap.zero(x, y)
    basis = chain_map_basis(x, y)
    if not basis:
        return None
    space = [block_diagonal([f.component(n).as_matrix() for n in x.degrees()]) for f in basis]
    coeffs = find_invertible_combination(space, seed)
    if coeffs is None:
        return None
    total = ChainMap.zero(x, y)
    for c, f in zip(coeffs, basis):
        if c:
            total = total + c * f
    return total


def complexes_isomorphic(x: Complex, y: Complex) -> bool:
    return find_complex_isomorphism(x, y) is not None


# -- minimal models ------------------------------------------------------------

def _splitting_pair(d: RepMorphism):
    """Find u: I -> C^n, v: C^{n+1} -> I with v∘d∘u = 1 and I nonzero, or None if d is radical.

    A morphism d is radical iff tr(d∘s∘y) = 0 for all s and all
    endomorphisms y of the target. Otherwise φ = d∘s∘y is not nilpotent
    and the Fitting image of φ splits off from d.
    """
    back = hom_basis(d.dst, d.src)
    ends = hom_basis(d.dst, d.dst)
    found = None
    for s in back:
        ds = d @ s
        if ds.trace():
            found = s
            break
        for y in ends:
            if (ds @ y).trace():
                found = s @ y
                break
        if found is not None:
            break
    if found is None:
        return None
    phi = d @ found
    power = phi
    for _ in range(d.dst.total_dim()):
        power = power @ phi
    im, rho, iota = image(power)
    psi = rho @ iota
    proj = psi.inverse() @ rho
    phi_i = proj @ phi @ iota
    u = found @ iota @ phi_i.inverse()
    return u, proj


def _eliminate(x: Complex, n: int, u: RepMorphism, v: RepMorphism):
    """Remove the contractible summand I -> I split off from d^n by (u, v)."""
    d = x.diff(n)
    vd = v @ d
    b, j = kernel(vd)
    bp, jp = kernel(v)
    one_n = RepMorphism.identity(x.entry(n))
    one_n1 = RepMorphism.identity(x.entry(n + 1))
    q = factor_through_mono(j, one_n - u @ vd)
    qp = factor_through_mono(jp, one_n1 - d @ u @ v)
    entries = dict(x.entries)
    entries[n], entries[n + 1] = b, bp
    diffs = dict(x.diffs)
    if n - 1 in x.entries:
        diffs[n - 1] = q @ x.diff(n - 1)
    diffs[n] = qp @ d @ j
    if n + 2 in x.entries:
        diffs[n + 1] = x.diff(n + 1) @ jp
    reduced = Complex(x.algebra, entries, diffs, check=False)
    to_r = {m: RepMorphism.identity(e) for m, e in x.entries.items()}
    to_r[n], to_r[n + 1] = q, qp
    from_r = {m: RepMorphism.identity(e) for m, e in x.entries.items()}
    from_r[n], from_r[n + 1] = j, jp
    to_r = {m: f for m, f in to_r.items() if not reduced.entry(m).is_zero()}
    from_r = {m: f for m, f in from_r.items() if not reduced.entry(m).is_zero()}
    return reduced, ChainMap(x, reduced, to_r, check=False), ChainMap(reduced, x, from_r, check=False)


def minimal_reduce(x: Complex) -> tuple[Complex, ChainMap, ChainMap]:
    """Split off contractible summands until every differential is radical.

    Returns (r, to_r, from_r) with to_r∘from_r = 1 on r and
    from_r∘to_r homotopic to the identity of x.
    """
    current = x
    to_r, from_r = ChainMap.identity(x), ChainMap.identity(x)
    progress = True
    while progress:
        progress = False
        for n in list(current.diffs):
            found = _splitting_pair(current.diff(n))
            if found is None:
                continue
            current, t, f = _eliminate(current, n, *found)
            to_r, from_r = t @ to_r, from_r @ f
            progress = True
            break
    return current, to_r, from_r


def is_contractible(x: Complex) -> bool:
    return minimal_reduce(x)[0].is_zero()


# -- truncations -------------------------------------------------------------

def _checked_factor(x: Complex, n: int, c: ConflationClass | None):
    k, incl, p = kernel_factorization(x, n)
    if c is not None and not is_deflation(c, p):
        raise TruncationUndefined(
            f"the factor of d^{n - 1} through ker d^{n} is not a deflation; truncation undefined at {n}")
    return k, incl, p


def truncate_below(x: Complex, n: int, c: ConflationClass | None = None) -> tuple[Complex, ChainMap]:
    """τ^{≤n}x = (... -> C^{n-1} -> ker d^n -> 0) and its map into x.

    When a class is given, the factor C^{n-1} -> ker d^n must be one of its
    deflations; otherwise :class:`TruncationUndefined` is raised.
    """
    k, incl, p = _checked_factor(x, n, c)
    entries = {m: e for m, e in x.entries.items() if m < n}
    entries[n] = k
    diffs = {m: d for m, d in x.diffs.items() if m < n - 1}
    diffs[n - 1] = p
    t = Complex(x.algebra, entries, diffs, check=False)
    comps = {m: RepMorphism.identity(e) for m, e in x.entries.items() if m < n}
    comps[n] = incl
    return t, ChainMap(t, x, comps)


def truncate_above(x: Complex, n: int, c: ConflationClass | None = None) -> tuple[Complex, ChainMap]:
    """τ^{≥n+1}x = (ker d^n -> C^n -> C^{n+1} -> ...) with ker d^n in degree n-1, and x -> τ^{≥n+1}x."""
    k, incl, p = _checked_factor(x, n, c)
    entries = {m: e for m, e in x.entries.items() if m >= n}
    entries[n - 1] = k
    diffs = {m: d for m, d in x.diffs.items() if m >= n}
    diffs[n - 1] = incl
    t = Complex(x.algebra, entries, diffs, check=False)
    comps = {m: RepMorphism.identity(e) for m, e in x.entries.items() if m >= n}
    comps[n - 1] = p
    return t, ChainMap(x, t, comps)


# -- quasi-isomorphisms --------------------------------------------------------

class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


STRICT, WEAK = "Strict", "Weak"

_AXIOM_CACHE: dict = {}


def default_probes(algebra: QuiverAlgebra) -> ProbeSet:
    """Indecomposable projectives, injectives and simples of the algebra."""
    from .quiver import is_isomorphic
    found: list[Representation] = []
    for v in algebra.vertices:
        for x in (algebra.projective(v), algebra.injective(v), algebra.simple(v)):
            if not any(y.dims == x.dims and is_isomorphic(x, y) for y in found):
                found.append(x)
    return ProbeSet(tuple(found))


def axiom_holds(c: ConflationClass, axiom: str, probes: ProbeSet) -> bool:
    key = (c, axiom, probes)
    if key not in _AXIOM_CACHE:
        _AXIOM_CACHE[key] = bool(check_axiom(c, axiom, probes))
    return _AXIOM_CACHE[key]


def is_quasi_iso(c: ConflationClass, f: ChainMap, mode: str = STRICT, probes: ProbeSet | None = None) -> Verdict:
    """Tri-state decision whether the cone of f is (a summand of) an acyclic complex up to homotopy.

    Yes: the minimal model of the cone is acyclic in the class.
    No: the cone is not exact in the ambient category (homology is a
    homotopy invariant and acyclic complexes are exact), or the class
    satisfies R0* and R3 on probes, where complexes homotopy equivalent to
    acyclic ones are themselves acyclic. In Weak mode with R0* and
    projective resolutions available, the verdict comes from whether the
    resolution of the cone is contractible.
    """
    if mode not in (STRICT, WEAK):
        raise ValueError(f"unknown mode {mode!r}")
    reduced, _, _ = minimal_reduce(cone(f))
    if is_acyclic(c, reduced):
        return Verdict.YES
    if not is_exact(reduced):
        return Verdict.NO
    if isinstance(c, AllShortExact):
        return Verdict.NO
    probes = probes or default_probes(f.src.algebra)
    r0_star = axiom_holds(c, "R0*", probes)
    if r0_star and axiom_holds(c, "R3", probes):
        return Verdict.NO
    if mode == WEAK and r0_star:
        from .derived import ResolutionError, resolve_complex
        try:
            resolution = resolve_complex(c, reduced)
        except ResolutionError:
            return Verdict.UNKNOWN
        return Verdict.YES if is_contractible(resolution.complex) else Verdict.NO
    return Verdict.UNKNOWN


# -- congenial replacement -----------------------------------------------------

def congenial_replace(alpha: ChainMap, model: tuple[Complex, ChainMap] | None = None,
                      c: ConflationClass | None = None) -> tuple[Complex, ChainMap, ChainMap]:
    """Replace the source Z of a quasi-isomorphism alpha: Z -> X by ζ = Σ^{-1} cone(γ).

    ``model`` is (E, β) with β: cone(alpha) -> E a homotopy equivalence onto
    an acyclic complex; by default E is the minimal model of the cone.
    Returns ζ with the projection ζ -> X and a homotopy equivalence ζ -> Z.
    """
    z, x = alpha.src, alpha.dst
    cone_a = cone(alpha)
    if model is None:
        e, beta, _ = minimal_reduce(cone_a)
    else:
        e, beta = model
        if beta.src != cone_a or beta.dst != e:
            raise ComplexError("model map must go from cone(alpha) to E")
        if not is_homotopy_equivalence(beta):
            raise ComplexError("model map is not a homotopy equivalence")
    if c is not None and not is_acyclic(c, e):
        raise ComplexError("the model complex is not acyclic in the class")
    gamma = beta @ cone_inclusion(alpha)
    zeta = cone(gamma).shift(-1)
    to_x = ChainMap(zeta, x, {n: direct_sum([x.entry(n), e.entry(n - 1)]).projections[0] for n in zeta.degrees()})
    # Z -> ζ: (α, -β∘in_Z) with in_Z: Z^n -> cone(α)^{n-1} = Z^n ⊕ X^{n-1}.
    comps = {}
    for n in z.degrees():
        in_z = direct_sum([z.entry(n), x.entry(n - 1)]).injections[0]
        comps[n] = matrix_morphism([z.entry(n)], [x.entry(n), e.entry(n - 1)],
                                   [[alpha.component(n)], [-(beta.component(n - 1) @ in_z)]])
    phi = ChainMap(z, zeta, comps)
    inverse = homotopy_inverse(phi)
    if inverse is None:
        raise ComplexError("alpha is not a quasi-isomorphism onto the given model")
    return zeta, to_x, inverse[0]
