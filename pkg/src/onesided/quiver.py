"""Finite-dimensional representations of a bound quiver over the rationals.

This is the ambient abelian category. Every universal construction
(kernels, cokernels, pullbacks, pushouts) is computed vertex by vertex
with exact linear algebra, and hom spaces are null spaces of the
naturality equations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linalg import (
    Matrix,
    block_diagonal,
    block_matrix,
    find_invertible_combination,
    hstack,
    mat_cokernel,
    mat_kernel,
    mat_solve,
    to_fraction,
    vstack,
)

Path = tuple[str, ...]  # arrow ids in the order they are traversed


class RepresentationError(ValueError):
    """Raised when data does not describe a valid representation or morphism."""


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Relation:
    """A rational combination of parallel paths that must act as zero."""

    terms: tuple[tuple[Fraction, Path], ...]

    @classmethod
    def of(cls, terms: Iterable[tuple[object, Sequence[str]]]) -> "Relation":
        return cls(tuple((to_fraction(c), tuple(p)) for c, p in terms))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1


class QuiverAlgebra:
    """Path algebra of a finite quiver modulo relations.

    Finite dimensionality is validated on construction: either the quiver
    is acyclic, or every relation is a single path and those zero
    relations leave only finitely many nonzero paths.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow], relations: Sequence[Relation] = ()):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise RepresentationError("duplicate vertex ids")
        self.arrows = tuple(arrows)
        self.relations = tuple(relations)
        self._arrow = {}
        for a in self.arrows:
            if a.id in self._arrow:
                raise RepresentationError(f"duplicate arrow id {a.id!r}")
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise RepresentationError(f"arrow {a.id!r} has an undeclared endpoint")
            self._arrow[a.id] = a
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._paths: dict[tuple[str, str], list[Path]] = {}
        self._normal: dict[tuple[str, str], tuple] = {}
        self._check_relations()
        self.acyclic = self._is_acyclic()
        if not self.acyclic:
            if not all(r.is_monomial() for r in self.relations):
                raise RepresentationError("quivers with cycles are supported only with zero (monomial) relations")
            self._forbidden = {r.terms[0][1] for r in self.relations}
            self._check_cycles_truncated()

    # -- structure ------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, QuiverAlgebra) and (
            self.vertices, self.arrows, self.relations) == (other.vertices, other.arrows, other.relations)

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows, self.relations))

    def __repr__(self) -> str:
        arrows = ", ".join(f"{a.id}:{a.src}->{a.tgt}" for a in self.arrows)
        return f"QuiverAlgebra(vertices={list(self.vertices)}, arrows=[{arrows}])"

    def arrow(self, arrow_id: str) -> Arrow:
        return self._arrow[arrow_id]

    def vertex_index(self, v: str) -> int:
        return self._index[v]

    def path_source(self, path: Path, default: str) -> str:
        return self._arrow[path[0]].src if path else default

    def _check_path(self, path: Path) -> tuple[str, str]:
        for a in path:
            if a not in self._arrow:
                raise RepresentationError(f"relation uses unknown arrow {a!r}")
        for a, b in zip(path, path[1:]):
            if self._arrow[a].tgt != self._arrow[b].src:
                raise RepresentationError(f"path {path} is not composable")
        return self._arrow[path[0]].src, self._arrow[path[-1]].tgt

    def _check_relations(self) -> None:
        for r in self.relations:
            if not r.terms or any(not p for _, p in r.terms):
                raise RepresentationError("relations must combine paths of positive length")
            ends = {self._check_path(p) for _, p in r.terms}
            if len(ends) != 1:
                raise RepresentationError(f"relation {r} combines non-parallel paths")

    def relation_ends(self, r: Relation) -> tuple[str, str]:
        return self._check_path(r.terms[0][1])

    def _is_acyclic(self) -> bool:
        state = dict.fromkeys(self.vertices, 0)

        def visit(v: str) -> bool:
            state[v] = 1
            for a in self.arrows:
                if a.src == v:
                    if state[a.tgt] == 1 or (state[a.tgt] == 0 and not visit(a.tgt)):
                        return False
            state[v] = 2
            return True

        return all(state[v] or visit(v) for v in self.vertices)

    def _allowed(self, path: Path) -> bool:
        if self.acyclic:
            return True
        return not any(
            path[i:i + len(f)] == f for f in self._forbidden for i in range(len(path) - len(f) + 1))

    def _check_cycles_truncated(self) -> None:
        longest = max((len(p) for p in self._forbidden), default=0)
        bound = (len(self.vertices) + 1) * (longest + 1)
        frontier: list[Path] = [(a.id,) for a in self.arrows if self._allowed((a.id,))]
        length = 1
        while frontier:
            if length > bound:
                raise RepresentationError("relations do not truncate all cycles: algebra is infinite-dimensional")
            frontier = [p + (a.id,) for p in frontier for a in self.arrows
                        if a.src == self._arrow[p[-1]].tgt and self._allowed(p + (a.id,))]
            length += 1

    # -- paths and normal forms ------------------------------------------
    def paths(self, v: str, w: str) -> list[Path]:
        """All nonzero-candidate paths from v to w (trivial path included when v == w)."""
        key = (v, w)
        if key not in self._paths:
            found = []

            def extend(path: Path, end: str) -> None:
                if end == w:
                    found.append(path)
                for a in self.arrows:
                    if a.src == end and self._allowed(path + (a.id,)):
                        extend(path + (a.id,), a.tgt)

            extend((), v)
            found.sort(key=lambda p: (len(p), p))
            self._paths[key] = found
        return self._paths[key]

    def _normal_data(self, v: str, w: str):
        key = (v, w)
        if key not in self._normal:
            paths = self.paths(v, w)
            # Longer paths come first so that elimination prefers to express them
            # through shorter ones; the surviving normal paths are then short.
            order = sorted(paths, key=lambda p: (-len(p), p))
            index = {p: i for i, p in enumerate(order)}
            ideal = []
            if self.acyclic:
                for r in self.relations:
                    s, t = self.relation_ends(r)
                    for pre in self.paths(v, s):
                        for post in self.paths(t, w):
                            vec = [Fraction(0)] * len(order)
                            for c, p in r.terms:
                                vec[index[pre + p + post]] += c
                            if any(vec):
                                ideal.append(vec)
            rows: list[tuple[int, tuple[Fraction, ...]]] = []
            if ideal:
                reduced, pivots = Matrix(len(ideal), len(order), ideal).rref()
                rows = [(p, reduced.row(i)) for i, p in enumerate(pivots)]
            pivot_set = {p for p, _ in rows}
            normal = sorted((order[i] for i in range(len(order)) if i not in pivot_set), key=lambda p: (len(p), p))
            normal_pos = [index[p] for p in normal]
            self._normal[key] = (index, rows, normal, normal_pos)
        return self._normal[key]

    def normal_paths(self, v: str, w: str) -> list[Path]:
        """Paths from v to w forming a basis of e_w A e_v."""
        return self._normal_data(v, w)[2]

    def path_coordinates(self, path: Path, v: str, w: str) -> list[Fraction]:
        """Coordinates of a path from v to w in the normal-path basis."""
        index, rows, normal, normal_pos = self._normal_data(v, w)
        vec = [Fraction(0)] * len(index)
        if path not in index:
            return [Fraction(0)] * len(normal)
        vec[index[path]] = Fraction(1)
        for p, row in rows:
            if vec[p]:
                c = vec[p]
                vec = [a - c * b for a, b in zip(vec, row)]
        return [vec[i] for i in normal_pos]

    # -- distinguished representations -----------------------------------
    def zero(self) -> "Representation":
        return Representation(self, {})

    def simple(self, v: str) -> "Representation":
        return Representation(self, {v: 1})

    @lru_cache(maxsize=None)
    def projective(self, v: str) -> "Representation":
        """Indecomposable projective at v: spanned by the paths starting at v."""
        dims = {w: len(self.normal_paths(v, w)) for w in self.vertices}
        maps = {}
        for a in self.arrows:
            cols = [self.path_coordinates(p + (a.id,), v, a.tgt) for p in self.normal_paths(v, a.src)]
            maps[a.id] = Matrix.from_columns(cols, dims[a.tgt])
        return Representation(self, dims, maps)

    @lru_cache(maxsize=None)
    def injective(self, v: str) -> "Representation":
        """Indecomposable injective at v: dual of the paths ending at v."""
        dims = {w: len(self.normal_paths(w, v)) for w in self.vertices}
        maps = {}
        for a in self.arrows:
            cols = [self.path_coordinates((a.id,) + p, a.src, v) for p in self.normal_paths(a.tgt, v)]
            maps[a.id] = Matrix.from_columns(cols, dims[a.src]).T
        return Representation(self, dims, maps)


class Representation:
    """A vector space per vertex and a matrix per arrow (target dim x source dim)."""

    __slots__ = ("algebra", "dims", "maps", "_hash")

    def __init__(self, algebra: QuiverAlgebra, dims: Mapping[str, int], maps: Mapping[str, object] | None = None,
                 check: bool = True):
        self.algebra = algebra
        unknown = set(dims) - set(algebra.vertices)
        if unknown:
            raise RepresentationError(f"dimensions given for unknown vertices {sorted(unknown)}")
        self.dims = tuple(int(dims.get(v, 0)) for v in algebra.vertices)
        if any(d < 0 for d in self.dims):
            raise RepresentationError("negative dimension")
        maps = dict(maps or {})
        built = {}
        for a in algebra.arrows:
            shape = (self.dim(a.tgt), self.dim(a.src))
            m = maps.pop(a.id, None)
            if m is None:
                m = Matrix.zeros(*shape)
            elif not isinstance(m, Matrix):
                m = Matrix.of(m, cols=shape[1])
            if m.shape != shape:
                raise RepresentationError(f"arrow {a.id!r}: matrix shape {m.shape}, expected {shape}")
            built[a.id] = m
        if maps:
            raise RepresentationError(f"maps given for unknown arrows {sorted(maps)}")
        self.maps = built
        self._hash = None
        if check:
            for r in algebra.relations:
                s, t = algebra.relation_ends(r)
                total = Matrix.zeros(self.dim(t), self.dim(s))
                for c, p in r.terms:
                    total = total + c * self.path_matrix(p)
                if not total.is_zero():
                    raise RepresentationError(f"relation {r.terms} does not vanish")

    def dim(self, v: str) -> int:
        return self.dims[self.algebra.vertex_index(v)]

    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def path_matrix(self, path: Path, start: str | None = None) -> Matrix:
        if not path:
            return Matrix.identity(self.dim(start))
        m = self.maps[path[0]]
        for a in path[1:]:
            m = self.maps[a] @ m
        return m

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and self.dims == other.dims
                and self.maps == other.maps and self.algebra == other.algebra)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dims, tuple(self.maps[a.id] for a in self.algebra.arrows)))
        return self._hash

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


class RepMorphism:
    """A family of matrices, one per vertex, commuting with all arrow maps."""

    __slots__ = ("src", "dst", "blocks", "_hash")

    def __init__(self, src: Representation, dst: Representation, blocks: Mapping[str, object] | None = None,
                 check: bool = True):
        if src.algebra != dst.algebra:
            raise RepresentationError("morphism between representations of different algebras")
        self.src, self.dst = src, dst
        given = dict(blocks or {})
        built = {}
        for v in src.algebra.vertices:
            shape = (dst.dim(v), src.dim(v))
            m = given.pop(v, None)
            if m is None:
                m = Matrix.zeros(*shape)
            elif not isinstance(m, Matrix):
                m = Matrix.of(m, cols=shape[1])
            if m.shape != shape:
                raise RepresentationError(f"vertex {v!r}: block shape {m.shape}, expected {shape}")
            built[v] = m
        if given:
            raise RepresentationError(f"blocks given for unknown vertices {sorted(given)}")
        self.blocks = built
        self._hash = None
        if check:
            for a in src.algebra.arrows:
                if built[a.tgt] @ src.maps[a.id] != dst.maps[a.id] @ built[a.src]:
                    raise RepresentationError(f"naturality square for arrow {a.id!r} does not commute")

    @classmethod
    def zero(cls, src: Representation, dst: Representation) -> "RepMorphism":
        return cls(src, dst, check=False)

    @classmethod
    def identity(cls, x: Representation) -> "RepMorphism":
        return cls(x, x, {v: Matrix.identity(x.dim(v)) for v in x.algebra.vertices}, check=False)

    def block(self, v: str) -> Matrix:
        return self.blocks[v]

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """Composition: (self @ other) applies other first."""
        if other.dst != self.src:
            raise RepresentationError("composition of non-composable morphisms")
        return RepMorphism(other.src, self.dst, {v: self.blocks[v] @ other.blocks[v] for v in self.blocks}, check=False)

    def _same_ends(self, other: "RepMorphism") -> None:
        if self.src != other.src or self.dst != other.dst:
            raise RepresentationError("morphisms with different source or target")

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        self._same_ends(other)
        return RepMorphism(self.src, self.dst, {v: self.blocks[v] + other.blocks[v] for v in self.blocks}, check=False)

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        self._same_ends(other)
        return RepMorphism(self.src, self.dst, {v: self.blocks[v] - other.blocks[v] for v in self.blocks}, check=False)

    def __neg__(self) -> "RepMorphism":
        return RepMorphism(self.src, self.dst, {v: -m for v, m in self.blocks.items()}, check=False)

    def __rmul__(self, scalar) -> "RepMorphism":
        return RepMorphism(self.src, self.dst, {v: scalar * m for v, m in self.blocks.items()}, check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RepMorphism) and self.src == other.src and self.dst == other.dst
                and self.blocks == other.blocks)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.src, self.dst, tuple(self.blocks[v] for v in self.src.algebra.vertices)))
        return self._hash

    def __repr__(self) -> str:
        return f"RepMorphism({self.src.dims} -> {self.dst.dims})"

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def is_mono(self) -> bool:
        return all(m.rank() == m.cols for m in self.blocks.values())

    def is_epi(self) -> bool:
        return all(m.rank() == m.rows for m in self.blocks.values())

    def is_iso(self) -> bool:
        return self.src.dims == self.dst.dims and self.is_mono()

    def inverse(self) -> "RepMorphism":
        if not self.is_iso():
            raise RepresentationError("morphism is not invertible")
        return RepMorphism(self.dst, self.src, {v: m.inverse() for v, m in self.blocks.items()}, check=False)

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for v in self.src.algebra.vertices for x in self.blocks[v].flat())

    def as_matrix(self) -> Matrix:
        """Block-diagonal matrix acting on the total space."""
        return block_diagonal([self.blocks[v] for v in self.src.algebra.vertices])

    def trace(self) -> Fraction:
        return sum((m.trace() for m in self.blocks.values()), Fraction(0))

    def rank(self) -> int:
        return sum(m.rank() for m in self.blocks.values())


@dataclass(frozen=True)
class KCPair:
    """A composable pair (inflation candidate, deflation candidate)."""

    inflation: RepMorphism
    deflation: RepMorphism

    def __post_init__(self):
        if self.inflation.dst != self.deflation.src:
            raise RepresentationError("pair is not composable: middle objects differ")

    @property
    def left(self) -> Representation:
        return self.inflation.src

    @property
    def middle(self) -> Representation:
        return self.inflation.dst

    @property
    def right(self) -> Representation:
        return self.deflation.dst


@dataclass(frozen=True)
class DirectSum:
    obj: Representation
    injections: tuple[RepMorphism, ...]
    projections: tuple[RepMorphism, ...]


def direct_sum(parts: Sequence[Representation]) -> DirectSum:
    """Biproduct with its structure maps; summands are stacked in order."""
    if not parts:
        raise RepresentationError("direct sum of an empty family needs an algebra; use algebra.zero()")
    alg = parts[0].algebra
    dims = {v: sum(p.dim(v) for p in parts) for v in alg.vertices}
    maps = {a.id: block_diagonal([p.maps[a.id] for p in parts]) for a in alg.arrows}
    total = Representation(alg, dims, maps, check=False)
    injections, projections = [], []
    offsets = dict.fromkeys(alg.vertices, 0)
    for p in parts:
        inj, proj = {}, {}
        for v in alg.vertices:
            n, o, d = dims[v], offsets[v], p.dim(v)
            inj[v] = Matrix(n, d, ([1 if i == o + j else 0 for j in range(d)] for i in range(n)))
            proj[v] = inj[v].T
            offsets[v] += d
        injections.append(RepMorphism(p, total, inj, check=False))
        projections.append(RepMorphism(total, p, proj, check=False))
    return DirectSum(total, tuple(injections), tuple(projections))


def sum_object(parts: Sequence[Representation], algebra: QuiverAlgebra | None = None) -> Representation:
    if not parts:
        return algebra.zero()
    return direct_sum(parts).obj if len(parts) > 1 else parts[0]


def matrix_morphism(src: Sequence[Representation], dst: Sequence[Representation],
                    grid: Sequence[Sequence[RepMorphism | None]]) -> RepMorphism:
    """Morphism between direct sums given by a grid: grid[i][j] maps src[j] to dst[i]."""
    alg = (src or dst)[0].algebra
    s_obj = sum_object(list(src), alg)
    d_obj = sum_object(list(dst), alg)
    blocks = {}
    for v in alg.vertices:
        rows = []
        for i, d in enumerate(dst):
            row = []
            for j, s in enumerate(src):
                g = grid[i][j]
                row.append(g.blocks[v] if g is not None else Matrix.zeros(d.dim(v), s.dim(v)))
            rows.append(row)
        if not dst:
            blocks[v] = Matrix.zeros(0, s_obj.dim(v))
        elif not src:
            blocks[v] = Matrix.zeros(d_obj.dim(v), 0)
        else:
            blocks[v] = block_matrix(rows)
    return RepMorphism(s_obj, d_obj, blocks, check=False)


def direct_sum_morphism(maps: Sequence[RepMorphism]) -> RepMorphism:
    """Block-diagonal sum f1 ⊕ f2 ⊕ ..."""
    n = len(maps)
    grid = [[maps[i] if i == j else None for j in range(n)] for i in range(n)]
    return matrix_morphism([f.src for f in maps], [f.dst for f in maps], grid)


# -- hom spaces -------------------------------------------------------------

@lru_cache(maxsize=4096)
def hom_basis(x: Representation, y: Representation) -> tuple[RepMorphism, ...]:
    """Basis of Hom(x, y): the null space of the naturality equations."""
    alg = x.algebra
    offsets, n = {}, 0
    for v in alg.vertices:
        offsets[v] = n
        n += y.dim(v) * x.dim(v)
    if n == 0:
        return ()
    rows = []
    for a in alg.arrows:
        s, t = a.src, a.tgt
        xa, ya = x.maps[a.id], y.maps[a.id]
        xs, xt, ys, yt = x.dim(s), x.dim(t), y.dim(s), y.dim(t)
        # (B_t X_a - Y_a B_s)[i, j] = 0
        for i in range(yt):
            for j in range(xs):
                row = [Fraction(0)] * n
                for k in range(xt):
                    if xa[k, j]:
                        row[offsets[t] + i * xt + k] += xa[k, j]
                for k in range(ys):
                    if ya[i, k]:
                        row[offsets[s] + k * xs + j] -= ya[i, k]
                rows.append(row)
    kernel = mat_kernel(Matrix(len(rows), n, rows)) if rows else Matrix.identity(n)
    basis = []
    for c in range(kernel.cols):
        col = kernel.column(c)
        blocks = {}
        for v in alg.vertices:
            r, cc = y.dim(v), x.dim(v)
            o = offsets[v]
            blocks[v] = Matrix(r, cc, ([col[o + i * cc + j] for j in range(cc)] for i in range(r)))
        basis.append(RepMorphism(x, y, blocks, check=False))
    return tuple(basis)


def hom_dim(x: Representation, y: Representation) -> int:
    return len(hom_basis(x, y))


def combine(basis: Sequence[RepMorphism], coeffs: Sequence, src: Representation, dst: Representation) -> RepMorphism:
    total = RepMorphism.zero(src, dst)
    for c, b in zip(coeffs, basis):
        if c:
            total = total + to_fraction(c) * b
    return total


# -- universal constructions ---------------------------------------------------

def kernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    """Kernel object and its inclusion, with null-space bases per vertex."""
    alg = f.src.algebra
    incl = {v: mat_kernel(f.blocks[v]) for v in alg.vertices}
    maps = {}
    for a in alg.arrows:
        rhs = f.src.maps[a.id] @ incl[a.src]
        sol = mat_solve(incl[a.tgt], rhs)
        if sol is None:
            raise AssertionError("kernel is not a subrepresentation")
        maps[a.id] = sol
    k = Representation(alg, {v: incl[v].cols for v in alg.vertices}, maps, check=False)
    return k, RepMorphism(k, f.src, incl, check=False)


def cokernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    """Cokernel object and its quotient map."""
    alg = f.src.algebra
    quot = {v: mat_cokernel(f.blocks[v]) for v in alg.vertices}
    maps = {}
    for a in alg.arrows:
        rhs = quot[a.tgt] @ f.dst.maps[a.id]  # C_a q_s = q_t Y_a
        sol = mat_solve(quot[a.src].T, rhs.T)
        if sol is None:
            raise AssertionError("cokernel map is not well defined")
        maps[a.id] = sol.T
    c = Representation(alg, {v: quot[v].rows for v in alg.vertices}, maps, check=False)
    return c, RepMorphism(f.dst, c, quot, check=False)


def image(f: RepMorphism) -> tuple[Representation, RepMorphism, RepMorphism]:
    """Factor f as (mono) @ (epi) through its image."""
    _, q = cokernel(f)
    im, incl = kernel(q)
    epi = factor_through_mono(incl, f)
    return im, epi, incl


def factor_through_mono(m: RepMorphism, t: RepMorphism) -> RepMorphism | None:
    """The unique u with m @ u == t, if it exists (m must be mono)."""
    blocks = {}
    for v in m.src.algebra.vertices:
        sol = mat_solve(m.blocks[v], t.blocks[v])
        if sol is None:
            return None
        blocks[v] = sol
    return RepMorphism(t.src, m.src, blocks, check=False)


def factor_through_epi(e: RepMorphism, t: RepMorphism) -> RepMorphism | None:
    """The unique u with u @ e == t, if it exists (e must be epi)."""
    blocks = {}
    for v in e.src.algebra.vertices:
        sol = mat_solve(e.blocks[v].T, t.blocks[v].T)
        if sol is None:
            return None
        blocks[v] = sol.T
    return RepMorphism(e.dst, t.dst, blocks, check=False)


def pullback(f: RepMorphism, g: RepMorphism) -> tuple[Representation, RepMorphism, RepMorphism]:
    """Pullback of f: X -> W and g: Y -> W, returned as (P, P -> X, P -> Y)."""
    if f.dst != g.dst:
        raise RepresentationError("pullback needs a common codomain")
    diff = matrix_morphism([f.src, g.src], [f.dst], [[f, -g]])
    p, incl = kernel(diff)
    ds = direct_sum([f.src, g.src])
    return p, ds.projections[0] @ incl, ds.projections[1] @ incl


def pushout(f: RepMorphism, g: RepMorphism) -> tuple[Representation, RepMorphism, RepMorphism]:
    """Pushout of f: W -> X and g: W -> Y, returned as (Q, X -> Q, Y -> Q)."""
    if f.src != g.src:
        raise RepresentationError("pushout needs a common domain")
    diff = matrix_morphism([f.src], [f.dst, g.dst], [[f], [-g]])
    q, quot = cokernel(diff)
    ds = direct_sum([f.dst, g.dst])
    return q, quot @ ds.injections[0], quot @ ds.injections[1]


def find_isomorphism(x: Representation, y: Representation, seed: int = 0) -> RepMorphism | None:
    if x.algebra != y.algebra or x.dims != y.dims:
        return None
    if x.is_zero():
        return RepMorphism.zero(x, y)
    basis = hom_basis(x, y)
    if not basis:
        return None
    coeffs = find_invertible_combination([b.as_matrix() for b in basis], seed)
    return None if coeffs is None else combine(basis, coeffs, x, y)


def is_isomorphic(x: Representation, y: Representation) -> bool:
    return find_isomorphism(x, y) is not None


def in_additive_hull(x: Representation, parts: Sequence[Representation]) -> bool:
    """Is x isomorphic to a direct sum of copies of ``parts``? Searches over dimension vectors first."""
    parts = [p for p in parts if not p.is_zero()]

    def search(start: int, remaining: tuple[int, ...], chosen: list[Representation]) -> bool:
        if not any(remaining):
            return is_isomorphic(x, sum_object(chosen, x.algebra))
        for i in range(start, len(parts)):
            d = parts[i].dims
            if all(a <= b for a, b in zip(d, remaining)):
                if search(i, tuple(b - a for a, b in zip(d, remaining)), chosen + [parts[i]]):
                    return True
        return False

    return search(0, x.dims, [])


def split_idempotent(e: RepMorphism) -> tuple[Representation, RepMorphism, RepMorphism]:
    """Image of an idempotent with retraction r and section s: s @ r == e, r @ s == 1."""
    if e.src != e.dst or e @ e != e:
        raise RepresentationError("split_idempotent needs an idempotent endomorphism")
    im, r, s = image(e)
    return im, r, s


def composition_factors(x: Representation) -> Counter:
    """Multiset of vertex simples (multiplicity = dimension at the vertex)."""
    return Counter({v: d for v, d in zip(x.algebra.vertices, x.dims) if d})


def radical_subspace(x: Representation, v: str) -> Matrix:
    """Columns spanning the sum of images of arrows into v."""
    images = [x.maps[a.id] for a in x.algebra.arrows if a.tgt == v]
    if not images:
        return Matrix.zeros(x.dim(v), 0)
    return hstack(images)


def top_generators(x: Representation, v: str) -> list[tuple[Fraction, ...]]:
    """Vectors of x_v completing a basis of the radical to a basis of x_v."""
    rad = radical_subspace(x, v)
    current = rad
    rank = current.rank()
    chosen = []
    for i in range(x.dim(v)):
        e = Matrix.unit(x.dim(v), 1, i, 0)
        trial = hstack([current, e])
        r = trial.rank()
        if r > rank:
            chosen.append(e.column(0))
            current, rank = trial, r
    return chosen


def projective_cover(x: Representation) -> tuple[Representation, RepMorphism]:
    """Ambient projective cover P -> x, one indecomposable projective per top generator."""
    alg = x.algebra
    parts, maps = [], []
    for v in alg.vertices:
        proj = alg.projective(v)
        for m in top_generators(x, v):
            mcol = Matrix.from_columns([m], x.dim(v))
            blocks = {}
            for w in alg.vertices:
                cols = [(x.path_matrix(p, v) @ mcol).column(0) for p in alg.normal_paths(v, w)]
                blocks[w] = Matrix.from_columns(cols, x.dim(w))
            parts.append(proj)
            maps.append(RepMorphism(proj, x, blocks, check=False))
    if not parts:
        return alg.zero(), RepMorphism.zero(alg.zero(), x)
    cover = matrix_morphism(parts, [x], [maps])
    return cover.src, cover
