"""One-sided exact structures carved out of the ambient module category.

A conflation class decides which kernel-cokernel pairs count as
conflations. Axioms quantify over all morphisms, so apart from the
exactly decidable R0/R0*/L0/L0* they are checked over a finite
:class:`ProbeSet` and the report says so.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix, block_diagonal, find_invertible_combination, mat_kernel, mat_solve
from .quiver import (
    KCPair,
    RepMorphism,
    Representation,
    cokernel,
    combine,
    direct_sum,
    hom_basis,
    is_isomorphic,
    kernel,
    pullback,
    pushout,
    sum_object,
)

AXIOMS = ("R0", "R0*", "R1", "R2", "R3", "L0", "L0*", "L1", "L2", "L3")

HOLDS = "HoldsOnProbes"
COUNTEREXAMPLE = "CounterexampleFound"
INCONCLUSIVE = "Inconclusive"


# -- kernel-cokernel pairs and their isomorphisms ---------------------------

def is_kc_pair(pair: KCPair) -> bool:
    """Short exact in the ambient category: f mono, g epi, g∘f = 0, dimensions add."""
    f, g = pair.inflation, pair.deflation
    if not (g @ f).is_zero() or not f.is_mono() or not g.is_epi():
        return False
    return all(m == a + c for a, m, c in zip(f.src.dims, f.dst.dims, g.dst.dims))


def sequence_isomorphism(p: KCPair, q: KCPair, seed: int = 0):
    """Isomorphisms (a, b, c) of the three terms making both squares commute, or None."""
    if (p.left.dims, p.middle.dims, p.right.dims) != (q.left.dims, q.middle.dims, q.right.dims):
        return None
    ha, hb, hc = hom_basis(p.left, q.left), hom_basis(p.middle, q.middle), hom_basis(p.right, q.right)
    if (not ha and not p.left.is_zero()) or (not hb and not p.middle.is_zero()) or (
            not hc and not p.right.is_zero()):
        return None
    # Unknowns: coefficients of (a, b, c). Equations: b f - f' a = 0 and c g - g' b = 0.
    n_top = len((q.inflation @ RepMorphism.zero(p.left, q.left)).flat())
    n_bottom = len(RepMorphism.zero(p.middle, q.right).flat())
    columns = []
    for a in ha:
        columns.append((-(q.inflation @ a)).flat() + (0,) * n_bottom)
    for b in hb:
        columns.append((b @ p.inflation).flat() + (-(q.deflation @ b)).flat())
    for c in hc:
        columns.append((0,) * n_top + (c @ p.deflation).flat())
    total = len(columns)
    if total == 0:
        return (RepMorphism.zero(p.left, q.left), RepMorphism.zero(p.middle, q.middle),
                RepMorphism.zero(p.right, q.right))
    solutions = mat_kernel(Matrix.from_columns(columns, n_top + n_bottom))
    if solutions.cols == 0:
        return None
    triples = []
    for k in range(solutions.cols):
        coeffs = solutions.column(k)
        a = combine(ha, coeffs[:len(ha)], p.left, q.left)
        b = combine(hb, coeffs[len(ha):len(ha) + len(hb)], p.middle, q.middle)
        c = combine(hc, coeffs[len(ha) + len(hb):], p.right, q.right)
        triples.append((a, b, c))
    space = [block_diagonal([a.as_matrix(), b.as_matrix(), c.as_matrix()]) for a, b, c in triples]
    coeffs = find_invertible_combination(space, seed)
    if coeffs is None:
        return None
    pick = lambda i, s, d: combine([t[i] for t in triples], coeffs, s, d)
    return pick(0, p.left, q.left), pick(1, p.middle, q.middle), pick(2, p.right, q.right)


def sequences_isomorphic(p: KCPair, q: KCPair) -> bool:
    return sequence_isomorphism(p, q) is not None


def is_split_pair(pair: KCPair) -> bool:
    """A kernel-cokernel pair is split iff its deflation has a section."""
    return section_of(pair.deflation) is not None


def section_of(g: RepMorphism) -> RepMorphism | None:
    """Some s with g∘s = 1, found by solving in the coefficients of Hom(target, source)."""
    if g.dst.is_zero():
        return RepMorphism.zero(g.dst, g.src)
    basis = hom_basis(g.dst, g.src)
    if not basis:
        return None
    target = RepMorphism.identity(g.dst).flat()
    cols = [(g @ s).flat() for s in basis]
    sol = mat_solve(Matrix.from_columns(cols, len(target)), Matrix.from_columns([target], len(target)))
    return None if sol is None else combine(basis, sol.column(0), g.dst, g.src)


def retraction_of(f: RepMorphism) -> RepMorphism | None:
    """Some r with r∘f = 1."""
    if f.src.is_zero():
        return RepMorphism.zero(f.dst, f.src)
    basis = hom_basis(f.dst, f.src)
    if not basis:
        return None
    target = RepMorphism.identity(f.src).flat()
    cols = [(r @ f).flat() for r in basis]
    sol = mat_solve(Matrix.from_columns(cols, len(target)), Matrix.from_columns([target], len(target)))
    return None if sol is None else combine(basis, sol.column(0), f.dst, f.src)


def split_pair(a: Representation, c: Representation) -> KCPair:
    ds = direct_sum([a, c])
    return KCPair(ds.injections[0], ds.projections[1])


# -- conflation classes -----------------------------------------------------

class ConflationClass:
    """Base class: membership is decided for kernel-cokernel pairs."""

    kind = "abstract"

    def contains(self, pair: KCPair) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class AllShortExact(ConflationClass):
    kind = "AllShortExact"

    def contains(self, pair: KCPair) -> bool:
        return True


@dataclass(frozen=True)
class SplitOnly(ConflationClass):
    kind = "SplitOnly"

    def contains(self, pair: KCPair) -> bool:
        return is_split_pair(pair)


@dataclass(frozen=True)
class ExplicitList(ConflationClass):
    """Exactly the listed pairs, up to isomorphism of sequences."""

    pairs: tuple[KCPair, ...]
    kind = "ExplicitList"

    def contains(self, pair: KCPair) -> bool:
        return any(sequences_isomorphic(pair, q) for q in self.pairs)


@dataclass(frozen=True)
class AllShortExactMinus(ConflationClass):
    """All short exact sequences except the removed isomorphism classes.

    With ``closure="literal"`` exactly the listed classes are removed.
    With ``closure="pullback"`` (the default) a sequence is also removed
    when some pullback of it along a map into its end term is a removed
    sequence. The literal class is not closed under pullbacks: the sum of
    a removed sequence with a trivial one pulls back to the removed one.
    The pullback search runs over a hom basis plus ``extra_pullbacks``
    seeded random combinations.
    """

    removed: tuple[KCPair, ...]
    closure: str = "pullback"
    extra_pullbacks: int = 3
    kind = "AllShortExactMinus"

    def __post_init__(self):
        if self.closure not in ("pullback", "literal"):
            raise ValueError(f"unknown closure {self.closure!r}")

    def contains(self, pair: KCPair) -> bool:
        for r in self.removed:
            if sequences_isomorphic(pair, r):
                return False
            if self.closure == "pullback" and self._pulls_back_to(pair, r):
                return False
        return True

    def _pulls_back_to(self, pair: KCPair, removed: KCPair) -> bool:
        if pair.left.dims != removed.left.dims or not is_isomorphic(pair.left, removed.left):
            return False
        basis = hom_basis(removed.right, pair.right)
        if not basis:
            return False
        rng = random.Random(0)
        candidates = list(basis) + [
            combine(basis, [rng.randint(-3, 3) for _ in basis], removed.right, pair.right)
            for _ in range(self.extra_pullbacks)]
        for phi in candidates:
            _, _, to_right = pullback(pair.deflation, phi)
            _, incl = kernel(to_right)
            if sequences_isomorphic(KCPair(incl, to_right), removed):
                return True
        return False


@dataclass(frozen=True)
class DegreewiseInduced(ConflationClass):
    """Pairs of chain maps that are conflations of ``inner`` in every degree."""

    inner: ConflationClass
    kind = "DegreewiseInduced"

    def contains(self, pair) -> bool:
        f, g = pair.inflation, pair.deflation
        if isinstance(f, RepMorphism):
            return self.inner.contains(pair)
        degrees = sorted(set(f.src.degrees()) | set(f.dst.degrees()) | set(g.dst.degrees()))
        for n in degrees:
            p = KCPair(f.component(n), g.component(n))
            if not (is_kc_pair(p) and self.inner.contains(p)):
                return False
        return True


# -- membership -------------------------------------------------------------

_MEMBERSHIP: dict = {}


def is_conflation(c: ConflationClass, pair: KCPair) -> bool:
    """Kernel-cokernel pair in the ambient category whose class belongs to ``c``."""
    key = (c, pair)
    if key not in _MEMBERSHIP:
        _MEMBERSHIP[key] = is_kc_pair(pair) and c.contains(pair)
    return _MEMBERSHIP[key]


def deflation_pair(g: RepMorphism) -> KCPair:
    _, incl = kernel(g)
    return KCPair(incl, g)


def inflation_pair(f: RepMorphism) -> KCPair:
    _, quot = cokernel(f)
    return KCPair(f, quot)


def is_deflation(c: ConflationClass, g: RepMorphism) -> bool:
    return g.is_epi() and is_conflation(c, deflation_pair(g))


def is_inflation(c: ConflationClass, f: RepMorphism) -> bool:
    return f.is_mono() and is_conflation(c, inflation_pair(f))


def clear_caches() -> None:
    _MEMBERSHIP.clear()
    hom_basis.cache_clear()


# -- probes -----------------------------------------------------------------

@dataclass(frozen=True)
class ProbeSet:
    """Finite search space for universally quantified axioms.

    Objects are the zero object, the given indecomposables, and direct
    sums of them whose dimension vectors stay within ``max_dim_vector``
    (at most ``max_objects`` in total, smallest first). Morphisms between
    two probe objects are the hom basis plus ``morphisms_per_pair``
    seeded combinations with coefficients from ``coefficient_grid``.
    """

    indecomposables: tuple[Representation, ...]
    max_dim_vector: tuple[int, ...] | None = None
    coefficient_grid: tuple[int, ...] = (-1, 1, 2)
    max_objects: int = 12
    morphisms_per_pair: int = 2
    seed: int = 0

    def objects(self) -> list[Representation]:
        if not self.indecomposables:
            raise ValueError("empty probe set")
        alg = self.indecomposables[0].algebra
        bound = self.max_dim_vector or tuple(2 for _ in alg.vertices)
        fits = lambda dims: all(d <= b for d, b in zip(dims, bound))
        found = [alg.zero()]
        seen = {()}
        # Multisets of indecomposables, by increasing number of summands.
        for size in range(1, sum(bound) + 1):
            added = False
            for combo in itertools.combinations_with_replacement(range(len(self.indecomposables)), size):
                parts = [self.indecomposables[i] for i in combo]
                dims = tuple(map(sum, zip(*(p.dims for p in parts))))
                if combo in seen or not fits(dims):
                    continue
                seen.add(combo)
                found.append(sum_object(parts, alg))
                added = True
            if not added:
                break
        # Zero and the indecomposables always come first; sums fill the remaining budget.
        head, sums = found[:1 + len(self.indecomposables)], found[1 + len(self.indecomposables):]
        sums.sort(key=lambda x: (x.total_dim(), x.dims))
        return (head + sums)[:max(self.max_objects, len(head))]

    def morphisms(self, x: Representation, y: Representation) -> list[RepMorphism]:
        basis = hom_basis(x, y)
        if not basis:
            return [RepMorphism.zero(x, y)]
        rng = random.Random(hash((self.seed, x.dims, y.dims)) & 0xFFFFFFFF)
        extra = [combine(basis, [rng.choice(self.coefficient_grid) for _ in basis], x, y)
                 for _ in range(self.morphisms_per_pair)]
        out, seen = [], set()
        for f in list(basis) + extra:
            if f not in seen:
                seen.add(f)
                out.append(f)
        return out

    def describe(self) -> str:
        bound = "x".join(map(str, self.max_dim_vector)) if self.max_dim_vector else "2 per vertex"
        return (f"objects<= {self.max_objects} (dims <= {bound}); hom basis + {self.morphisms_per_pair} "
                f"combinations per pair over grid {list(self.coefficient_grid)}; seed {self.seed}")


@dataclass
class AxiomReport:
    axiom: str
    verdict: str
    witness: dict | None
    probe_budget: str
    checked: int = 0

    def __bool__(self) -> bool:
        return self.verdict == HOLDS


# -- axiom checks -----------------------------------------------------------

def _holds(axiom, probes, checked):
    return AxiomReport(axiom, HOLDS, None, probes.describe(), checked)


def _fails(axiom, probes, checked, witness):
    return AxiomReport(axiom, COUNTEREXAMPLE, witness, probes.describe(), checked)


def check_axiom(c: ConflationClass, axiom: str, probes: ProbeSet) -> AxiomReport:
    """Check one axiom of a (deflation- or inflation-) exact category over the probes."""
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    objects = probes.objects()
    alg = objects[0].algebra
    zero = alg.zero()
    checked = 0

    if axiom in ("R0", "L0"):
        test = is_deflation if axiom == "R0" else is_inflation
        for x in objects:
            checked += 1
            if not test(c, RepMorphism.identity(x)):
                return _fails(axiom, probes, checked, {"identity": RepMorphism.identity(x)})
        return _holds(axiom, probes, checked)
    if axiom == "R0*":
        for x in objects:
            checked += 1
            if not is_deflation(c, RepMorphism.zero(x, zero)):
                return _fails(axiom, probes, checked, {"to_zero": RepMorphism.zero(x, zero)})
        return _holds(axiom, probes, checked)
    if axiom == "L0*":
        for x in objects:
            checked += 1
            if not is_inflation(c, RepMorphism.zero(zero, x)):
                return _fails(axiom, probes, checked, {"from_zero": RepMorphism.zero(zero, x)})
        return _holds(axiom, probes, checked)

    maps = {(x, y): probes.morphisms(x, y) for x in objects for y in objects}
    right = axiom.startswith("R")
    special = is_deflation if right else is_inflation
    status: dict = {}

    def admissible(f):
        if f not in status:
            status[f] = special(c, f)
        return status[f]

    if axiom in ("R1", "L1"):
        for x, y, z in itertools.product(objects, repeat=3):
            for f in maps[x, y]:
                if not admissible(f):
                    continue
                for g in maps[y, z]:
                    if not admissible(g):
                        continue
                    checked += 1
                    if not admissible(g @ f):
                        return _fails(axiom, probes, checked, {"first": f, "second": g, "composite": g @ f})
        return _holds(axiom, probes, checked)

    if axiom == "R2":
        for (b, cc), fs in maps.items():
            for p in fs:
                if not admissible(p):
                    continue
                for x in objects:
                    for t in maps[x, cc]:
                        checked += 1
                        pb, _, leg = pullback(p, t)
                        if not admissible(leg):
                            return _fails(axiom, probes, checked, {"deflation": p, "along": t, "pulled_back": leg})
        return _holds(axiom, probes, checked)

    if axiom == "L2":
        for (a, b), fs in maps.items():
            for i in fs:
                if not admissible(i):
                    continue
                for y in objects:
                    for t in maps[a, y]:
                        checked += 1
                        _, leg, _ = pushout(t, i)
                        if not admissible(leg):
                            return _fails(axiom, probes, checked, {"inflation": i, "along": t, "pushed_out": leg})
        return _holds(axiom, probes, checked)

    if axiom == "R3":
        # i: A -> B, p: B -> C with p∘i a deflation; then p must be one.
        for x, y, z in itertools.product(objects, repeat=3):
            for p in maps[y, z]:
                if not p.is_epi() or admissible(p):
                    continue
                for i in maps[x, y]:
                    checked += 1
                    if admissible(p @ i):
                        return _fails(axiom, probes, checked, {"i": i, "p": p, "composite": p @ i})
        return _holds(axiom, probes, checked)

    # L3: i: A -> B, j: B -> C with j∘i an inflation; then i must be one.
    for x, y, z in itertools.product(objects, repeat=3):
        for i in maps[x, y]:
            if not i.is_mono() or admissible(i):
                continue
            for j in maps[y, z]:
                checked += 1
                if admissible(j @ i):
                    return _fails(axiom, probes, checked, {"i": i, "j": j, "composite": j @ i})
    return _holds(axiom, probes, checked)


def check_all_axioms(c: ConflationClass, probes: ProbeSet, axioms: Sequence[str] = AXIOMS) -> list[AxiomReport]:
    return [check_axiom(c, a, probes) for a in axioms]


# -- retracts ---------------------------------------------------------------

@dataclass(frozen=True)
class RetractDiagram:
    """Sections inner -> outer and retractions outer -> inner on all three terms."""

    sections: tuple[RepMorphism, RepMorphism, RepMorphism]
    retractions: tuple[RepMorphism, RepMorphism, RepMorphism]


def retract_conflation(c: ConflationClass, outer: KCPair, inner: KCPair, diagram: RetractDiagram) -> bool:
    """Decide membership of ``inner`` through the retract diagram onto ``outer``.

    When the outer pair is a conflation the inner one is too (classes
    satisfying R3 are closed under retracts), so True is returned without
    testing ``inner`` directly. Otherwise membership of ``inner`` is
    decided directly.
    """
    (sa, sb, sc), (ra, rb, rc) = diagram.sections, diagram.retractions
    ends = [(sa, inner.left, outer.left), (sb, inner.middle, outer.middle), (sc, inner.right, outer.right)]
    for s, src, dst in ends:
        if s.src != src or s.dst != dst:
            raise ValueError("section has the wrong source or target")
    for s, r in zip(diagram.sections, diagram.retractions):
        if r @ s != RepMorphism.identity(s.src):
            raise ValueError("vertical composite is not the identity")
    if (sb @ inner.inflation != outer.inflation @ sa or sc @ inner.deflation != outer.deflation @ sb
            or rb @ outer.inflation != inner.inflation @ ra or rc @ outer.deflation != inner.deflation @ rb):
        raise ValueError("retract diagram does not commute")
    if is_conflation(c, outer):
        return True
    return is_conflation(c, inner)
