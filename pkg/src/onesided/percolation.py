"""Percolating subcategories and the localization E/A as a roof category.

Localization arithmetic is supported for Serre subcategories cut out by
a set of vertices G (objects supported on G). For such A, a morphism f
becomes zero in E/A iff it vanishes on the A-reject of its source (the
smallest subobject with quotient in A), and Hom_{E/A}(x, y) is
Hom(reject x, y / trace y) where the trace is the largest subobject in A.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .complexes import WEAK, ChainMap, Complex, Verdict, cone, is_quasi_iso, stalk, stalk_map, truncate_above
from .conflations import (
    COUNTEREXAMPLE,
    HOLDS,
    INCONCLUSIVE,
    AxiomReport,
    ConflationClass,
    KCPair,
    ProbeSet,
    deflation_pair,
    is_conflation,
    is_deflation,
    is_inflation,
    is_kc_pair,
)
from .linalg import Matrix, hstack, mat_cokernel, mat_kernel, mat_solve
from .quiver import (
    RepMorphism,
    Representation,
    cokernel,
    combine,
    factor_through_epi,
    factor_through_mono,
    hom_basis,
    image,
    in_additive_hull,
    kernel,
    matrix_morphism,
    pullback,
    pushout,
)


class NotSerreError(ValueError):
    """Localization arithmetic needs a Serre subcategory given by vertices."""


class WeakIsoError(ValueError):
    """A leg that must be a weak isomorphism is not one."""


@dataclass(frozen=True)
class SerreGenerators:
    vertices: tuple[str, ...]


@dataclass(frozen=True)
class ExplicitObjects:
    objects: tuple[Representation, ...]


@dataclass(frozen=True)
class PercolatingSpec:
    conflations: ConflationClass
    membership: SerreGenerators | ExplicitObjects

    @property
    def is_serre(self) -> bool:
        return isinstance(self.membership, SerreGenerators)

    def contains(self, x: Representation) -> bool:
        if x.is_zero():
            return True
        if self.is_serre:
            support = set(self.membership.vertices)
            return all(d == 0 or v in support for v, d in zip(x.algebra.vertices, x.dims))
        return in_additive_hull(x, self.membership.objects)

    def _require_serre(self) -> frozenset:
        if not self.is_serre:
            raise NotSerreError("this operation needs a Serre subcategory given by vertex generators")
        return frozenset(self.membership.vertices)


# -- reject and trace ------------------------------------------------------

def _subrepresentation(x: Representation, spaces: dict[str, Matrix]) -> tuple[Representation, RepMorphism]:
    """Subrepresentation spanned by column bases per vertex (assumed closed under arrows)."""
    alg = x.algebra
    maps = {}
    for a in alg.arrows:
        image_cols = x.maps[a.id] @ spaces[a.src]
        sol = mat_solve(spaces[a.tgt], image_cols)
        if sol is None:
            raise AssertionError("subspaces are not closed under the arrows")
        maps[a.id] = sol
    sub = Representation(alg, {v: spaces[v].cols for v in alg.vertices}, maps, check=False)
    return sub, RepMorphism(sub, x, spaces, check=False)


def _column_basis(m: Matrix) -> Matrix:
    if m.cols == 0:
        return m
    reduced, pivots = m.T.rref()
    return Matrix.from_columns([reduced.row(i) for i in range(len(pivots))], m.rows)


def a_reject(spec: PercolatingSpec, x: Representation) -> tuple[Representation, RepMorphism]:
    """Smallest subobject x0 of x with x/x0 in A: generated by the vertices outside A."""
    support = spec._require_serre()
    alg = x.algebra
    spaces = {v: (Matrix.identity(x.dim(v)) if v not in support else Matrix.zeros(x.dim(v), 0))
              for v in alg.vertices}
    changed = True
    while changed:
        changed = False
        for a in alg.arrows:
            pushed = x.maps[a.id] @ spaces[a.src]
            merged = _column_basis(hstack([spaces[a.tgt], pushed]))
            if merged.cols > spaces[a.tgt].cols:
                spaces[a.tgt] = merged
                changed = True
    return _subrepresentation(x, spaces)


def a_trace(spec: PercolatingSpec, y: Representation) -> tuple[Representation, RepMorphism]:
    """Largest subobject of y lying in A: vectors at A-vertices whose whole orbit stays in A."""
    support = spec._require_serre()
    alg = y.algebra
    spaces = {v: (Matrix.identity(y.dim(v)) if v in support else Matrix.zeros(y.dim(v), 0))
              for v in alg.vertices}
    changed = True
    while changed:
        changed = False
        for a in alg.arrows:
            src = spaces[a.src]
            if src.cols == 0:
                continue
            outside = mat_cokernel(spaces[a.tgt]) if spaces[a.tgt].cols else Matrix.identity(y.dim(a.tgt))
            keep = mat_kernel(outside @ y.maps[a.id] @ src)
            if keep.cols < src.cols:
                spaces[a.src] = src @ keep
                changed = True
    return _subrepresentation(y, spaces)


def q_is_zero(spec: PercolatingSpec, f: RepMorphism) -> bool:
    """f becomes zero in E/A iff it vanishes on the reject of its source."""
    _, incl = a_reject(spec, f.src)
    return (f @ incl).is_zero()


def quotient_hom_basis(spec: PercolatingSpec, x: Representation, y: Representation) -> tuple[RepMorphism, ...]:
    """Basis of Hom(reject x, y / trace y), which models Hom_{E/A}(x, y)."""
    r, _ = a_reject(spec, x)
    _, t_incl = a_trace(spec, y)
    q_obj, _ = cokernel(t_incl)
    return hom_basis(r, q_obj)


def quotient_hom_dim(spec: PercolatingSpec, x: Representation, y: Representation) -> int:
    return len(quotient_hom_basis(spec, x, y))


# -- weak isomorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class WeakIso:
    """A composite of A^{-1}-deflations and A^{-1}-inflations; isomorphic links are omitted."""

    morphism: RepMorphism
    chain: tuple[tuple[str, RepMorphism], ...]

    def __len__(self) -> int:
        return len(self.chain)


def is_weak_iso(spec: PercolatingSpec, f: RepMorphism, length_budget: int = 2) -> WeakIso | None:
    """Factor f through its image as X ↠ im ↣ Y and verify both links."""
    c = spec.conflations
    k, _ = kernel(f)
    q, _ = cokernel(f)
    if not spec.contains(k) or not spec.contains(q):
        return None
    im, epi, mono = image(f)
    chain = []
    if not epi.is_iso():
        if not is_deflation(c, epi):
            return None
        chain.append(("deflation", epi))
    if not mono.is_iso():
        if not is_inflation(c, mono):
            return None
        chain.append(("inflation", mono))
    if len(chain) > length_budget:
        return None
    return WeakIso(f, tuple(chain))


def _require_weak_iso(spec: PercolatingSpec, s: RepMorphism) -> WeakIso:
    w = is_weak_iso(spec, s)
    if w is None:
        raise WeakIsoError(f"{s!r} is not a weak isomorphism")
    return w


# -- roofs -------------------------------------------------------------------------

@dataclass(frozen=True)
class Roof:
    """The morphism f∘s^{-1} from s.dst to f.dst; s and f share their source (the apex)."""

    s: RepMorphism
    f: RepMorphism

    def __post_init__(self):
        if self.s.src != self.f.src:
            raise ValueError("roof legs must share the apex")

    @property
    def apex(self) -> Representation:
        return self.s.src

    @property
    def source(self) -> Representation:
        return self.s.dst

    @property
    def target(self) -> Representation:
        return self.f.dst

    @classmethod
    def of_morphism(cls, f: RepMorphism) -> "Roof":
        return cls(RepMorphism.identity(f.src), f)


def make_roof(spec: PercolatingSpec, s: RepMorphism, f: RepMorphism) -> Roof:
    _require_weak_iso(spec, s)
    return Roof(s, f)


def roof_compose(spec: PercolatingSpec, r1: Roof, r2: Roof) -> Roof:
    """r2 ∘ r1 via the pullback of r2's weak isomorphism along r1's morphism."""
    if r1.target != r2.source:
        raise ValueError("roofs are not composable")
    _, to_a, to_b = pullback(r1.f, r2.s)
    _require_weak_iso(spec, to_a)
    return Roof(r1.s @ to_a, r2.f @ to_b)


def roof_equal(spec: PercolatingSpec, r1: Roof, r2: Roof) -> bool:
    """Pull both apexes back over the common source and compare the target maps modulo A."""
    if r1.source != r2.source or r1.target != r2.target:
        return False
    _, p1, p2 = pullback(r1.s, r2.s)
    return q_is_zero(spec, r1.f @ p1 - r2.f @ p2)


def roof_from_quotient_map(spec: PercolatingSpec, x: Representation, y: Representation,
                           g: RepMorphism) -> Roof:
    """Realize g: reject x -> y/trace y as a roof x <- P -> y.

    P is the pullback of y ↠ y/trace y along g, so P ↠ reject x has kernel
    trace y in A and the leg P -> x is a weak isomorphism.
    """
    _, r_incl = a_reject(spec, x)
    _, t_incl = a_trace(spec, y)
    _, quot = cokernel(t_incl)
    _, to_r, to_y = pullback(g, quot)
    return make_roof(spec, r_incl @ to_r, to_y)


def quotient_hom_roofs(spec: PercolatingSpec, x: Representation, y: Representation) -> list[Roof]:
    return [roof_from_quotient_map(spec, x, y, g) for g in quotient_hom_basis(spec, x, y)]


# -- percolation axioms --------------------------------------------------------------

def _probe_conflations(c: ConflationClass, probes: ProbeSet):
    objects = probes.objects()
    for x, y in itertools.product(objects, repeat=2):
        for g in probes.morphisms(x, y):
            if g.is_epi() and is_deflation(c, g):
                yield deflation_pair(g)


def check_percolating(spec: PercolatingSpec, probes: ProbeSet) -> list[AxiomReport]:
    c = spec.conflations
    objects = probes.objects()
    members = [a for a in objects if spec.contains(a)]
    budget = probes.describe()
    reports = []

    # P1: in a conflation, the middle is in A iff both ends are.
    checked, witness = 0, None
    for pair in _probe_conflations(c, probes):
        checked += 1
        middle = spec.contains(pair.middle)
        ends = spec.contains(pair.left) and spec.contains(pair.right)
        if middle != ends:
            witness = {"inflation": pair.inflation, "deflation": pair.deflation}
            break
    reports.append(AxiomReport("P1", COUNTEREXAMPLE if witness else HOLDS, witness, budget, checked))

    # P2: maps C -> A factor through a deflation C ↠ A' with A' in A (tried via the image).
    checked, witness = 0, None
    for x in objects:
        for a in members:
            for t in probes.morphisms(x, a):
                checked += 1
                im, epi, _ = image(t)
                if not (spec.contains(im) and is_deflation(c, epi)):
                    witness = {"map": t}
                    break
            if witness:
                break
        if witness:
            break
    reports.append(AxiomReport("P2", INCONCLUSIVE if witness else HOLDS, witness, budget, checked))

    # P3: pushout of an inflation along a deflation onto an A-object.
    checked, witness = 0, None
    for x, d in itertools.product(objects, repeat=2):
        infl = [i for i in probes.morphisms(x, d) if i.is_mono() and is_inflation(c, i)]
        if not infl:
            continue
        for a in members:
            for p in probes.morphisms(x, a):
                if not (p.is_epi() and is_deflation(c, p)):
                    continue
                for i in infl:
                    checked += 1
                    _, d_leg, a_leg = pushout(i, p)
                    if not (is_inflation(c, a_leg) and is_deflation(c, d_leg)):
                        witness = {"inflation": i, "deflation": p}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(AxiomReport("P3", COUNTEREXAMPLE if witness else HOLDS, witness, budget, checked))

    # P4: for A ↣ X ↠ B with A, B in A, use B' = B and A' = image of p∘i.
    checked, witness = 0, None
    for a, x, b in itertools.product(members, objects, members):
        for i in probes.morphisms(a, x):
            if not (i.is_mono() and is_inflation(c, i)):
                continue
            for p in probes.morphisms(x, b):
                if not (p.is_epi() and is_deflation(c, p)):
                    continue
                checked += 1
                im, epi, mono = image(p @ i)
                if not (spec.contains(im) and is_deflation(c, epi) and is_inflation(c, mono)):
                    witness = {"inflation": i, "deflation": p}
                    break
            if witness:
                break
        if witness:
            break
    reports.append(AxiomReport("P4", INCONCLUSIVE if witness else HOLDS, witness, budget, checked))
    return reports


# -- complexes over E/A ------------------------------------------------------------------

class LiftError(ValueError):
    pass


@dataclass
class RoofComplex:
    """Objects in consecutive degrees joined by roofs; the differentials compose to zero modulo A."""

    entries: dict[int, Representation]
    diffs: dict[int, Roof]


def lift_complex(spec: PercolatingSpec, x: RoofComplex) -> tuple[Complex, dict[int, RepMorphism]]:
    """A complex Z over E with weak isomorphisms t^n: Z^n -> X^n realizing the roof differentials.

    Works right to left: Z^top = X^top; then pull back the roof leg along
    t^{i+1} and cut down to the kernel of d_Z^{i+1}∘g, which only removes
    an A-quotient because the roofs compose to zero in E/A.
    """
    degrees = sorted(x.entries)
    if not degrees:
        raise LiftError("empty roof complex")
    alg = x.entries[degrees[0]].algebra
    top = degrees[-1]
    z_entries = {top: x.entries[top]}
    t = {top: RepMorphism.identity(x.entries[top])}
    z_diffs: dict[int, RepMorphism] = {}
    for i in reversed(degrees[:-1]):
        if i + 1 not in x.entries:
            raise LiftError(f"degrees must be consecutive (gap after {i})")
        roof = x.diffs.get(i) or Roof.of_morphism(RepMorphism.zero(x.entries[i], x.entries[i + 1]))
        _, u, g = pullback(roof.f, t[i + 1])
        if i + 1 in z_diffs:
            k, incl = kernel(z_diffs[i + 1] @ g)
        else:
            k, incl = kernel(RepMorphism.zero(g.src, alg.zero()))
        t_i = roof.s @ u @ incl
        if is_weak_iso(spec, t_i) is None:
            raise LiftError(f"degree {i}: the comparison map is not a weak isomorphism")
        z_entries[i] = k
        z_diffs[i] = g @ incl
        t[i] = t_i
    z = Complex(alg, z_entries, z_diffs)
    for i in degrees[:-1]:
        roof = x.diffs.get(i) or Roof.of_morphism(RepMorphism.zero(x.entries[i], x.entries[i + 1]))
        if not roof_equal(spec, Roof(t[i], t[i + 1] @ z.diff(i)), roof):
            raise LiftError(f"degree {i}: lifted differential does not represent the roof")
    return z, t


@dataclass
class ProbeSuiteReport:
    name: str
    passed: bool
    checked: int
    details: list[dict] = field(default_factory=list)


def _suite_a(spec: PercolatingSpec, probes: ProbeSet) -> ProbeSuiteReport:
    """Complexes with entries in A become zero degreewise in E/A."""
    members = [a for a in probes.objects() if spec.contains(a) and not a.is_zero()]
    report = ProbeSuiteReport("a", True, 0)
    complexes = [stalk(a) for a in members]
    for a, b in itertools.product(members, repeat=2):
        for f in probes.morphisms(a, b):
            complexes.append(Complex(a.algebra, {-1: a, 0: b}, {-1: f}))
    for cx in complexes:
        report.checked += 1
        if not all(q_is_zero(spec, RepMorphism.identity(e)) for e in cx.entries.values()):
            report.passed = False
            report.details.append({"complex": cx})
    return report


def weak_iso_tower(spec: PercolatingSpec, f: RepMorphism, probes: ProbeSet | None = None) -> list[tuple[int, Representation]]:
    """cone(f) as an extension of Σ(ker f) by coker f; both must lie in A.

    The upper truncation ker f ↣ X -> Y of the two-term cone must be
    quasi-isomorphic to the stalk coker f; what it cuts away is ker f
    sitting in degree -1.
    """
    c = spec.conflations
    cx = cone(stalk_map(f))
    k, _ = kernel(f)
    q, quot = cokernel(f)
    upper, _ = truncate_above(cx, -1)
    comparison = ChainMap(upper, stalk(q), {0: quot})
    if is_quasi_iso(c, comparison, WEAK, probes) != Verdict.YES:
        raise ValueError("upper truncation of the cone is not quasi-isomorphic to the cokernel")
    tower = [(1, k), (0, q)]
    if not all(spec.contains(obj) for _, obj in tower):
        raise ValueError("a layer of the cone lies outside A")
    return tower


def _suite_b(spec: PercolatingSpec, probes: ProbeSet) -> ProbeSuiteReport:
    report = ProbeSuiteReport("b", True, 0)
    objects = probes.objects()
    for x, y in itertools.product(objects, repeat=2):
        for f in probes.morphisms(x, y):
            if is_weak_iso(spec, f) is None:
                continue
            report.checked += 1
            try:
                tower = weak_iso_tower(spec, f, probes)
                report.details.append({"map": f, "tower": tower})
            except ValueError as err:
                report.passed = False
                report.details.append({"map": f, "error": str(err)})
    return report


def _suite_c(spec: PercolatingSpec, probes: ProbeSet) -> ProbeSuiteReport:
    """Two- and three-term roof complexes lift to complexes over E."""
    report = ProbeSuiteReport("c", True, 0)
    objects = [o for o in probes.indecomposables if not spec.contains(o)]
    roof_complexes = []
    for x, y in itertools.product(objects, repeat=2):
        for r in quotient_hom_roofs(spec, x, y):
            roof_complexes.append(RoofComplex({0: x, 1: y}, {0: r}))
    for x, y, z in itertools.product(objects, repeat=3):
        for r1 in quotient_hom_roofs(spec, x, y):
            for r2 in quotient_hom_roofs(spec, y, z):
                comp = roof_compose(spec, r1, r2)
                if q_is_zero(spec, comp.f):
                    roof_complexes.append(RoofComplex({0: x, 1: y, 2: z}, {0: r1, 1: r2}))
    for rc in roof_complexes:
        report.checked += 1
        try:
            lift_complex(spec, rc)
        except (LiftError, WeakIsoError) as err:
            report.passed = False
            report.details.append({"entries": rc.entries, "error": str(err)})
    return report


def verdier_probe(spec: PercolatingSpec, probes: ProbeSet) -> list[ProbeSuiteReport]:
    spec._require_serre()
    return [_suite_a(spec, probes), _suite_b(spec, probes), _suite_c(spec, probes)]


# -- C2^op and L2 in the quotient ------------------------------------------------------------

def check_c2op(spec: PercolatingSpec, probes: ProbeSet) -> ProbeSuiteReport:
    """For probe conflations E' ↣ E ↠ A with A in A, find A'' ↣ A' ↠ A in A mapping into the row."""
    c = spec.conflations
    report = ProbeSuiteReport("C2op", True, 0)
    members = [a for a in probes.objects() if spec.contains(a) and not a.is_zero()]
    for pair in _probe_conflations(c, probes):
        if pair.right.is_zero() or not spec.contains(pair.right):
            continue
        report.checked += 1
        found = _c2op_diagram(spec, pair, members)
        if found is None:
            report.passed = False
            report.details.append({"conflation": pair})
        else:
            report.details.append({"conflation": pair, "diagram": found})
    return report


def _c2op_diagram(spec: PercolatingSpec, pair: KCPair, members: Sequence[Representation]):
    c = spec.conflations
    e, a = pair.middle, pair.right
    candidates = []
    from .conflations import section_of
    s = section_of(pair.deflation)
    if s is not None:
        candidates.append(s)
    if spec.is_serre:
        candidates.append(a_trace(spec, e)[1])
    maps = [f for m in members for f in hom_basis(m, e)]
    if maps:
        candidates.append(matrix_morphism([f.src for f in maps], [e], [maps]))
    for into_e in candidates:
        top = pair.deflation @ into_e
        if not top.is_epi() or not spec.contains(into_e.src):
            continue
        k, incl = kernel(top)
        lower = KCPair(incl, top)
        if not (spec.contains(k) and is_conflation(c, lower)):
            continue
        into_left = factor_through_mono(pair.inflation, into_e @ incl)
        if into_left is None:
            continue
        return {"row": lower, "to_middle": into_e, "to_left": into_left}
    return None


def l2_quotient_probe(spec: PercolatingSpec, probes: ProbeSet, spans: int = 50, seed: int = 0) -> ProbeSuiteReport:
    """Spans (inflation i, roof t) out of a common object in E/A have pushouts that are inflations.

    Both legs are put on a common apex, pushed out in E, and the leg
    opposite the inflation must become an inflation in E/A: its kernel lies
    in A and its image inclusion is an inflation.
    """
    c = spec.conflations
    rng = random.Random(seed)
    objects = [o for o in probes.objects() if not o.is_zero()]
    inflations = [(x, y, i) for x, y in itertools.product(objects, repeat=2)
                  for i in probes.morphisms(x, y) if i.is_mono() and not i.is_zero() and is_inflation(c, i)]
    report = ProbeSuiteReport("L2", True, 0)
    if not inflations:
        return report
    attempts = 0
    while report.checked < spans and attempts < 20 * spans:
        attempts += 1
        x, y, i = rng.choice(inflations)
        z = rng.choice(objects)
        basis = quotient_hom_basis(spec, x, z)
        if not basis:
            continue
        r_obj, _ = a_reject(spec, x)
        g = combine(basis, [rng.choice(probes.coefficient_grid) for _ in basis], basis[0].src, basis[0].dst)
        t = roof_from_quotient_map(spec, x, z, g)
        report.checked += 1
        i_on_apex = i @ t.s
        _, to_y, to_q = pushout(i_on_apex, t.f)
        k, _ = kernel(to_q)
        _, _, mono = image(to_q)
        ok = spec.contains(k) and (mono.is_iso() or is_inflation(c, mono))
        if not ok:
            report.passed = False
            report.details.append({"inflation": i, "roof": t})
    return report
