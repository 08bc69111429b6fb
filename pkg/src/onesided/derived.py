"""Bounded derived category computations through complexes of projectives.

Hom spaces in D^b are computed as chain maps from a projective resolution
modulo null-homotopic ones. Projectivity is relative to the conflation
class: an object is projective when every deflation onto it splits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .complexes import (
    WEAK,
    ChainMap,
    Complex,
    ComplexError,
    Verdict,
    _declare_homotopy,
    _homotopy_terms,
    axiom_holds,
    chain_map_basis,
    cone,
    cone_map,
    cone_projection,
    default_probes,
    find_complex_isomorphism,
    is_exact,
    is_quasi_iso,
    kernel_factorization,
    minimal_reduce,
    stalk,
    stalk_map,
)
from .conflations import (
    ConflationClass,
    KCPair,
    ProbeSet,
    is_conflation,
    is_deflation,
    is_inflation,
    is_kc_pair,
    retraction_of,
    section_of,
    sequences_isomorphic,
)
from .linalg import Matrix, mat_solve
from .linsys import MorphismSystem
from .quiver import (
    RepMorphism,
    Representation,
    cokernel,
    factor_through_epi,
    factor_through_mono,
    hom_basis,
    in_additive_hull,
    kernel,
    matrix_morphism,
    projective_cover,
    pushout,
    pullback,
)


class ResolutionError(ValueError):
    """Enough projectives fails for the class at some object."""


class PreconditionError(ValueError):
    """A required axiom is not certified on the probes."""


# -- projectives and resolutions ---------------------------------------------

_PROJECTIVE: dict = {}


def is_projective(c: ConflationClass, p: Representation, probes: ProbeSet | None = None) -> bool:
    """Every probed deflation onto p (and the ambient cover, if admissible) has a section."""
    if p.is_zero():
        return True
    probes = probes or default_probes(p.algebra)
    key = (c, p, probes)
    if key in _PROJECTIVE:
        return _PROJECTIVE[key]
    candidates = [projective_cover(p)[1]]
    for y in probes.objects():
        candidates.extend(probes.morphisms(y, p))
    result = True
    for g in candidates:
        if g.is_epi() and is_deflation(c, g) and section_of(g) is None:
            result = False
            break
    _PROJECTIVE[key] = result
    return result


def _probed_inflations(c: ConflationClass, probes: ProbeSet, subcategory: Sequence[Representation] | None,
                       source: Representation | None = None):
    """Inflations between probe objects; with a subcategory, the cokernel must lie in its additive hull."""
    objects = probes.objects()
    for x in ([source] if source is not None else objects):
        for y in objects:
            for f in probes.morphisms(x, y):
                if not f.is_mono() or not is_inflation(c, f):
                    continue
                if subcategory is not None and not in_additive_hull(cokernel(f)[0], subcategory):
                    continue
                yield f


def _extends_along(f: RepMorphism, g: RepMorphism) -> bool:
    """Is there an h with h∘f = g?"""
    if g.is_zero():
        return True
    basis = hom_basis(f.dst, g.dst)
    if not basis:
        return False
    target = g.flat()
    cols = [(h @ f).flat() for h in basis]
    return mat_solve(Matrix.from_columns(cols, len(target)), Matrix.from_columns([target], len(target))) is not None


def is_injective(c: ConflationClass, i: Representation, probes: ProbeSet | None = None,
                 subcategory: Sequence[Representation] | None = None) -> bool:
    """Lifting test: every probed map X -> i extends along every probed inflation X ↣ Y.

    ``subcategory`` restricts the ambient to the additive hull of the given
    objects, keeping only the conflations whose cokernel stays inside it.
    """
    probes = probes or default_probes(i.algebra)
    for f in _probed_inflations(c, probes, subcategory):
        for g in probes.morphisms(f.src, i):
            if not _extends_along(f, g):
                return False
    return True


def inflations_split(c: ConflationClass, i: Representation, probes: ProbeSet | None = None,
                     subcategory: Sequence[Representation] | None = None) -> bool:
    """Does every probed inflation out of i have a retraction?

    In a deflation-exact category this is weaker than injectivity, since
    pushouts of inflations need not exist.
    """
    probes = probes or default_probes(i.algebra)
    return all(retraction_of(f) is not None for f in _probed_inflations(c, probes, subcategory, source=i))


@dataclass(frozen=True)
class ProjResolution:
    """A complex of projectives with a quasi-isomorphism onto the resolved complex."""

    target: Complex
    complex: Complex
    augmentation: ChainMap

    @property
    def object(self) -> Representation:
        return self.target.entry(0)


def _cover(c: ConflationClass, x: Representation) -> RepMorphism:
    _, cover = projective_cover(x)
    if is_deflation(c, cover):
        return cover
    if is_projective(c, x):
        return RepMorphism.identity(x)
    raise ResolutionError(f"no projective deflation onto object with dimension vector {x.dims}")


def projective_resolution(c: ConflationClass, x: Representation, max_length: int | None = None) -> ProjResolution:
    """Resolution ... -> P^{-1} -> P^0 -> x by covers that are deflations of the class."""
    alg = x.algebra
    bound = max_length if max_length is not None else 2 * len(alg.vertices) + 2
    entries, diffs = {}, {}
    current = x
    previous_incl = None
    first = None
    degree = 0
    while not current.is_zero():
        if -degree > bound:
            raise ResolutionError("resolution does not terminate within the length bound")
        cover = _cover(c, current)
        entries[degree] = cover.src
        if first is None:
            first = cover
        if previous_incl is not None:
            diffs[degree] = previous_incl @ cover
        k, incl = kernel(cover)
        current, previous_incl = k, incl
        degree -= 1
    res = Complex(alg, entries, diffs, check=False)
    aug = ChainMap(res, stalk(x), {0: first} if first is not None else {})
    return ProjResolution(stalk(x), res, aug)


def _shift_resolution(r: ProjResolution, k: int) -> tuple[Complex, ChainMap]:
    """Resolution of x placed in degree k: the complex shifted by -k."""
    return r.complex.shift(-k), r.augmentation.shift(-k)


def resolve_complex(c: ConflationClass, x: Complex) -> ProjResolution:
    """Complex of projectives P with a quasi-isomorphism P -> x.

    Built by induction on the top degree m: x is the cone of
    w: Σ^{-1}σ^{<m}x -> x^m[-m] with w^m = d^{m-1}. Both sides are
    resolved, w is lifted up to a homotopy, and P is the cone of the lift.
    """
    alg = x.algebra
    if x.is_zero():
        return ProjResolution(x, x, ChainMap.zero(x, x))
    degrees = x.degrees()
    m = degrees[-1]
    top = projective_resolution(c, x.entry(m))
    pb, qb = _shift_resolution(top, m)
    b = stalk(x.entry(m), m)
    qb = ChainMap(pb, b, qb.components)
    if len(degrees) == 1:
        return ProjResolution(x, pb, ChainMap(pb, x, qb.components))
    lower = Complex(alg, {n: e for n, e in x.entries.items() if n < m},
                    {n: d for n, d in x.diffs.items() if n < m - 1}, check=False)
    rest = resolve_complex(c, lower)
    pa, qa = rest.complex.shift(-1), rest.augmentation.shift(-1)
    sa = lower.shift(-1)
    w = ChainMap(sa, b, {m: x.diff(m - 1)})
    # Unknowns: chain map ŵ: Σ^{-1}P_A -> P_B and homotopy h with qb ŵ - w qa = d h + h d.
    sys = MorphismSystem()
    for n in pa.degrees():
        if n in pb.entries:
            sys.unknown(("w", n), pa.entry(n), pb.entry(n))
    has = lambda n: ("w", n) in sys._unknowns
    for n in sorted(set(pa.degrees()) | {n - 1 for n in pa.degrees()}):
        terms = []
        if has(n):
            d = pb.diff(n)
            terms.append((("w", n), lambda f, d=d: d @ f))
        if has(n + 1):
            d = pa.diff(n)
            terms.append((("w", n + 1), lambda f, d=d: -(f @ d)))
        if terms:
            sys.equation(terms, RepMorphism.zero(pa.entry(n), pb.entry(n + 1)))
    _declare_homotopy(sys, "h", pa, b)
    for n in pa.degrees():
        terms = [(key, lambda h, fn=fn: -fn(h)) for key, fn in _homotopy_terms(sys, "h", pa, b, n)]
        if has(n):
            q = qb.component(n)
            terms.append((("w", n), lambda f, q=q: q @ f))
        rhs = (w @ qa).component(n)
        sys.equation(terms, rhs)
    sol = sys.solve()
    if sol is None:
        raise ResolutionError("could not lift the attaching map to the resolutions")
    w_hat = ChainMap(pa, pb, {n: sol[("w", n)] for n in pa.degrees() if has(n)})
    h = {n: sol[("h", n)] for n in pa.degrees() if ("h", n) in sol}
    p = cone(w_hat)
    to_cone = cone_map(w_hat, w, qa, qb, h)
    # cone(w) equals x entry by entry; re-target the map onto x itself.
    aug = ChainMap(p, x, to_cone.components)
    return ProjResolution(x, p, aug)


# -- derived hom -------------------------------------------------------------

@dataclass
class DerivedHomResult:
    dimension: int
    representative_maps: list[ChainMap] = field(default_factory=list)


def _require_r0_star(c: ConflationClass, objects) -> None:
    for x in objects:
        if not x.is_zero() and not is_deflation(c, RepMorphism.zero(x, x.algebra.zero())):
            raise PreconditionError(f"R0* fails: the map to zero from {x.dims} is not a deflation")


def homotopy_image(x: Complex, y: Complex) -> list[ChainMap]:
    """Spanning set of the null-homotopic chain maps x -> y."""
    out = []
    from .quiver import hom_basis
    for m in x.degrees():
        if m - 1 not in y.entries:
            continue
        for h in hom_basis(x.entry(m), y.entry(m - 1)):
            comps = {}
            for n in (m - 1, m):
                part = RepMorphism.zero(x.entry(n), y.entry(n))
                if n == m - 1 and n in x.entries:
                    part = part + h @ x.diff(m - 1)
                if n == m:
                    part = part + y.diff(m - 1) @ h
                comps[n] = part
            out.append(ChainMap(x, y, comps, check=False))
    return out


def _flatten(f: ChainMap, degrees) -> tuple:
    return tuple(v for n in degrees for v in f.component(n).flat())


def hom_modulo_homotopy(x: Complex, y: Complex) -> DerivedHomResult:
    """Chain maps x -> y modulo null-homotopic maps, with greedy representatives."""
    maps = chain_map_basis(x, y)
    if not maps:
        return DerivedHomResult(0, [])
    degrees = x.degrees()
    null = [_flatten(f, degrees) for f in homotopy_image(x, y)]
    length = len(_flatten(maps[0], degrees))
    span = [v for v in null if any(v)]
    rank = Matrix(len(span), length, span).rank() if span else 0
    reps = []
    for f in maps:
        v = _flatten(f, degrees)
        trial = span + [v]
        r = Matrix(len(trial), length, trial).rank()
        if r > rank:
            span, rank = trial, r
            reps.append(f)
    return DerivedHomResult(len(reps), reps)


def derived_hom(c: ConflationClass, x: Complex, y: Complex, shift: int = 0) -> DerivedHomResult:
    """Hom_{D^b}(x, Σ^shift y) computed as Hom_K(P, Σ^shift y) for a projective resolution P -> x."""
    _require_r0_star(c, list(x.entries.values()) + list(y.entries.values()))
    p = resolve_complex(c, x).complex
    return hom_modulo_homotopy(p, y.shift(shift))


def ext_dim(c: ConflationClass, x: Representation, y: Representation, n: int) -> int:
    return derived_hom(c, stalk(x), stalk(y), n).dimension


# -- triangles ---------------------------------------------------------------

def comparison_map(pair: KCPair) -> ChainMap:
    """cone(i(f)) -> i(Z) given by g in degree zero."""
    f, g = pair.inflation, pair.deflation
    if not (g @ f).is_zero():
        raise ComplexError("the pair does not compose to zero")
    c = cone(stalk_map(f))
    return ChainMap(c, stalk(g.dst), {0: g})


def triangle_verdict(c: ConflationClass, pair: KCPair, probes: ProbeSet | None = None) -> Verdict:
    """Whether X -> Y -> Z extends to a triangle: the comparison cone(f) -> Z is a weak quasi-isomorphism."""
    try:
        h = comparison_map(pair)
    except ComplexError:
        return Verdict.NO
    return is_quasi_iso(c, h, WEAK, probes)


@dataclass
class TriangleCertificate:
    pair: KCPair
    verdict: Verdict
    comparison: ChainMap
    connecting: tuple[ChainMap, ChainMap]  # roof Z <- cone(f) -> ΣX, read as w∘h^{-1}

    @property
    def connecting_is_zero(self) -> bool:
        from .complexes import is_null_homotopic
        return is_null_homotopic(self.connecting[1])


def conflation_to_triangle(c: ConflationClass, pair: KCPair, probes: ProbeSet | None = None) -> TriangleCertificate:
    if not is_conflation(c, pair):
        raise ValueError("the pair is not a conflation of the class")
    verdict = triangle_verdict(c, pair, probes)
    if verdict != Verdict.YES:
        raise ValueError(f"comparison map is not a quasi-isomorphism (verdict {verdict.value})")
    h = comparison_map(pair)
    w = cone_projection(stalk_map(pair.inflation))
    return TriangleCertificate(pair, verdict, h, (h, w))


def r3_triangle_criterion(c: ConflationClass, pair: KCPair, probes: ProbeSet | None = None) -> bool:
    """Decide conflation-hood through the triangle test; valid when R3 (and R0*) hold."""
    probes = probes or default_probes(pair.middle.algebra)
    if not axiom_holds(c, "R3", probes) or not axiom_holds(c, "R0*", probes):
        raise PreconditionError("R3 is not certified on the probes")
    return triangle_verdict(c, pair, probes) == Verdict.YES


# -- extensions ----------------------------------------------------------------

def pushout_sequence(pair: KCPair, along: RepMorphism) -> KCPair:
    """Push X -> Y -> C out along t: X -> X'; returns X' -> Q -> C."""
    f, g = pair.inflation, pair.deflation
    src = [f.dst, along.dst]
    diff = matrix_morphism([f.src], src, [[f], [-along]])
    q_obj, quot = cokernel(diff)
    leg = quot @ matrix_morphism([along.dst], src, [[None], [RepMorphism.identity(along.dst)]])
    to_c = factor_through_epi(quot, matrix_morphism(src, [g.dst], [[g, None]]))
    return KCPair(leg, to_c)


def pullback_sequence(pair: KCPair, along: RepMorphism) -> KCPair:
    """Pull X -> Y -> C back along t: C' -> C; returns X -> P -> C'."""
    _, _, to_c = pullback(pair.deflation, along)
    _, incl = kernel(to_c)
    return KCPair(incl, to_c)


def lift_extension(c: ConflationClass, extension: KCPair, p: RepMorphism, max_variants: int = 16) -> KCPair | None:
    """Find a conflation X -> W -> C whose pushout along p: X -> Y is the given Y -> E -> C.

    Uses the syzygy K of C: the extension corresponds to ψ: K -> Y, and a
    lift is a φ: K -> X with p∘φ equal to ψ modulo maps extending over the
    cover. Candidate lifts are verified by pushing them out again.
    """
    y, e, cc = extension.left, extension.middle, extension.right
    if p.dst != y:
        raise ValueError("p must end at the left term of the extension")
    x = p.src
    cover_obj, cover = projective_cover(cc)
    k, iota = kernel(cover)
    # Lift the cover through the deflation of the extension.
    sys = MorphismSystem()
    sys.unknown("lift", cover_obj, e)
    sys.equation([("lift", lambda f: extension.deflation @ f)], cover)
    lifted = sys.solve()
    if lifted is None:
        raise AssertionError("projective cover does not lift through an epimorphism")
    psi = factor_through_mono(extension.inflation, lifted["lift"] @ iota)
    sys = MorphismSystem()
    sys.unknown("phi", k, x)
    sys.unknown("chi", cover_obj, y)
    sys.equation([("phi", lambda f: p @ f), ("chi", lambda f: f @ iota)], psi)
    particular = sys.solve()
    if particular is None:
        return None
    homogeneous = sys.solution_space()
    variants = [particular["phi"]] + [particular["phi"] + s["phi"] for s in homogeneous[:max_variants]]
    for phi in variants:
        src = [cover_obj, x]
        diff = matrix_morphism([k], src, [[iota], [-phi]])
        w_obj, quot = cokernel(diff)
        infl = quot @ matrix_morphism([x], src, [[None], [RepMorphism.identity(x)]])
        defl = factor_through_epi(quot, matrix_morphism(src, [cc], [[cover, None]]))
        candidate = KCPair(infl, defl)
        if not is_kc_pair(candidate):
            continue
        if sequences_isomorphic(pushout_sequence(candidate, p), extension) and is_conflation(c, candidate):
            return candidate
    return None


# -- extension closure -------------------------------------------------------------

@dataclass
class ClosureReport:
    closed: bool
    checked: int
    failures: list[dict] = field(default_factory=list)


def _concentrated_in_degree_zero(x: Complex) -> Representation | None:
    """H^0 when all other ambient homology vanishes, else None."""
    for n in sorted(set(x.degrees()) | {m - 1 for m in x.degrees()}):
        if n == 0:
            continue
        k, incl, p = kernel_factorization(x, n)
        if not p.is_epi():
            return None
    k, incl, p = kernel_factorization(x, 0)
    h, _ = cokernel(p)
    return h


def is_extension_closed_probe(c: ConflationClass, probes: ProbeSet, objects: Sequence[Representation] | None = None
                              ) -> ClosureReport:
    """For probe pairs (A, C) and every class θ in Hom(i C, Σ i A), test that the middle of the triangle is a stalk.

    The middle term B = Σ^{-1} cone(θ) must have ambient homology only in
    degree 0, and its projective resolution must be isomorphic (after
    minimal reduction) to the resolution of H^0 in the class.
    """
    objs = list(objects) if objects is not None else [o for o in probes.indecomposables]
    report = ClosureReport(True, 0)
    for a, cc in itertools.product(objs, repeat=2):
        classes = derived_hom(c, stalk(cc), stalk(a), 1)
        p_c = resolve_complex(c, stalk(cc)).complex
        for theta in classes.representative_maps:
            report.checked += 1
            middle = cone(theta).shift(-1)
            h0 = _concentrated_in_degree_zero(middle)
            failure = None
            if h0 is None:
                failure = "homology outside degree zero"
            else:
                try:
                    left = minimal_reduce(resolve_complex(c, middle).complex)[0]
                    right = minimal_reduce(projective_resolution(c, h0).complex)[0]
                    if find_complex_isomorphism(left, right) is None:
                        failure = "middle term is not quasi-isomorphic to its degree-zero homology"
                except ResolutionError as err:
                    failure = f"resolution failed: {err}"
            if failure:
                report.closed = False
                report.failures.append({"left": a, "right": cc, "class": theta, "reason": failure})
    return report
