"""The exact hull, modelled by two-term complexes with monic differential."""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    WEAK,
    ChainMap,
    Complex,
    ComplexError,
    Verdict,
    _cone_entry,
    cone,
    homotopy_between,
    is_quasi_iso,
    stalk,
)
from .conflations import ConflationClass, ProbeSet
from .derived import derived_hom
from .quiver import RepMorphism, Representation, cokernel, find_isomorphism, matrix_morphism


class HullError(ValueError):
    pass


@dataclass(frozen=True)
class HullObject:
    """X^{-1} ↣ X^0 placed in degrees -1 and 0."""

    differential: RepMorphism

    def __post_init__(self):
        if not self.differential.is_mono():
            raise HullError("hull objects need a monic differential")

    @property
    def complex(self) -> Complex:
        d = self.differential
        return Complex(d.src.algebra, {-1: d.src, 0: d.dst}, {-1: d})

    @property
    def lower(self) -> Representation:
        return self.differential.src

    @property
    def upper(self) -> Representation:
        return self.differential.dst

    def homology(self) -> Representation:
        return cokernel(self.differential)[0]


def hull_embed(c: ConflationClass, x: Representation) -> HullObject:
    return HullObject(RepMorphism.zero(x.algebra.zero(), x))


def hull_cokernel(c: ConflationClass, f: RepMorphism) -> HullObject:
    """The two-term complex src -> dst standing for the cokernel of the inflation f."""
    return HullObject(f)


def hull_map(x: HullObject, y: HullObject, lower: RepMorphism, upper: RepMorphism) -> ChainMap:
    return ChainMap(x.complex, y.complex, {-1: lower, 0: upper})


def represents(c: ConflationClass, h: HullObject, x: Representation,
               probes: ProbeSet | None = None) -> Verdict:
    """Whether h is isomorphic in the derived category to the stalk x, via h -> its cokernel."""
    q, quot = cokernel(h.differential)
    if q.dims != x.dims:
        return Verdict.NO
    iso = find_isomorphism(q, x)
    if iso is None:
        return Verdict.NO
    return is_quasi_iso(c, ChainMap(h.complex, stalk(x), {0: iso @ quot}), WEAK, probes)


def _comparison(u: ChainMap, v: ChainMap) -> ChainMap | None:
    """cone(u) -> z given by [h, v] with h a null-homotopy of v∘u."""
    h = homotopy_between(v @ u, ChainMap.zero(u.src, v.dst))
    if h is None:
        return None
    x, z = u.src, v.dst
    cx = cone(u)
    comps = {}
    for n in cx.degrees():
        parts = _cone_entry(u, n)
        h_n = h.get(n + 1, RepMorphism.zero(x.entry(n + 1), z.entry(n)))
        comps[n] = matrix_morphism(parts, [z.entry(n)], [[h_n, v.component(n)]])
    try:
        return ChainMap(cx, z, comps)
    except ComplexError:
        return None


def hull_conflation_check(c: ConflationClass, x: HullObject, y: HullObject, z: HullObject,
                          maps: tuple[ChainMap, ChainMap], probes: ProbeSet | None = None) -> bool | None:
    """Does x -> y -> z complete to a triangle? None when the verdict is Unknown."""
    u, v = maps
    if (u.src != x.complex or u.dst != y.complex or v.src != y.complex or v.dst != z.complex):
        return False
    phi = _comparison(u, v)
    if phi is None:
        return False
    verdict = is_quasi_iso(c, phi, WEAK, probes)
    if verdict == Verdict.UNKNOWN:
        return None
    return verdict == Verdict.YES


def hull_presentation(c: ConflationClass, h: HullObject) -> tuple[HullObject, HullObject, tuple[ChainMap, ChainMap]]:
    """The presentation X^{-1} ↣ X^0 ↠ h with both ends embedded from E."""
    lo, up = hull_embed(c, h.lower), hull_embed(c, h.upper)
    u = ChainMap(lo.complex, up.complex, {0: h.differential})
    v = ChainMap(up.complex, h.complex, {0: RepMorphism.identity(h.upper)})
    return lo, up, (u, v)


def hull_hom_dim(c: ConflationClass, x: HullObject, y: HullObject, shift: int = 0) -> int:
    return derived_hom(c, x.complex, y.complex, shift).dimension
