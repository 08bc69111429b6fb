"""Idempotent completion and the levelwise weak idempotent completion."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .conflations import (
    ConflationClass,
    KCPair,
    RetractDiagram,
    retract_conflation,
    section_of,
)
from .linalg import Matrix
from .quiver import (
    RepMorphism,
    Representation,
    RepresentationError,
    combine,
    direct_sum,
    hom_basis,
    is_isomorphic,
    matrix_morphism,
    split_idempotent,
)


@dataclass(frozen=True)
class IdemObject:
    carrier: Representation
    idempotent: RepMorphism

    def __post_init__(self):
        e = self.idempotent
        if e.src != self.carrier or e.dst != self.carrier or e @ e != e:
            raise RepresentationError("IdemObject needs an idempotent endomorphism of its carrier")

    @classmethod
    def whole(cls, x: Representation) -> "IdemObject":
        return cls(x, RepMorphism.identity(x))

    def complement(self) -> "IdemObject":
        return IdemObject(self.carrier, RepMorphism.identity(self.carrier) - self.idempotent)

    def realize(self) -> tuple[Representation, RepMorphism, RepMorphism]:
        """The image of the idempotent in the ambient category, with retraction and section."""
        return split_idempotent(self.idempotent)

    def is_zero(self) -> bool:
        return self.idempotent.is_zero()


def is_idem_morphism(a: IdemObject, b: IdemObject, f: RepMorphism) -> bool:
    return f.src == a.carrier and f.dst == b.carrier and b.idempotent @ f @ a.idempotent == f


def idem_hom_basis(a: IdemObject, b: IdemObject) -> list[RepMorphism]:
    """Basis of q∘Hom(A, B)∘p, extracted from the compressed spanning set."""
    spanning = [b.idempotent @ f @ a.idempotent for f in hom_basis(a.carrier, b.carrier)]
    basis: list[RepMorphism] = []
    rank = 0
    for f in spanning:
        trial = Matrix.from_columns([g.flat() for g in basis + [f]], len(f.flat()))
        r = trial.rank()
        if r > rank:
            basis.append(f)
            rank = r
    return basis


@dataclass(frozen=True)
class IdemSplitting:
    """(A, 1) ≅ (A, p) ⊕ (A, 1−p) through the inclusions and projections below."""

    first: IdemObject
    second: IdemObject
    injections: tuple[RepMorphism, RepMorphism]
    projections: tuple[RepMorphism, RepMorphism]

    def verify(self) -> bool:
        (i1, i2), (p1, p2) = self.injections, self.projections
        one = RepMorphism.identity(self.first.carrier)
        return (p1 @ i1 == self.first.idempotent and p2 @ i2 == self.second.idempotent
                and (p1 @ i2).is_zero() and (p2 @ i1).is_zero() and i1 @ p1 + i2 @ p2 == one)


def idem_split_decomposition(a: IdemObject) -> IdemSplitting:
    """Morphisms of the completion between (A, 1) and the two summands are the idempotents themselves."""
    p = a.idempotent
    q = RepMorphism.identity(a.carrier) - p
    split = IdemSplitting(IdemObject(a.carrier, p), IdemObject(a.carrier, q), (p, q), (p, q))
    assert split.verify()
    return split


def random_idempotent(x: Representation, rng: random.Random, spread: int = 3) -> RepMorphism:
    """Conjugate a coordinate projection of a random split summand by an automorphism."""
    basis = hom_basis(x, x)
    for _ in range(32):
        g = combine(basis, [rng.randint(-spread, spread) for _ in basis], x, x)
        if g.is_iso():
            return g @ _random_projection(x, rng) @ g.inverse()
    return _random_projection(x, rng)


def _random_projection(x: Representation, rng: random.Random) -> RepMorphism:
    """Projection onto a random subset of split summands found among the basis endomorphisms."""
    candidates = [f for f in hom_basis(x, x) if f @ f == f]
    if not candidates:
        return RepMorphism.identity(x)
    chosen = RepMorphism.zero(x, x)
    for f in candidates:
        if rng.random() < 0.5 and (chosen @ f).is_zero() and (f @ chosen).is_zero():
            chosen = chosen + f
    return chosen


# -- weak idempotent completion ----------------------------------------------------

@dataclass(frozen=True)
class Retraction:
    r: RepMorphism
    s: RepMorphism

    @property
    def kernel_object(self) -> IdemObject:
        """The kernel of r, realized as (X, 1 − s∘r)."""
        x = self.r.src
        return IdemObject(x, RepMorphism.identity(x) - self.s @ self.r)


@dataclass
class WicLevel:
    level: int
    new_objects: list[IdemObject]
    provenance: list[Retraction] = field(default_factory=list)


class WicTower(list):
    """Levels of the construction; ``stable_level`` is set once a level adds nothing new."""

    stable_level: int | None = None

    def objects(self, upto: int | None = None) -> list[Representation]:
        levels = self if upto is None else self[: upto + 1]
        return [o.realize()[0] for lvl in levels for o in lvl.new_objects]


def find_retraction(x: Representation, y: Representation, seed: int = 0, attempts: int = 4) -> Retraction | None:
    """A split epimorphism x -> y with a section, found by sampling the hom space.

    Split epimorphisms form a Zariski-open subset of Hom(x, y), so a random
    combination is one whenever any exists.
    """
    basis = hom_basis(x, y)
    if not basis:
        return Retraction(RepMorphism.zero(x, y), RepMorphism.zero(y, x)) if y.is_zero() else None
    rng = random.Random(seed)
    trials = [combine(basis, [rng.randint(-9, 9) for _ in basis], x, y) for _ in range(attempts)]
    for r in list(basis) + trials:
        s = section_of(r)
        if s is not None:
            return Retraction(r, s)
    return None


def _known(obj: Representation, pool: Sequence[Representation]) -> bool:
    return any(p.dims == obj.dims and is_isomorphic(p, obj) for p in pool)


def wic_build(generators: Sequence[Representation], max_level: int = 8, seed: int = 0) -> WicTower:
    """Level n+1 adds the kernels of retractions between objects present at level n.

    Levels are not closed under direct sums; only genuinely new
    isomorphism classes are recorded.
    """
    tower = WicTower()
    pool: list[Representation] = []
    level0 = []
    for g in generators:
        if not g.is_zero() and not _known(g, pool):
            pool.append(g)
            level0.append(IdemObject.whole(g))
    tower.append(WicLevel(0, level0))
    for n in range(1, max_level + 1):
        current = list(pool)
        new, provenance = [], []
        for x in current:
            for y in current:
                if x is y:
                    continue
                ret = find_retraction(x, y, seed=seed)
                if ret is None:
                    continue
                obj = ret.kernel_object
                realized = obj.realize()[0]
                if realized.is_zero() or _known(realized, pool):
                    continue
                pool.append(realized)
                new.append(obj)
                provenance.append(ret)
        if not new:
            tower.stable_level = n - 1
            return tower
        tower.append(WicLevel(n, new, provenance))
    return tower


# -- inherited conflations ------------------------------------------------------------

@dataclass(frozen=True)
class IdemPair:
    """Composable morphisms (A,p) -> (B,q) -> (C,r) in the idempotent completion."""

    left: IdemObject
    middle: IdemObject
    right: IdemObject
    inflation: RepMorphism
    deflation: RepMorphism

    def __post_init__(self):
        if not (is_idem_morphism(self.left, self.middle, self.inflation)
                and is_idem_morphism(self.middle, self.right, self.deflation)):
            raise RepresentationError("maps are not morphisms of the completion")


def realize_pair(pair: IdemPair) -> tuple[KCPair, tuple, tuple]:
    """Transport a pair over the completion to the images of its idempotents."""
    la, lr, ls = pair.left.realize()
    ma, mr, ms = pair.middle.realize()
    ra, rr, rs = pair.right.realize()
    kc = KCPair(mr @ pair.inflation @ ls, rr @ pair.deflation @ ms)
    return kc, (ls, ms, rs), (lr, mr, rr)


def inherited_conflation(c: ConflationClass, pair: IdemPair) -> bool:
    """Is the pair a direct summand of a conflation over the carriers?

    The enveloping pair is the realized pair plus the split sequences
    (A,1−p) ↣ (A,1−p) ↠ 0 and 0 ↣ (C,1−r) ↠ (C,1−r); its ends are the
    carriers A and C themselves.
    """
    inner, (ls, ms, rs), (lr, mr, rr) = realize_pair(pair)
    ca, car, _ = pair.left.complement().realize()
    cc, _, ccs = pair.right.complement().realize()
    middle = direct_sum([inner.middle, ca, cc])
    infl = matrix_morphism([pair.left.carrier], [inner.middle, ca, cc],
                           [[inner.inflation @ lr], [car], [None]])
    defl = matrix_morphism([inner.middle, ca, cc], [pair.right.carrier],
                           [[rs @ inner.deflation, None, ccs]])
    diagram = RetractDiagram((ls, middle.injections[0], rs), (lr, middle.projections[0], rr))
    return retract_conflation(c, KCPair(infl, defl), inner, diagram)


def idem_pair_from_summand(pair: KCPair, projections: tuple[RepMorphism, RepMorphism, RepMorphism]) -> IdemPair:
    """Restrict a pair along compatible idempotents on its three terms."""
    p, q, r = projections
    return IdemPair(IdemObject(pair.left, p), IdemObject(pair.middle, q), IdemObject(pair.right, r),
                    q @ pair.inflation @ p, r @ pair.deflation @ q)


__all__ = [
    "IdemObject",
    "IdemPair",
    "IdemSplitting",
    "Retraction",
    "WicLevel",
    "WicTower",
    "find_retraction",
    "idem_hom_basis",
    "idem_pair_from_summand",
    "idem_split_decomposition",
    "inherited_conflation",
    "is_idem_morphism",
    "random_idempotent",
    "realize_pair",
    "wic_build",
]
