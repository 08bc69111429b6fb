"""Independent oracles for the path algebra of 1 <- 2 <- 3.

Indecomposables are interval modules M[i, j] supported on vertices
i..j, with socle at i and top at j. Everything below is combinatorics on
intervals and dimension vectors; none of it calls into the package.
"""

from __future__ import annotations

INTERVALS = {
    "S1": (1, 1),
    "P2": (1, 2),
    "P3": (1, 3),
    "S2": (2, 2),
    "I2": (2, 3),
    "S3": (3, 3),
}
NAMES = tuple(INTERVALS)
ARROWS = ((2, 1), (3, 2))


def dims(name: str) -> tuple[int, int, int]:
    lo, hi = INTERVALS[name]
    return tuple(int(lo <= v <= hi) for v in (1, 2, 3))


def interval_hom(src: tuple[int, int], dst: tuple[int, int]) -> int:
    """Quotients of M[a,b] are M[a',b]; submodules of M[c,d] are M[c,d']; they meet iff a <= c <= b <= d."""
    (a, b), (c, d) = src, dst
    return int(a <= c <= b <= d)


def hom_dim(x: str, y: str) -> int:
    return interval_hom(INTERVALS[x], INTERVALS[y])


def euler_form(x: str, y: str) -> int:
    dx, dy = dims(x), dims(y)
    total = sum(p * q for p, q in zip(dx, dy))
    return total - sum(dx[s - 1] * dy[t - 1] for s, t in ARROWS)


def ext1_dim(x: str, y: str) -> int:
    """Hereditary: dim Ext^1 = dim Hom - <x, y>."""
    return hom_dim(x, y) - euler_form(x, y)


def derived_hom_dim(x: str, y: str, shift: int) -> int:
    return {0: hom_dim(x, y), 1: ext1_dim(x, y)}.get(shift, 0)


def restrict_away_from_1(name: str) -> tuple[int, int] | None:
    """e M for e = e2 + e3: the interval cut down to vertices 2..3."""
    lo, hi = INTERVALS[name]
    return (max(lo, 2), hi) if hi >= 2 else None


def quotient_hom_dim(x: str, y: str) -> int:
    """Hom over e A e, the path algebra of 2 <- 3."""
    rx, ry = restrict_away_from_1(x), restrict_away_from_1(y)
    if rx is None or ry is None:
        return 0
    return interval_hom(rx, ry)


def vanishes_in_quotient(blocks: dict[str, list[list]]) -> bool:
    """A map is zero modulo add S1 iff its image lies in add S1, i.e. its blocks at 2 and 3 vanish."""
    return all(all(v == 0 for row in blocks.get(k, []) for v in row) for k in ("2", "3"))


def dhom_rows(shifts=range(-2, 3)) -> list[tuple[str, str, int, int]]:
    rows = [(x, y, k, derived_hom_dim(x, y, k)) for x in NAMES for y in NAMES for k in shifts]
    return sorted(rows, key=lambda r: (r[0], r[1], r[2]))


def qhom_rows() -> list[tuple[str, str, int, int]]:
    names = [n for n in NAMES if restrict_away_from_1(n) is not None]
    rows = [(x, y, 0, quotient_hom_dim(x, y)) for x in names for y in names]
    return sorted(rows, key=lambda r: (r[0], r[1], r[2]))
