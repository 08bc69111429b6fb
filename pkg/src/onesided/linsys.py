"""Linear equations whose unknowns are morphisms.

Many constructions (chain maps, homotopies, lifts) amount to finding
morphisms in given hom spaces subject to linear identities. Unknowns are
expanded in hom bases and every identity is flattened into scalar rows.
"""

from __future__ import annotations

from typing import Callable, Hashable, Sequence

from .linalg import Matrix, mat_kernel, mat_solve
from .quiver import RepMorphism, Representation, combine, hom_basis

Term = tuple[Hashable, Callable[[RepMorphism], RepMorphism]]


class MorphismSystem:
    """Collects unknown morphisms and linear equations ``sum of terms = rhs``."""

    def __init__(self):
        self._unknowns: dict[Hashable, tuple[Representation, Representation, tuple[RepMorphism, ...]]] = {}
        self._equations: list[tuple[list[Term], RepMorphism]] = []

    def unknown(self, key: Hashable, src: Representation, dst: Representation) -> Hashable:
        if key in self._unknowns:
            raise KeyError(f"unknown {key!r} declared twice")
        self._unknowns[key] = (src, dst, hom_basis(src, dst))
        return key

    def equation(self, terms: Sequence[Term], rhs: RepMorphism) -> None:
        """Each term is (unknown key, linear map applied to that unknown)."""
        self._equations.append((list(terms), rhs))

    def _matrix(self) -> tuple[Matrix, list[tuple[Hashable, int]]]:
        columns_index = [(k, i) for k, (_, _, basis) in self._unknowns.items() for i in range(len(basis))]
        height = sum(len(rhs.flat()) for _, rhs in self._equations)
        columns = []
        for key, i in columns_index:
            b = self._unknowns[key][2][i]
            col = []
            for terms, rhs in self._equations:
                acc = None
                for k, fn in terms:
                    if k == key:
                        value = fn(b)
                        acc = value if acc is None else acc + value
                col.extend(acc.flat() if acc is not None else (0,) * len(rhs.flat()))
            columns.append(col)
        return Matrix.from_columns(columns, height), columns_index

    def _assemble(self, coeffs) -> dict[Hashable, RepMorphism]:
        out, pos = {}, 0
        for key, (src, dst, basis) in self._unknowns.items():
            out[key] = combine(basis, coeffs[pos:pos + len(basis)], src, dst)
            pos += len(basis)
        return out

    def solve(self) -> dict[Hashable, RepMorphism] | None:
        """One solution (free coefficients set to zero), or None if inconsistent."""
        a, _ = self._matrix()
        rhs = [x for _, r in self._equations for x in r.flat()]
        if a.cols == 0:
            return self._assemble([]) if not any(rhs) else None
        sol = mat_solve(a, Matrix.from_columns([rhs], len(rhs)))
        return None if sol is None else self._assemble(sol.column(0))

    def solution_space(self) -> list[dict[Hashable, RepMorphism]]:
        """Basis of the solutions of the homogeneous system."""
        a, _ = self._matrix()
        if a.cols == 0:
            return []
        kernel = mat_kernel(a)
        return [self._assemble(kernel.column(j)) for j in range(kernel.cols)]
