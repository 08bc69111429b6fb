"""Exact matrices over the rationals.

Everything downstream (hom spaces, kernels, homotopies) reduces to the
routines here, so arithmetic is exact: entries are ``fractions.Fraction``
and no floating point is ever involved.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction | int


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fraction_to_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class Matrix:
    """Immutable rows x cols matrix with Fraction entries (row-major)."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable[Scalar]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        if data is None:
            zero = Fraction(0)
            self._data = tuple((zero,) * cols for _ in range(rows))
        else:
            table = tuple(tuple(to_fraction(x) for x in row) for row in data)
            if len(table) != rows or any(len(row) != cols for row in table):
                raise ValueError(f"entries do not match shape {rows}x{cols}")
            self._data = table
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, table) -> "Matrix":
        """Trusted constructor: ``table`` is already a tuple of Fraction tuples."""
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, table, None
        return m

    @classmethod
    def of(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "Matrix":
        """Build from nested lists; ``cols`` is needed only when there are no rows."""
        if not rows:
            return cls(0, cols or 0)
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, ([1 if i == j else 0 for j in range(n)] for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> "Matrix":
        return cls(rows, len(columns), ([col[i] for col in columns] for i in range(rows)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "Matrix":
        return cls(rows, cols, ([1 if (r, c) == (i, j) else 0 for c in range(cols)] for r in range(rows)))

    # -- basic access -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self._data for x in row)

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fraction_to_str(x) for x in row) for row in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._data, other._data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self._data, other._data)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(-a for a in row) for row in self._data))

    def __rmul__(self, scalar: Scalar) -> "Matrix":
        c = to_fraction(scalar)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(c * a for a in row) for row in self._data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        zero = Fraction(0)
        out = []
        for row in self._data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz), zero) for col in other_cols))
        return Matrix._raw(self.rows, other.cols, tuple(out))

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.cols, 0)
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self._data)))

    def is_zero(self) -> bool:
        return all(not x for row in self._data for x in row)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), Fraction(0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(len(rows), len(cols), tuple(tuple(self._data[i][j] for j in cols) for i in rows))

    # -- elimination --------------------------------------------------
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        table = [list(row) for row in self._data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if table[i][c]), None)
            if pivot_row is None:
                continue
            table[r], table[pivot_row] = table[pivot_row], table[r]
            lead = table[r][c]
            if lead != 1:
                table[r] = [x / lead for x in table[r]]
            prow = table[r]
            for i in range(self.rows):
                if i != r and table[i][c]:
                    factor = table[i][c]
                    table[i] = [a - factor * b for a, b in zip(table[i], prow)]
            pivots.append(c)
            r += 1
        return Matrix._raw(self.rows, self.cols, tuple(map(tuple, table))), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        table = [list(row) for row in self._data]
        n = self.rows
        result = Fraction(1)
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if table[i][c]), None)
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != c:
                table[c], table[pivot_row] = table[pivot_row], table[c]
                result = -result
            lead = table[c][c]
            result *= lead
            for i in range(c + 1, n):
                if table[i][c]:
                    factor = table[i][c] / lead
                    table[i] = [a - factor * b for a, b in zip(table[i], table[c])]
        return result

    def inverse(self) -> "Matrix | None":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        return mat_solve(self, Matrix.identity(self.rows)) if self.rank() == self.rows else None


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise ValueError("hstack row mismatch")
    return Matrix._raw(r, sum(b.cols for b in blocks), tuple(tuple(x for b in blocks for x in b.row(i)) for i in range(r)))


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise ValueError("vstack column mismatch")
    return Matrix._raw(sum(b.rows for b in blocks), c, tuple(row for b in blocks for row in b))


def block_matrix(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a rectangular grid of compatible blocks."""
    return vstack([hstack(list(row)) for row in grid])


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return Matrix(rows, cols, out)


def mat_solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Return some x with a @ x == b, or None if the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if a.rows != b.rows:
        raise ValueError(f"mat_solve: {a.shape} and {b.shape} have different row counts")
    augmented = hstack([a, b]) if a.rows else Matrix(0, a.cols + b.cols)
    reduced, pivots = augmented.rref()
    if any(p >= a.cols for p in pivots):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        x[p] = list(reduced.row(r)[a.cols:])
    return Matrix(a.cols, b.cols, x)


def mat_kernel(a: Matrix) -> Matrix:
    """Basis of the null space as columns, one per free variable of the RREF."""
    reduced, pivots = a.rref()
    free = [c for c in range(a.cols) if c not in set(pivots)]
    columns = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        columns.append(v)
    return Matrix.from_columns(columns, a.cols)


def mat_image(a: Matrix) -> Matrix:
    """Columns of ``a`` at the pivot positions: a basis of the column space."""
    _, pivots = a.rref()
    return a.submatrix(range(a.rows), pivots)


def mat_cokernel(a: Matrix) -> Matrix:
    """A surjection q with q @ a == 0 and kernel exactly the column space of a."""
    return mat_kernel(a.T).T


def row_basis(vectors: Sequence[Sequence[Scalar]], length: int) -> list[tuple[Fraction, ...]]:
    """Canonical (RREF) basis of the span of ``vectors``."""
    if not vectors:
        return []
    reduced, pivots = Matrix(len(vectors), length, vectors).rref()
    return [reduced.row(i) for i in range(len(pivots))]


def _random_combination(space: Sequence[Matrix], rng: random.Random, bound: int) -> tuple[list[int], Matrix]:
    n = space[0].rows
    coeffs = [rng.randint(-bound, bound) for _ in space]
    total = Matrix.zeros(n, n)
    for c, m in zip(coeffs, space):
        if c:
            total = total + c * m
    return coeffs, total


def _determinant_polynomial_is_zero(space: Sequence[Matrix]) -> bool:
    """Certify symbolically whether det(sum t_i M_i) vanishes identically."""
    import sympy
    from sympy.polys.matrices import DomainMatrix

    n = space[0].rows
    symbols = sympy.symbols(f"t0:{len(space)}")
    domain = sympy.QQ[symbols]
    gens = domain.gens
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = domain.zero
            for g, m in zip(gens, space):
                if m[i, j]:
                    entry += domain.convert(sympy.Rational(m[i, j].numerator, m[i, j].denominator)) * g
            row.append(entry)
        rows.append(row)
    return DomainMatrix(rows, (n, n), domain).det() == domain.zero


def _shared_null_vector(space: Sequence[Matrix]) -> bool:
    stacked = vstack(list(space))
    return stacked.rank() < stacked.cols


def find_invertible_combination(space: Sequence[Matrix], seed: int = 0, attempts: int = 4) -> list[int] | None:
    """Integer coefficients making the combination invertible, or None if none exists.

    Random coefficients from a large range succeed with overwhelming
    probability when an invertible combination exists. A negative answer
    is certified: either a common null vector or a symbolic determinant
    that vanishes identically.
    """
    if not space:
        return None
    n = space[0].rows
    if any(m.shape != (n, n) for m in space):
        raise ValueError("generic invertibility needs square matrices of equal size")
    if n == 0:
        return [0] * len(space)
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs, total = _random_combination(space, rng, 10**6)
        if total.det():
            return coeffs
    if _shared_null_vector(space) or _shared_null_vector([m.T for m in space]):
        return None
    if _determinant_polynomial_is_zero(space):
        return None
    while True:  # the certificate says a combination exists; keep sampling
        coeffs, total = _random_combination(space, rng, 10**12)
        if total.det():
            return coeffs


def generic_invertibility(space: Sequence[Matrix], seed: int = 0) -> bool:
    """True iff some rational combination of ``space`` is invertible."""
    if space and any(m.rows != m.cols for m in space):
        raise ValueError("generic invertibility needs square matrices")
    return find_invertible_combination(space, seed) is not None
