"""Exact rational vectors, matrices and elimination.

Scalars are `fractions.Fraction` throughout: always in lowest terms with a
positive denominator, so equality is structural and every computation in
the core is exact. No floating point enters this module or anything built
on it; the only float arithmetic in the package lives in the quarantined
Lorentz demo.

All containers are immutable (tuples inside), hashable and safe to share
across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError

Rational = Fraction

RationalLike = Union[int, str, Fraction]


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, a "p/q" string or a Fraction to an exact rational.

    Floats are rejected on purpose: silently converting them would smuggle
    binary rounding into the exact core.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"expected a rational (int, 'p/q' string or Fraction), got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {value!r}: {exc}") from None


def format_rational(q: Fraction) -> str:
    """Render as 'p/q', or 'p' when the denominator is 1. Sign sits on p."""
    return str(q)


class RationalVector:
    """Immutable dense vector of rationals."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[RationalLike]) -> None:
        self.entries: tuple[Fraction, ...] = tuple(rational(e) for e in entries)

    @classmethod
    def zero(cls, dim: int) -> "RationalVector":
        return cls([0] * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "RationalVector":
        if not 0 <= index < dim:
            raise InputError(f"unit index {index} out of range for dim {dim}")
        return cls([1 if i == index else 0 for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalVector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "vec(" + ", ".join(format_rational(e) for e in self.entries) + ")"

    def _require_same_dim(self, other: "RationalVector") -> None:
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._require_same_dim(other)
        return RationalVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._require_same_dim(other)
        return RationalVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "RationalVector":
        return RationalVector(-a for a in self.entries)

    def scale(self, c: RationalLike) -> "RationalVector":
        c = rational(c)
        return RationalVector(c * a for a in self.entries)

    def dot(self, other: "RationalVector") -> Fraction:
        self._require_same_dim(other)
        total = Fraction(0)
        for a, b in zip(self.entries, other.entries):
            if a and b:
                total += a * b
        return total

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def primitive(self, orient: bool = False) -> "RationalVector":
        """Scale to integer entries with gcd 1.

        Scaling is by a positive rational, so the ray through the vector is
        unchanged. With orient=True the sign is additionally flipped to make
        the first nonzero entry positive; that is only legitimate for
        direction-free vectors (kernel elements), never for cone rays.
        """
        if self.is_zero():
            return RationalVector.zero(self.dim)
        denom_lcm = 1
        for e in self.entries:
            denom_lcm = denom_lcm * e.denominator // math.gcd(denom_lcm, e.denominator)
        ints = [int(e * denom_lcm) for e in self.entries]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if orient:
            lead = next(v for v in ints if v)
            if lead < 0:
                ints = [-v for v in ints]
        return RationalVector(ints)


class RationalMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[RationalLike]], cols: Optional[int] = None) -> None:
        body = tuple(tuple(rational(e) for e in row) for row in entries)
        if body:
            width = len(body[0])
            for i, row in enumerate(body):
                if len(row) != width:
                    raise InputError(f"row {i}: expected {width} entries, got {len(row)}")
        else:
            if cols is None:
                raise InputError("a matrix with no rows needs an explicit column count")
            width = cols
        self.entries: tuple[tuple[Fraction, ...], ...] = body
        self.rows: int = len(body)
        self.cols: int = width

    @classmethod
    def from_rows(cls, rows: Sequence[RationalVector], cols: Optional[int] = None) -> "RationalMatrix":
        if rows:
            return cls([r.entries for r in rows])
        return cls([], cols=cols)

    @classmethod
    def from_cols(cls, cols: Sequence[RationalVector], dim: Optional[int] = None) -> "RationalMatrix":
        if not cols:
            if dim is None:
                raise InputError("a matrix with no columns needs an explicit row count")
            return cls([[] for _ in range(dim)], cols=0)
        n = cols[0].dim
        for j, c in enumerate(cols):
            if c.dim != n:
                raise InputError(f"column {j}: expected dim {n}, got {c.dim}")
        return cls([[c[i] for c in cols] for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def row(self, i: int) -> RationalVector:
        return RationalVector(self.entries[i])

    def col(self, j: int) -> RationalVector:
        return RationalVector(row[j] for row in self.entries)

    def row_vectors(self) -> list[RationalVector]:
        return [RationalVector(r) for r in self.entries]

    def col_vectors(self) -> list[RationalVector]:
        return [self.col(j) for j in range(self.cols)]

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        return f"matrix({self.rows}x{self.cols})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def matvec(self, v: RationalVector) -> RationalVector:
        if v.dim != self.cols:
            raise InputError(f"matvec dimension mismatch: {self.cols} columns vs vector of dim {v.dim}")
        return RationalVector(
            sum((a * b for a, b in zip(row, v.entries) if a and b), Fraction(0))
            for row in self.entries
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise InputError(f"matmul dimension mismatch: {self.cols} vs {other.rows}")
        ot = other.transpose().entries
        return RationalMatrix(
            [
                [
                    sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                    for col in ot
                ]
                for row in self.entries
            ],
            cols=other.cols,
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shapes differ")
        return RationalMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shapes differ")
        return RationalMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def scale(self, c: RationalLike) -> "RationalMatrix":
        c = rational(c)
        return RationalMatrix([[c * a for a in row] for row in self.entries], cols=self.cols)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise InputError("trace needs a square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def vectorize(self) -> RationalVector:
        """Flatten row-major into a vector of dimension rows*cols."""
        return RationalVector(e for row in self.entries for e in row)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)


def outer(x: RationalVector, phi: RationalVector) -> RationalMatrix:
    """Rank-one matrix x phi^T, the tensor acting as v -> phi(v) * x."""
    return RationalMatrix([[a * b for b in phi.entries] for a in x.entries], cols=phi.dim)


def _rref(rows: Sequence[Sequence[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (reduced rows, pivot column list)."""
    work = [list(r) for r in rows]
    m = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, m) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
        lead = work[r]
        for i in range(m):
            f = work[i][c]
            if f and i != r:
                work[i] = [a - f * b for a, b in zip(work[i], lead)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return work, pivots


def rank(matrix: RationalMatrix) -> int:
    _, pivots = _rref(matrix.entries, matrix.cols)
    return len(pivots)


def solve_linear(matrix: RationalMatrix, rhs: RationalVector) -> Optional[RationalVector]:
    """One exact solution of matrix * x = rhs, or None when inconsistent.

    Free variables are fixed at zero, which makes the returned solution
    deterministic.
    """
    if rhs.dim != matrix.rows:
        raise InputError(f"rhs dim {rhs.dim} does not match {matrix.rows} rows")
    n = matrix.cols
    augmented = [list(row) + [b] for row, b in zip(matrix.entries, rhs.entries)]
    if not augmented:
        return RationalVector.zero(n)
    reduced, pivots = _rref(augmented, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = reduced[i][n]
    return RationalVector(x)


def kernel_basis(matrix: RationalMatrix) -> list[RationalVector]:
    """Basis of the null space, one vector per free column.

    Each basis vector is scaled to integer entries with gcd 1 and first
    nonzero entry positive; vectors come out ordered by their free column.
    """
    n = matrix.cols
    reduced, pivots = _rref(matrix.entries, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -reduced[i][free]
        basis.append(RationalVector(v).primitive(orient=True))
    return basis


def inverse(matrix: RationalMatrix) -> Optional[RationalMatrix]:
    """Exact inverse of a square matrix, or None when singular."""
    if matrix.rows != matrix.cols:
        raise InputError("inverse needs a square matrix")
    n = matrix.rows
    augmented = [
        list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(matrix.entries)
    ]
    reduced, pivots = _rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return RationalMatrix([row[n:] for row in reduced], cols=n)


class Subspace:
    """A linear subspace of an ambient rational space.

    Described by a basis matrix whose columns are the basis vectors; the
    columns must be independent. Coordinate maps go both ways: to_ambient
    sends subspace coordinates to the ambient space, to_coords inverts it
    on members of the span.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: RationalMatrix) -> None:
        if ambient_dim < 1:
            raise InputError("ambient_dim must be at least 1")
        if basis.rows != ambient_dim:
            raise InputError(f"basis columns have dim {basis.rows}, ambient_dim is {ambient_dim}")
        if basis.cols < 1:
            raise InputError("a subspace needs at least one basis vector")
        if rank(basis) != basis.cols:
            raise InputError("basis columns are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_vectors(cls, vectors: Sequence[RationalVector]) -> "Subspace":
        if not vectors:
            raise InputError("a subspace needs at least one basis vector")
        return cls(vectors[0].dim, RationalMatrix.from_cols(list(vectors)))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def basis_vectors(self) -> list[RationalVector]:
        return self.basis.col_vectors()

    def to_ambient(self, coords: RationalVector) -> RationalVector:
        if coords.dim != self.dim:
            raise InputError(f"expected {self.dim} coordinates, got {coords.dim}")
        return self.basis.matvec(coords)

    def to_coords(self, x: RationalVector) -> RationalVector:
        coords = solve_linear(self.basis, x)
        if coords is None:
            raise InputError("vector is not in the subspace")
        return coords

    def contains(self, x: RationalVector) -> bool:
        return solve_linear(self.basis, x) is not None

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"
