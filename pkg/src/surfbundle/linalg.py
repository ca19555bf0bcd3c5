"""Exact rational matrices and canonical subspaces.

Everything downstream (symplectic checks, Betti numbers, fixed-space
extraction) reduces to exact linear algebra over the rationals.  Entries are
``fractions.Fraction`` throughout, so arithmetic is exact and intermediate
growth is controlled by automatic gcd reduction; no floating point is used
anywhere in this module.

A subspace is always stored in reduced row echelon form with pivot columns
ascending.  RREF is unique for a given row space, which makes the
representation canonical: two computations producing the same subspace
produce structurally identical ``Subspace`` values, and equality is plain
field comparison.

>>> m = Matrix([[1, 2], [2, 4]])
>>> rank(m)
1
>>> kernel_basis(m).dim
1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def fvec(values: Iterable) -> Vector:
    """Coerce an iterable of numbers to an exact rational vector."""
    return tuple(Fraction(v) for v in values)


class Matrix:
    """Immutable matrix with exact rational entries.

    Rows and columns must both be at least 1.  Instances are hashable and
    compare by entries, so they can key dictionaries (the product
    deduplication in the word search relies on this).
    """

    __slots__ = ("entries", "_hash")

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(fvec(r) for r in rows)
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("matrix rows must all have the same length")
        self.entries: tuple[Vector, ...] = data
        self._hash = None

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[_ZERO] * cols for _ in range(rows)])

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for r in self.entries for e in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols} [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} times {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        return Matrix([[sum(a * b for a, b in zip(row, col) if a) or _ZERO
                        for col in cols] for row in self.entries])

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product."""
        vec = fvec(v)
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != column count {self.cols}")
        return tuple(sum(a * b for a, b in zip(row, vec) if a) or _ZERO
                     for row in self.entries)

    def scaled(self, s) -> "Matrix":
        f = Fraction(s)
        return Matrix([[f * a for a in r] for r in self.entries])

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        work = [list(r) + [_ONE if i == j else _ZERO for j in range(n)]
                for i, r in enumerate(self.entries)]
        for col in range(n):
            piv = next((i for i in range(col, n) if work[i][col]), None)
            if piv is None:
                raise ValueError("matrix is singular")
            work[col], work[piv] = work[piv], work[col]
            inv = _ONE / work[col][col]
            work[col] = [x * inv for x in work[col]]
            for i in range(n):
                if i != col and work[i][col]:
                    f = work[i][col]
                    work[i] = [x - f * y for x, y in zip(work[i], work[col])]
        return Matrix([r[n:] for r in work])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        work = [list(r) for r in self.entries]
        sign = 1
        acc = _ONE
        for col in range(n):
            piv = next((i for i in range(col, n) if work[i][col]), None)
            if piv is None:
                return _ZERO
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                sign = -sign
            p = work[col][col]
            acc *= p
            for i in range(col + 1, n):
                if work[i][col]:
                    f = work[i][col] / p
                    work[i] = [x - f * y for x, y in zip(work[i], work[col])]
        return acc if sign > 0 else -acc

    def pow(self, k: int) -> "Matrix":
        """Integer power; negative exponents go through the inverse."""
        if self.rows != self.cols:
            raise ValueError("powers require a square matrix")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Matrix.identity(self.rows)
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")


def vstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("vstack of no matrices")
    if any(m.cols != mats[0].cols for m in mats):
        raise ValueError("vstack requires equal column counts")
    rows = []
    for m in mats:
        rows.extend(m.entries)
    return Matrix(rows)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("hstack of no matrices")
    if any(m.rows != mats[0].rows for m in mats):
        raise ValueError("hstack requires equal row counts")
    return Matrix([sum((list(m.entries[i]) for m in mats), [])
                   for i in range(mats[0].rows)])


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """a·b·a⁻¹·b⁻¹."""
    return a * b * a.inverse() * b.inverse()


def _rref(rows: list[list[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = _ONE / lead
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                top = rows[r]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], top)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form of ``m`` (zero rows kept) and its pivot columns."""
    rows, pivots = _rref([list(r) for r in m.entries], m.cols)
    rows = rows + [[_ZERO] * m.cols for _ in range(m.rows - len(rows))]
    return Matrix(rows), tuple(pivots)


def rank(m: Matrix) -> int:
    _, pivots = _rref([list(r) for r in m.entries], m.cols)
    return len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n in canonical (RREF) form.

    ``basis`` rows are echelonized with leading 1 at ``pivot_cols``; the zero
    subspace has an empty basis.  Canonical form means structural equality is
    subspace equality.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]
    pivot_cols: tuple[int, ...]

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            vec = [Fraction(x) for x in v]
            if len(vec) != ambient_dim:
                raise ValueError(
                    f"vector length {len(vec)} != ambient dimension {ambient_dim}")
            rows.append(vec)
        if ambient_dim <= 0:
            raise ValueError("ambient dimension must be positive")
        reduced, pivots = _rref(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(
            ambient_dim,
            [[_ONE if i == j else _ZERO for j in range(ambient_dim)]
             for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after elimination against the basis."""
        vec = list(fvec(v))
        if len(vec) != self.ambient_dim:
            raise ValueError(
                f"vector length {len(vec)} != ambient dimension {self.ambient_dim}")
        for row, p in zip(self.basis, self.pivot_cols):
            f = vec[p]
            if f:
                vec = [x - f * y if y else x for x, y in zip(vec, row)]
        return tuple(vec)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def non_pivot_cols(self) -> tuple[int, ...]:
        taken = set(self.pivot_cols)
        return tuple(c for c in range(self.ambient_dim) if c not in taken)


def membership(v: Sequence, s: Subspace) -> bool:
    """True iff ``v`` lies in the span of ``s``."""
    return s.contains(v)


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of the right kernel {x : m·x = 0}."""
    reduced, pivots = _rref([list(r) for r in m.entries], m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    vectors = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for k, p in enumerate(pivots):
            v[p] = -reduced[k][f]
        vectors.append(v)
    return Subspace.from_vectors(m.cols, vectors)


def image_basis(m: Matrix) -> Subspace:
    """Canonical basis of the column space."""
    return Subspace.from_vectors(m.rows, m.columns())


def subspace_sum(spaces: Sequence[Subspace]) -> Subspace:
    """Span of the union of the given subspaces."""
    if not spaces:
        raise ValueError("sum of no subspaces")
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise ValueError("ambient dimension mismatch")
    vectors = [v for s in spaces for v in s.basis]
    return Subspace.from_vectors(n, vectors)


def _intersect_pair(u: Subspace, v: Subspace) -> Subspace:
    # Zassenhaus: RREF [[U|U],[V|0]]; rows with zero left half span U∩V on the right.
    n = u.ambient_dim
    rows = [list(b) + list(b) for b in u.basis]
    rows += [list(b) + [_ZERO] * n for b in v.basis]
    reduced, _ = _rref(rows, 2 * n)
    inter = [r[n:] for r in reduced if not any(r[:n])]
    return Subspace.from_vectors(n, inter)


def subspace_intersection(spaces: Sequence[Subspace]) -> Subspace:
    """Intersection of the given subspaces."""
    if not spaces:
        raise ValueError("intersection of no subspaces")
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise ValueError("ambient dimension mismatch")
    return reduce(_intersect_pair, spaces)
