"""Exact dense linear algebra over a prime field or the rationals.

Everything else in the package reduces to the operations in this module.
Matrices are immutable-by-convention wrappers around numpy arrays: int64
entries reduced mod p for prime fields (with an object-dtype fallback for
primes too large for safe int64 products), `fractions.Fraction` entries for
the rationals.  All arithmetic is exact; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ShapeMismatch

# Above this, n*p^2 may not fit in int64 for desk-scale n; fall back to objects.
_INT64_SAFE_PRIME = 2**25


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field F_p or the rationals (p is None)."""

    p: int | None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def _fast(self) -> bool:
        return self.p is not None and self.p < _INT64_SAFE_PRIME

    # scalar helpers -------------------------------------------------------

    def scalar(self, value) -> int | Fraction:
        """Canonical form of a scalar (int in [0,p) or a Fraction)."""
        if self.p is not None:
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def scalar_from_string(self, text: str):
        text = text.strip()
        if self.p is not None:
            if "/" in text:
                num, den = text.split("/")
                return (int(num) * pow(int(den), -1, self.p)) % self.p
            return int(text) % self.p
        return Fraction(text)

    def scalar_to_string(self, value) -> str:
        return str(value)

    def inv_scalar(self, value):
        if self.p is not None:
            return pow(int(value) % self.p, -1, self.p)
        return Fraction(1) / value

    def neg_scalar(self, value):
        if self.p is not None:
            return (-int(value)) % self.p
        return -value

    def random_scalar(self, rng):
        if self.p is not None:
            return rng.randrange(self.p)
        return Fraction(rng.randrange(-9, 10))

    # array plumbing -------------------------------------------------------

    def _dtype(self):
        return np.int64 if self._fast else object

    def _reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is None:
            return a
        return a % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self._dtype() is object:
            return np.zeros((rows, cols), dtype=object)
        return np.zeros((rows, cols), dtype=np.int64)

    def eye_array(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = 1
        return a


class Mat:
    """A rows x cols matrix over a field, entries in canonical form."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, array: np.ndarray):
        a = np.asarray(array)
        if a.ndim != 2:
            raise ShapeMismatch(f"expected a 2d array, got shape {a.shape}")
        if field._fast:
            a = np.asarray(a, dtype=np.int64) % field.p
        else:
            b = np.empty(a.shape, dtype=object)
            for i in range(a.shape[0]):
                for j in range(a.shape[1]):
                    b[i, j] = field.scalar(a[i, j])
            a = b
        self.field = field
        self.a = a

    # constructors ---------------------------------------------------------

    @staticmethod
    def from_rows(field: Field, rows: list[list]) -> "Mat":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged row lengths")
        a = field.zeros(nrows, ncols)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                a[i, j] = field.scalar(v)
        return Mat._wrap(field, a)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        return Mat._wrap(field, field.zeros(rows, cols))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        return Mat._wrap(field, field.eye_array(n))

    @staticmethod
    def _wrap(field: Field, array: np.ndarray) -> "Mat":
        m = Mat.__new__(Mat)
        m.field = field
        m.a = array
        return m

    # views ------------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def entries(self) -> list:
        """Row-major list of canonical scalars."""
        return [self.a[i, j] for i in range(self.rows) for j in range(self.cols)]

    def tolists(self) -> list[list]:
        return [[self.a[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def copy(self) -> "Mat":
        return Mat._wrap(self.field, self.a.copy())

    def is_zero(self) -> bool:
        return self.rows == 0 or self.cols == 0 or not np.any(self.a != 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.a == other.a))
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.entries())))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.tolists()})"

    # arithmetic -------------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        if self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        prod = np.dot(self.a, other.a)
        return Mat._wrap(self.field, self.field._reduce(prod))

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Mat._wrap(self.field, self.field._reduce(self.a + other.a))

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Mat._wrap(self.field, self.field._reduce(self.a - other.a))

    def __neg__(self) -> "Mat":
        return Mat._wrap(self.field, self.field._reduce(-self.a))

    def scale(self, c) -> "Mat":
        c = self.field.scalar(c)
        return Mat._wrap(self.field, self.field._reduce(self.a * c))

    def transpose(self) -> "Mat":
        return Mat._wrap(self.field, self.a.T.copy())


def hstack(mats: list[Mat]) -> Mat:
    field = mats[0].field
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeMismatch("hstack with differing row counts")
    return Mat._wrap(field, np.hstack([m.a for m in mats]))


def vstack(mats: list[Mat]) -> Mat:
    field = mats[0].field
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeMismatch("vstack with differing column counts")
    return Mat._wrap(field, np.vstack([m.a for m in mats]))


def block_diag(field: Field, mats: list[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    a = field.zeros(rows, cols)
    r = c = 0
    for m in mats:
        a[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Mat._wrap(field, a)


# ---------------------------------------------------------------------------
# Gaussian elimination


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; row space preserved."""
    field = m.field
    a = m.a.copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col != 0)[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], :] = a[[i, r], :]
        inv = field.inv_scalar(a[r, c])
        a[r, :] = field._reduce(a[r, :] * inv)
        other = a[:, c].copy()
        other[r] = 0
        if np.any(other != 0):
            a = field._reduce(a - np.outer(other, a[r, :]))
        pivots.append(c)
        r += 1
    return Mat._wrap(field, a), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> Mat:
    """Matrix whose columns form a basis of the null space of m."""
    field = m.field
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = field.zeros(m.cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = field.neg_scalar(red.a[i, f])
    return Mat._wrap(field, basis)


def solve_linear(a: Mat, b: Mat) -> Mat | None:
    """Some x with a @ x = b, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve with {a.shape} vs rhs {b.shape}")
    field = a.field
    red, pivots = rref(hstack([a, b]))
    if any(p >= a.cols for p in pivots):
        return None
    x = field.zeros(a.cols, b.cols)
    for i, pc in enumerate(pivots):
        x[pc, :] = red.a[i, a.cols :]
    return Mat._wrap(field, x)


def column_space_basis(m: Mat) -> Mat:
    """Columns of m restricted to a maximal independent subset."""
    _, pivots = rref(m)
    cols = [m.a[:, [c]] for c in pivots]
    if not cols:
        return Mat.zeros(m.field, m.rows, 0)
    return Mat._wrap(m.field, np.hstack(cols))


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def invert(m: Mat) -> Mat | None:
    if m.rows != m.cols:
        return None
    x = solve_linear(m, Mat.identity(m.field, m.rows))
    if x is None:
        return None
    # a square solve can succeed on singular systems only if rhs is consistent;
    # verify both sides to certify a genuine inverse
    if (m @ x) != Mat.identity(m.field, m.rows):
        return None
    return x


def in_column_span(basis: Mat, vec: Mat) -> Mat | None:
    """Coordinates of vec in the given column basis, or None."""
    return solve_linear(basis, vec)
