"""
Dense matrices over exact commutative rings.

Entries are any objects supporting ``+``, ``-``, ``*`` and ``==`` with each
other and with Python ints (CycInt, Polynomial, CenterElement, ...).  A
matrix remembers a zero element so that empty sums stay in the right ring.
Elimination is fraction-free (Bareiss) and only divides exactly, which is
all an integral domain like R[t] allows.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Sequence

from .exceptions import RingMismatchError


class Matrix:
    __slots__ = ("rows", "zero", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], zero) -> None:
        self.rows = [list(r) for r in rows]
        self.zero = zero
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, n: int, m: int, zero) -> Matrix:
        return cls([[zero] * m for _ in range(n)], zero)

    @classmethod
    def identity(cls, n: int, zero) -> Matrix:
        one = zero + 1
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], zero)

    @classmethod
    def scalar(cls, n: int, value, zero) -> Matrix:
        return cls([[value if i == j else zero for j in range(n)] for i in range(n)], zero)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __setitem__(self, idx, value) -> None:
        i, j = idx
        self.rows[i][j] = value

    def copy(self) -> Matrix:
        return Matrix(self.rows, self.zero)

    def map(self, fn: Callable) -> Matrix:
        rows = [[fn(a) for a in r] for r in self.rows]
        return Matrix(rows, fn(self.zero))

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> Matrix:
        return Matrix([list(col) for col in zip(*self.rows)], self.zero)

    def _check_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise RingMismatchError(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other):
        if isinstance(other, Matrix):
            self._check_shape(other)
            return Matrix(
                [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.zero
            )
        # scalars embed as multiples of the identity
        return self + Matrix.scalar(self.nrows, self.zero + other, self.zero)

    __radd__ = __add__

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise RingMismatchError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.transpose().rows
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                row = []
                for col in cols:
                    acc = self.zero
                    for k, a in nz:
                        b = col[k]
                        if b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out, self.zero)
        return Matrix([[a * other for a in r] for r in self.rows], self.zero)

    def __rmul__(self, other):
        return Matrix([[other * a for a in r] for r in self.rows], self.zero)

    def __matmul__(self, other: Matrix) -> Matrix:
        return self * other

    def __pow__(self, n: int) -> Matrix:
        result = Matrix.identity(self.nrows, self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def scalar_value(self):
        """The common diagonal value if this is a scalar matrix, else None."""
        if self.nrows != self.ncols or self.nrows == 0:
            return None
        s = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if (i == j and a != s) or (i != j and a):
                    return None
        return s

    def is_scalar(self) -> bool:
        return self.scalar_value() is not None

    def __repr__(self) -> str:
        rows = ",\n".join("  [" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return "Matrix([\n" + rows + "\n])"


def hstack(a: Matrix, b: Matrix) -> Matrix:
    return Matrix([r + s for r, s in zip(a.rows, b.rows)], a.zero)


def block_matrix(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of equally sized blocks."""
    zero = blocks[0][0].zero
    rows = []
    for brow in blocks:
        for i in range(brow[0].nrows):
            row = []
            for blk in brow:
                row.extend(blk.rows[i])
            rows.append(row)
    return Matrix(rows, zero)


def det_bareiss(A: Matrix):
    """Determinant by fraction-free elimination; entries need ``exact_div``."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return A.zero + 1
    M = [list(r) for r in A.rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return A.zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                v = M[i][j] * pivot
                if mik and M[k][j]:
                    v = v - mik * M[k][j]
                if prev is not None and v:
                    v = v.exact_div(prev)
                M[i][j] = v
            M[i][k] = A.zero
        prev = pivot
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def solve_exact(A: Matrix, B: Matrix) -> Matrix:
    """Solve A Y = B over an integral domain when the solution is integral.

    Forward elimination is Bareiss on the augmented matrix; back substitution
    divides exactly, which succeeds whenever Y has entries in the ring (for
    instance when det A is a unit).
    """
    n = A.nrows
    if n != A.ncols or B.nrows != n:
        raise ValueError("solve_exact needs square A and matching B")
    m = B.ncols
    M = [list(a) + list(b) for a, b in zip(A.rows, B.rows)]
    width = n + m
    prev = None
    for k in range(n):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                raise ZeroDivisionError("singular matrix")
            M[k], M[swap] = M[swap], M[k]
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, width):
                v = M[i][j] * pivot
                if mik and M[k][j]:
                    v = v - mik * M[k][j]
                if prev is not None and v:
                    v = v.exact_div(prev)
                M[i][j] = v
            M[i][k] = A.zero
        prev = pivot
    Y = [[A.zero] * m for _ in range(n)]
    for c in range(m):
        for i in range(n - 1, -1, -1):
            acc = M[i][n + c]
            for j in range(i + 1, n):
                if M[i][j] and Y[j][c]:
                    acc = acc - M[i][j] * Y[j][c]
            Y[i][c] = acc.exact_div(M[i][i]) if acc else A.zero
    return Matrix(Y, A.zero)


def det_leibniz(A: Matrix):
    """Permutation-expansion determinant; division-free, for tiny matrices."""
    n = A.nrows
    total = A.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = A.zero + 1
        for i in range(n):
            term = term * A.rows[i][perm[i]]
            if not term:
                break
        if term:
            total = total - term if inversions % 2 else total + term
    return total
