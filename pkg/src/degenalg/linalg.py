"""Exact dense linear algebra over Q and Q(t).

Matrices over Q are eliminated through a fraction-free integer kernel
(compiled extension when available, pure Python otherwise); matrices over
other exact fields go through generic Gaussian elimination with first
nonzero pivot selection.  No tolerances anywhere.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

from .rings import QQ, RationalField, Ring, rat

if os.environ.get("DEGENALG_PURE") == "1":
    from ._echelon_py import fraction_free_echelon

    KERNEL = "pure"
else:
    try:
        from ._echelon import fraction_free_echelon

        KERNEL = "compiled"
    except ImportError:
        from ._echelon_py import fraction_free_echelon

        KERNEL = "pure"


class Inconsistent(ValueError):
    """solve() was given a system with no solution."""


class Singular(ValueError):
    """A square matrix required to be invertible has determinant zero."""


class Matrix:
    """Immutable rectangular matrix over a declared coefficient ring."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring: Ring, rows):
        rows = [list(r) for r in rows]
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("ragged rows")
        else:
            w = 0
        self.ring = ring
        self.rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        self.nrows = len(rows)
        self.ncols = w

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring, nrows, ncols):
        return cls(ring, [[0] * ncols for _ in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.nrows)
                for j in range(self.ncols)
            )
        )

    def __hash__(self):
        raise TypeError("Matrix is unhashable")

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            z = self.ring.zero
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = z
                    for k in range(self.ncols):
                        a = self.rows[i][k]
                        if a != z:
                            acc = acc + a * other.rows[k][j]
                    row.append(acc)
                out.append(row)
            return Matrix(self.ring, out)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(
            self.ring,
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(
            self.ring,
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ],
        )

    def scale(self, c):
        c = self.ring.coerce(c)
        return Matrix(
            self.ring, [[c * x for x in row] for row in self.rows]
        )

    def transpose(self):
        return Matrix(
            self.ring,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
        )

    def apply(self, vec):
        """Matrix times column vector (a plain list)."""
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        vec = [self.ring.coerce(x) for x in vec]
        return [
            sum(
                (self.rows[i][k] * vec[k] for k in range(self.ncols)),
                self.ring.zero,
            )
            for i in range(self.nrows)
        ]

    def is_zero(self):
        return all(
            self.ring.is_zero_elem(x) for row in self.rows for x in row
        )

    def map_entries(self, fn, ring=None):
        return Matrix(ring or self.ring, [[fn(x) for x in row] for row in self.rows])

    def __repr__(self):
        return f"Matrix({self.ring!r}, {self.nrows}x{self.ncols})"


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def _clear_denominators(m: Matrix):
    """Integer rows plus the per-row multiplier applied to reach them."""
    int_rows = []
    mults = []
    for row in m.rows:
        l = 1
        for x in row:
            l = l * x.denominator // gcd(l, x.denominator)
        int_rows.append([int(x * l) for x in row])
        mults.append(l)
    return int_rows, mults


def _echelon_rational(m: Matrix):
    int_rows, mults = _clear_denominators(m)
    rank_, pivots, sign = fraction_free_echelon(int_rows, m.ncols)
    return rank_, pivots, sign, int_rows, mults


def _echelon_generic(m: Matrix):
    """Gaussian elimination over an arbitrary exact field; returns
    (rank, pivots, echelon rows over the field)."""
    rows = [list(r) for r in m.rows]
    zero = m.ring.zero
    rank_ = 0
    pivots = []
    for col in range(m.ncols):
        piv = -1
        for i in range(rank_, m.nrows):
            if rows[i][col] != zero:
                piv = i
                break
        if piv < 0:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        pr = rows[rank_]
        for i in range(rank_ + 1, m.nrows):
            f = rows[i][col]
            if f != zero:
                f = f / pr[col]
                ri = rows[i]
                ri[col] = zero
                for j in range(col + 1, m.ncols):
                    ri[j] = ri[j] - f * pr[j]
        pivots.append(col)
        rank_ += 1
        if rank_ == m.nrows:
            break
    return rank_, pivots, rows[:rank_]


def _echelon_field_rows(m: Matrix):
    """(rank, pivots, echelon rows over the field), via the fast integer
    path for rational matrices."""
    if isinstance(m.ring, RationalField):
        rank_, pivots, _sign, int_rows, _m = _echelon_rational(m)
        rows = [[Fraction(x) for x in int_rows[i]] for i in range(rank_)]
        return rank_, pivots, rows
    return _echelon_generic(m)


def rank(m: Matrix) -> int:
    if isinstance(m.ring, RationalField):
        return _echelon_rational(m)[0]
    return _echelon_generic(m)[0]


def det(m: Matrix):
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if m.nrows == 0:
        return m.ring.one
    if isinstance(m.ring, RationalField):
        rank_, pivots, sign, int_rows, mults = _echelon_rational(m)
        if rank_ < m.nrows:
            return Fraction(0)
        d = Fraction(sign * int_rows[rank_ - 1][pivots[-1]])
        for l in mults:
            d /= l
        return d
    # generic: expansion via elimination with division, tracking pivots
    rows = [list(r) for r in m.rows]
    zero, one = m.ring.zero, m.ring.one
    d = one
    for col in range(m.ncols):
        piv = -1
        for i in range(col, m.nrows):
            if rows[i][col] != zero:
                piv = i
                break
        if piv < 0:
            return zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            d = -d
        pr = rows[col]
        d = d * pr[col]
        for i in range(col + 1, m.nrows):
            f = rows[i][col]
            if f != zero:
                f = f / pr[col]
                for j in range(col, m.ncols):
                    rows[i][j] = rows[i][j] - f * pr[j]
    return d


def kernel_basis(m: Matrix):
    """Basis of the right kernel as a list of column vectors."""
    rank_, pivots, rows = _echelon_field_rows(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    zero = m.ring.zero
    basis = []
    for f in free:
        x = [zero] * m.ncols
        x[f] = m.ring.one
        for i in range(rank_ - 1, -1, -1):
            p = pivots[i]
            s = zero
            for j in range(p + 1, m.ncols):
                if x[j] != zero and rows[i][j] != zero:
                    s = s + rows[i][j] * x[j]
            x[p] = -s / rows[i][p]
        basis.append(x)
    return basis


def solve(m: Matrix, rhs):
    """One particular solution of m*x = rhs; raises Inconsistent."""
    if len(rhs) != m.nrows:
        raise ValueError("shape mismatch")
    aug = Matrix(
        m.ring,
        [list(m.rows[i]) + [rhs[i]] for i in range(m.nrows)],
    )
    rank_, pivots, rows = _echelon_field_rows(aug)
    if pivots and pivots[-1] == m.ncols:
        raise Inconsistent("no solution")
    zero = m.ring.zero
    x = [zero] * m.ncols
    for i in range(rank_ - 1, -1, -1):
        p = pivots[i]
        s = rows[i][m.ncols]
        for j in range(p + 1, m.ncols):
            if x[j] != zero and rows[i][j] != zero:
                s = s - rows[i][j] * x[j]
        x[p] = s / rows[i][p]
    return x


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    if det(m) == m.ring.zero:
        raise Singular("matrix is singular")
    cols = []
    for j in range(m.ncols):
        e = [m.ring.one if i == j else m.ring.zero for i in range(m.nrows)]
        cols.append(solve(m, e))
    return Matrix(m.ring, cols).transpose()


def linalg(op: str, m: Matrix, rhs=None):
    """Dispatcher matching the library surface: rank, kernel_basis, det,
    solve."""
    if op == "rank":
        return rank(m)
    if op == "kernel_basis":
        return kernel_basis(m)
    if op == "det":
        return det(m)
    if op == "solve":
        return solve(m, rhs)
    raise ValueError(f"unknown linalg op {op!r}")


def rational_matrix(rows) -> Matrix:
    return Matrix(QQ, [[rat(x) for x in r] for r in rows])
