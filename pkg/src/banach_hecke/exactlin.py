"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction` throughout; nothing in the package
ever touches a float.  This module adds the pieces the standard library lacks:
a small immutable rational matrix, fraction-free rank, subspace intersection
dimensions, Smith normal form over the integers, and an exact feasibility LP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "INF",
    "QMatrix",
    "as_fraction",
    "as_vector",
    "format_fraction",
    "vp",
    "rank",
    "intersect_dim",
    "solve",
    "det",
    "smith_diagonal",
    "snf_p_valuations",
    "lp_feasible",
    "DimensionMismatch",
    "SingularMatrix",
    "DenominatorError",
]


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class DenominatorError(ValueError):
    """Raised when an entry has a denominator that is not a power of p."""


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and strings like ``"3"``, ``"-1/2"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def as_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def format_fraction(x) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _Infinity:
    """Valuation of zero: larger than every rational and absorbing under +."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF"


INF = _Infinity()


def vp(x, p: int):
    """p-adic valuation of a rational; ``INF`` for zero."""
    x = as_fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [as_vector(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return QMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)])


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale every row by the lcm of its denominators."""
    out = []
    for r in rows:
        r = as_vector(r)
        m = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * m) for x in r])
    return out


def _bareiss_rank(a: list[list[int]]) -> int:
    # fraction-free Gaussian elimination; a is consumed
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rank(m: QMatrix | Sequence[Sequence]) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    rows = m.to_rows() if isinstance(m, QMatrix) else list(m)
    if not rows:
        return 0
    return _bareiss_rank(_integer_rows(rows))


def intersect_dim(a: Sequence[Sequence], b: Sequence[Sequence]) -> int:
    """dim(span a ∩ span b) for two lists of vectors in the same ambient space."""
    dims = {len(v) for v in list(a) + list(b)}
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors of different lengths: {sorted(dims)}")
    return rank(a) + rank(b) - rank(list(a) + list(b))


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution x of a·x = b, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    rows = [list(as_vector(r)) + [as_fraction(y)] for r, y in zip(a, b)]
    if len(rows) != len(b):
        raise DimensionMismatch("row count and right-hand side differ")
    ncols = len(rows[0]) - 1 if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return tuple(x)


def det(m: QMatrix) -> Fraction:
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = m.to_rows()
    n = m.rows
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def smith_diagonal(a: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix (nonnegative,
    each dividing the next).  Zero invariants are included for singular input.
    """
    m = [list(map(int, r)) for r in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if m[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = m[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                qt, rem = divmod(m[i][t], piv)
                if qt:
                    m[i] = [x - qt * y for x, y in zip(m[i], m[t])]
                if rem:
                    dirty = True
            for j in range(t + 1, ncols):
                qt, rem = divmod(m[t][j], piv)
                if qt:
                    for r in m:
                        r[j] -= qt * r[t]
                if rem:
                    dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                            if m[i][j] % piv), None)
                if bad is None:
                    break
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(m[i][t]), i, t) for i in range(t, nrows) if m[i][t]]
            cand += [(abs(m[t][j]), t, j) for j in range(t, ncols) if m[t][j]]
            _, i, j = min(cand)
            m[t], m[i] = m[i], m[t]
            for r in m:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(m[t][t]))
        t += 1
    diag += [0] * (min(nrows, ncols) - len(diag))
    return diag


def snf_p_valuations(m: QMatrix, p: int) -> tuple[int, ...]:
    """p-adic valuations of the elementary divisors of a nonsingular matrix
    whose entries have p-power denominators, sorted decreasing."""
    if m.rows != m.cols:
        raise DimensionMismatch("snf_p_valuations needs a square matrix")
    k = 0
    for x in m.entries:
        d = x.denominator
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if d != 1:
            raise DenominatorError(f"entry {x} has a denominator prime to {p}")
        k = max(k, e)
    scale = p ** k
    ints = [[int(x * scale) for x in m.row(i)] for i in range(m.rows)]
    diag = smith_diagonal(ints)
    if any(d == 0 for d in diag):
        raise SingularMatrix("matrix is singular")
    return tuple(sorted((vp(d, p) - k for d in diag), reverse=True))


def lp_feasible(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Exact phase-one simplex: return x >= 0 with a·x = b, or None.

    Bland's rule keeps it cycle-free.  Sizes here are tiny (tens of columns).
    """
    a = [list(as_vector(r)) for r in a]
    b = list(as_vector(b))
    m = len(a)
    n = len(a[0]) if a else 0
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
    # tableau with artificial columns n..n+m-1
    tab = [a[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # objective: minimise the sum of artificials -> reduced costs row
    cost = [-sum(tab[i][j] for i in range(m)) for j in range(n)] + [Fraction(0)] * m
    cost.append(-sum(b))
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen in phase one
            break
        r = best[1]
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[r])]
        basis[r] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][-1]
    return tuple(x)
