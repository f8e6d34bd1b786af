"""Brute-force Satake coefficients for GL(n) over Q_p.

c(lam, mu) counts the cosets n*N_0 (n lower unitriangular, entries in
Q_p/Z_p) for which t_lam * n lies in U_0 t_mu U_0, i.e. whose Cartan
invariants (elementary divisor valuations) equal mu.  The entries of row i
only matter modulo Z_p, and an entry of valuation below -(lam_i - min(mu))
already forces an entry of t_lam * n below the smallest invariant, so each
row ranges over a finite set.  The depth m caps the denominators at p^m;
counts are required to agree at depths m and m+1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import QMatrix, snf_p_valuations
from .scalars import LaurentPoly

__all__ = [
    "CountResult",
    "Unstable",
    "JobTooLarge",
    "InterpolationError",
    "cartan_invariants",
    "count_c",
    "count_c_unpruned",
    "interpolate_polynomial",
    "degree_bound",
    "first_primes",
]

MAX_COORD = 4
MAX_N = 4
MAX_JOB = 3_000_000


class Unstable(RuntimeError):
    pass


class JobTooLarge(RuntimeError):
    pass


class InterpolationError(ArithmeticError):
    pass


def cartan_invariants(g: QMatrix, p: int) -> tuple[int, ...]:
    """Elementary divisor valuations of g, decreasing."""
    return snf_p_valuations(g, p)


def _vp_int(a: int, p: int) -> int:
    if a == 0:
        return 1 << 30
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n) if m[0][j])


def _invariants_fast(a: list[list[int]], p: int, shift: int, det_val: int) -> tuple[int, ...]:
    """Elementary divisor valuations of an integer matrix via determinantal
    divisors d_k = min valuation of k x k minors; ``shift`` is subtracted from
    each invariant and ``det_val`` is the known valuation of the determinant."""
    n = len(a)
    d = [0]
    for k in range(1, n):
        best = 1 << 30
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                v = _vp_int(_det([[a[r][c] for c in cols] for r in rows]), p)
                if v < best:
                    best = v
                    if best == d[-1]:
                        break
            if best == d[-1]:
                break
        d.append(best)
    d.append(det_val)
    inv = [d[k] - d[k - 1] - shift for k in range(1, n + 1)]
    return tuple(sorted(inv, reverse=True))


def _check_job(lam: Sequence[int], mu: Sequence[int]):
    if len(lam) != len(mu):
        raise ValueError("lambda and mu have different lengths")
    if len(lam) > MAX_N:
        raise JobTooLarge(f"n={len(lam)} exceeds {MAX_N}")
    if any(abs(x) > MAX_COORD for x in (*lam, *mu)):
        raise JobTooLarge(f"coordinates are limited to |x| <= {MAX_COORD}")
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise ValueError(f"mu={tuple(mu)} is not antidominant (decreasing)")


def _normalize(lam, mu) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Translate by a central cocharacter so that min(mu) = 0; counts are
    unchanged since t_c is central and shifts every invariant by c."""
    lam, mu = tuple(int(x) for x in lam), tuple(int(x) for x in mu)
    if len(lam) != len(mu) or not mu:
        raise ValueError("lambda and mu have different lengths")
    c = min(mu)
    return tuple(x - c for x in lam), tuple(x - c for x in mu)


def _ranges(lam, mu, m: int) -> tuple[int, ...]:
    lo = min(mu)
    return tuple(max(0, min(m, li - lo)) for li in lam)


def _enumerate(lam, mu, p: int, ks: tuple[int, ...]) -> int:
    n = len(lam)
    target = tuple(mu)
    shift = max(ks)
    scale = p ** shift
    size = 1
    for i, k in enumerate(ks):
        size *= (p ** k) ** i
    if size > MAX_JOB:
        raise JobTooLarge(f"enumeration of {size} representatives exceeds the cap {MAX_JOB}")
    det_val = sum(lam) + n * shift
    # row i: p^{lam_i} (x_i1, ..., x_{i,i-1}, 1, 0, ...) scaled by p^shift
    row_choices = []
    for i in range(n):
        k = ks[i]
        base = p ** (lam[i] + shift - k) if lam[i] + shift - k >= 0 else Fraction(p) ** (lam[i] + shift - k)
        diag = p ** (lam[i] + shift)
        opts = []
        for xs in itertools.product(range(p ** k), repeat=i):
            opts.append([x * base for x in xs] + [diag] + [0] * (n - i - 1))
        row_choices.append(opts)
    count = 0
    for rows in itertools.product(*row_choices):
        a = [list(r) for r in rows]
        if _invariants_fast(a, p, shift, det_val) == target:
            count += 1
    return count


@dataclass(frozen=True)
class CountResult:
    count: int
    depth: int
    counts: tuple[tuple[int, int], ...]  # (depth, count) pairs that were compared
    stable: bool


def default_depth(lam: Sequence[int], mu: Sequence[int]) -> int:
    return (max(mu) - min(mu)) + (max(lam) - min(lam)) + 1


def count_c(lam: Sequence[int], mu: Sequence[int], p: int, depth: int | None = None) -> CountResult:
    lam, mu = _normalize(lam, mu)
    _check_job(lam, mu)
    m = default_depth(lam, mu) if depth is None else depth
    # c vanishes off the convex hull of W.mu, which forces min(lam) >= min(mu)
    if sum(lam) != sum(mu) or min(lam) < 0:
        return CountResult(0, m, ((m, 0), (m + 1, 0)), True)
    cache: dict[tuple[int, ...], int] = {}
    results = []
    for d in (m, m + 1):
        ks = _ranges(lam, mu, d)
        # depths giving the same truncation enumerate the same representatives
        if ks not in cache:
            cache[ks] = _enumerate(lam, mu, p, ks)
        results.append((d, cache[ks]))
    if results[0][1] != results[1][1]:
        raise Unstable(f"c({lam},{mu}) at p={p}: depth {m} gives {results[0][1]}, depth {m + 1} gives {results[1][1]}")
    return CountResult(results[0][1], m, tuple(results), True)


def count_c_unpruned(lam: Sequence[int], mu: Sequence[int], p: int, depth: int) -> int:
    """Reference count: every entry ranges over p^{-depth} Z / Z and Cartan
    invariants come from the integer Smith normal form."""
    lam, mu = _normalize(lam, mu)
    n = len(lam)
    entries = [(i, j) for i in range(n) for j in range(i)]
    size = (p ** depth) ** len(entries)
    if size > MAX_JOB:
        raise JobTooLarge(f"enumeration of {size} representatives exceeds the cap {MAX_JOB}")
    count = 0
    for xs in itertools.product(range(p ** depth), repeat=len(entries)):
        g = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = Fraction(p) ** lam[i]
        for (i, j), x in zip(entries, xs):
            g[i][j] = Fraction(p) ** lam[i] * Fraction(x, p ** depth)
        if cartan_invariants(QMatrix.from_rows(g), p) == mu:
            count += 1
    return count


def degree_bound(mu: Sequence[int]) -> int:
    """Length of the translation by mu: sum over i > j of |mu_i - mu_j|."""
    return sum(abs(mu[i] - mu[j]) for i in range(len(mu)) for j in range(i))


def first_primes(k: int) -> list[int]:
    out = []
    c = 2
    while len(out) < k:
        if all(c % p for p in out):
            out.append(c)
        c += 1
    return out


def _lagrange(points: list[tuple[int, int]]) -> list[Fraction]:
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


def interpolate_polynomial(lam: Sequence[int], mu: Sequence[int], primes: Sequence[int] | None = None) -> LaurentPoly:
    """The integer polynomial P with c(lam, mu) = P(q), from counts at
    deg + 2 primes (the last one only validates)."""
    bound = degree_bound(mu)
    primes = list(primes) if primes is not None else first_primes(bound + 2)
    if len(primes) < 2:
        raise ValueError("need at least two primes")
    samples = [(p, count_c(lam, mu, p).count) for p in primes]
    coeffs = _lagrange(samples[:-1])
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integral interpolation {coeffs} for c({tuple(lam)},{tuple(mu)})")
    poly = LaurentPoly.from_coeffs(coeffs)
    p_last, y_last = samples[-1]
    if poly.evaluate(p_last) != y_last:
        raise InterpolationError(
            f"interpolant {poly} predicts {poly.evaluate(p_last)} at p={p_last}, count is {y_last}")
    return poly
