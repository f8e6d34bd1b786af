"""Root data, Weyl groups and the two dominance orders.

Coordinates.  The cocharacter lattice Lambda and the character lattice X* are
both written as integer vectors, in bases dual to each other, so the pairing
<x, lam> is the dot product.  For GL(n) both are Z^n; the positive roots are
e_i - e_j with i > j (the Borel is lower triangular), so the antidominant
cocharacters are the decreasing vectors.  For PGL(2) the cocharacter lattice
is Z with generator the fundamental coweight; then alpha = [1] and
alpha-check = [2].

Points z of V_R = Hom(Lambda, R) = X* (x) R are written in the character
coordinates.  Two orders live here and must not be confused:

* ``leq_dominance(z, z2)`` on V_R: z2 - z is a nonnegative combination of
  positive roots.  For GL this is the suffix partial sum test.
* ``leq_coweight(mu, lam)`` on Lambda: lam - mu is a nonnegative combination
  of negative coroots.  For GL this is the reverse of the suffix test; it is
  the order along which Satake coefficients are triangular.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exactlin import as_fraction, lp_feasible, solve

__all__ = [
    "RootDatum",
    "WeylElt",
    "LatticeVector",
    "GeneratorSearchError",
    "DatumMismatch",
    "weyl_orbit",
    "dominant_rearrange",
    "antidominant_rearrange",
    "leq_dominance",
    "antidominant_generators",
]

Vec = tuple


class GeneratorSearchError(RuntimeError):
    """The bounded search for monoid generators did not verify."""


class DatumMismatch(ValueError):
    pass


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _matvec(m, v) -> Vec:
    return tuple(_dot(row, v) for row in m)


def _matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, c) for c in cols) for row in a)


def _add(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _scale(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def _norm_vec(v: Iterable) -> Vec:
    """Integers stay ints; everything else becomes a Fraction."""
    out = []
    for x in v:
        x = as_fraction(x) if not isinstance(x, int) else x
        if isinstance(x, Fraction) and x.denominator == 1:
            x = x.numerator
        out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class WeylElt:
    """A Weyl group element, identified by its matrix on Lambda.

    ``word`` is a reduced word in the simple reflections (leftmost factor
    first) and ``char_matrix`` the contragredient action on X*.
    """

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] = field(default=(), compare=False)
    char_matrix: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, lam: Sequence) -> Vec:
        return _matvec(self.matrix, lam)

    def act_char(self, x: Sequence) -> Vec:
        return _matvec(self.char_matrix, x)

    def permutation(self) -> tuple[int, ...]:
        """For GL(n): the map i -> w(i) (0-based) with w e_i = e_{w(i)}."""
        n = len(self.matrix)
        return tuple(next(r for r in range(n) if self.matrix[r][c] == 1) for c in range(n))

    def __repr__(self):
        return "e" if not self.word else "s" + ".s".join(str(i) for i in self.word)


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: tuple[Vec, ...]
    simple_coroots: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]
    positive_coroots: tuple[Vec, ...]
    tag: str = "custom"

    MAX_WEYL = 5000

    def __post_init__(self):
        if len(self.simple_roots) != len(self.simple_coroots):
            raise ValueError("simple roots and coroots differ in number")
        if len(self.positive_roots) != len(self.positive_coroots):
            raise ValueError("positive roots and coroots differ in number")
        for v in (*self.simple_roots, *self.simple_coroots, *self.positive_roots, *self.positive_coroots):
            if len(v) != self.rank:
                raise ValueError(f"vector {v} does not have length {self.rank}")
        for i, a in enumerate(self.simple_roots):
            for j, c in enumerate(self.simple_coroots):
                v = _dot(a, c)
                if i == j and v != 2:
                    raise ValueError("Cartan matrix diagonal must be 2")
                if i != j and v > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")

    # -- constructors -------------------------------------------------------

    @classmethod
    def gl(cls, n: int) -> "RootDatum":
        def e(i):
            return tuple(int(k == i) for k in range(n))

        pos = tuple(_sub(e(i), e(j)) for i in range(n) for j in range(i))
        simple = tuple(_sub(e(i + 1), e(i)) for i in range(n - 1))
        return cls(n, simple, simple, pos, pos, f"GL{n}")

    @classmethod
    def pgl2(cls) -> "RootDatum":
        return cls(1, ((1,),), ((2,),), ((1,),), ((2,),), "PGL2")

    @classmethod
    def from_json(cls, desc: dict) -> "RootDatum":
        kind = desc.get("type")
        if kind == "GL":
            return cls.gl(int(desc["n"]))
        if kind == "PGL2":
            return cls.pgl2()
        if kind == "custom":
            sr = tuple(tuple(map(int, v)) for v in desc["simple_roots"])
            sc = tuple(tuple(map(int, v)) for v in desc["simple_coroots"])
            pr = tuple(tuple(map(int, v)) for v in desc["positive_roots"])
            pc = tuple(tuple(map(int, v)) for v in desc["positive_coroots"])
            rank = len(sr[0]) if sr else len(pr[0])
            return cls(rank, sr, sc, pr, pc, "custom")
        raise ValueError(f"unknown root datum descriptor {desc!r}")

    @classmethod
    def parse(cls, text: str) -> "RootDatum":
        """Short names: ``GL2``, ``GL3``, ``PGL2``."""
        t = text.strip().upper()
        if t == "PGL2":
            return cls.pgl2()
        if t.startswith("GL") and t[2:].isdigit():
            return cls.gl(int(t[2:]))
        raise ValueError(f"unknown datum name {text!r}")

    def to_json(self) -> dict:
        if self.tag == "PGL2":
            return {"type": "PGL2"}
        if self.tag.startswith("GL"):
            return {"type": "GL", "n": self.rank}
        return {
            "type": "custom",
            "simple_roots": [list(v) for v in self.simple_roots],
            "simple_coroots": [list(v) for v in self.simple_coroots],
            "positive_roots": [list(v) for v in self.positive_roots],
            "positive_coroots": [list(v) for v in self.positive_coroots],
        }

    @property
    def is_gl(self) -> bool:
        return self.tag.startswith("GL")

    def check(self, v: Sequence, what: str = "vector") -> Vec:
        if len(v) != self.rank:
            raise DatumMismatch(f"{what} {tuple(v)} has length {len(v)}, datum {self.tag} has rank {self.rank}")
        return _norm_vec(v)

    # -- roots --------------------------------------------------------------

    @cached_property
    def eta(self) -> Vec:
        """Half the sum of the positive roots (a point of V_R)."""
        tot = (0,) * self.rank
        for a in self.positive_roots:
            tot = _add(tot, a)
        return _norm_vec(Fraction(x, 2) for x in tot)

    @cached_property
    def _root_index(self) -> dict[Vec, int]:
        return {a: i for i, a in enumerate(self.positive_roots)}

    def coroot_of(self, alpha: Vec) -> Vec:
        """Coroot of a positive root."""
        return self.positive_coroots[self._root_index[alpha]]

    def is_positive_root(self, a: Vec) -> bool:
        return tuple(a) in self._root_index

    def is_negative_root(self, a: Vec) -> bool:
        return tuple(-x for x in a) in self._root_index

    # -- Weyl group ---------------------------------------------------------

    def _reflection(self, i: int):
        a, c = self.simple_roots[i], self.simple_coroots[i]
        n = self.rank
        lam = tuple(tuple(int(r == k) - c[r] * a[k] for k in range(n)) for r in range(n))
        char = tuple(tuple(int(r == k) - a[r] * c[k] for k in range(n)) for r in range(n))
        return lam, char

    @cached_property
    def weyl_group(self) -> tuple[WeylElt, ...]:
        """All elements in breadth-first (shortlex) order; words are reduced."""
        n = self.rank
        ident = tuple(tuple(int(r == k) for k in range(n)) for r in range(n))
        start = WeylElt(ident, (), ident)
        refl = [self._reflection(i) for i in range(len(self.simple_roots))]
        seen = {ident: start}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for i, (lam, char) in enumerate(refl):
                    m = _matmul(w.matrix, lam)
                    if m not in seen:
                        el = WeylElt(m, w.word + (i,), _matmul(w.char_matrix, char))
                        seen[m] = el
                        nxt.append(el)
                        if len(seen) > self.MAX_WEYL:
                            raise ValueError("Weyl group is infinite or too large")
            frontier = nxt
        return tuple(seen.values())

    @cached_property
    def _by_matrix(self) -> dict:
        return {w.matrix: w for w in self.weyl_group}

    @property
    def identity(self) -> WeylElt:
        return self.weyl_group[0]

    def simple_reflection(self, i: int) -> WeylElt:
        return self._by_matrix[self._reflection(i)[0]]

    @cached_property
    def longest(self) -> WeylElt:
        return max(self.weyl_group, key=lambda w: w.length)

    def mul(self, w: WeylElt, v: WeylElt) -> WeylElt:
        return self._by_matrix[_matmul(w.matrix, v.matrix)]

    def inverse(self, w: WeylElt) -> WeylElt:
        for v in self.weyl_group:
            if _matmul(w.matrix, v.matrix) == self.identity.matrix:
                return v
        raise AssertionError("no inverse")

    def from_word(self, word: Sequence[int]) -> WeylElt:
        w = self.identity
        for i in word:
            w = self.mul(w, self.simple_reflection(i))
        return w

    def lookup(self, matrix) -> WeylElt:
        return self._by_matrix[tuple(tuple(r) for r in matrix)]

    @cached_property
    def poincare(self) -> dict[int, int]:
        """Coefficients of sum_w q^{l(w)}."""
        out: dict[int, int] = {}
        for w in self.weyl_group:
            out[w.length] = out.get(w.length, 0) + 1
        return out

    # -- chambers -----------------------------------------------------------

    def is_antidominant(self, lam: Sequence) -> bool:
        return all(_dot(a, lam) <= 0 for a in self.simple_roots)

    def is_dominant_char(self, z: Sequence) -> bool:
        return all(_dot(z, c) >= 0 for c in self.simple_coroots)

    def antidominant(self, lam: Sequence) -> tuple[Vec, WeylElt]:
        """(lam^-, w) with w.lam = lam^- antidominant."""
        lam = _norm_vec(lam)
        w = self.identity
        while True:
            i = next((i for i, a in enumerate(self.simple_roots) if _dot(a, lam) > 0), None)
            if i is None:
                return lam, w
            s = self.simple_reflection(i)
            lam = s.act(lam)
            w = self.mul(s, w)

    def dominant(self, lam: Sequence) -> tuple[Vec, WeylElt]:
        """(lam^+, w) with w.lam dominant on Lambda (pairs >= 0 with simple roots)."""
        lam = _norm_vec(lam)
        w = self.identity
        while True:
            i = next((i for i, a in enumerate(self.simple_roots) if _dot(a, lam) < 0), None)
            if i is None:
                return lam, w
            s = self.simple_reflection(i)
            lam = s.act(lam)
            w = self.mul(s, w)

    def dominant_char(self, z: Sequence) -> tuple[Vec, WeylElt]:
        """(z^dom, w) with w.z dominant in V_R."""
        z = _norm_vec(z)
        w = self.identity
        while True:
            i = next((i for i, c in enumerate(self.simple_coroots) if _dot(z, c) < 0), None)
            if i is None:
                return z, w
            s = self.simple_reflection(i)
            z = s.act_char(z)
            w = self.mul(s, w)

    def antidominant_char(self, z: Sequence) -> tuple[Vec, WeylElt]:
        z = _norm_vec(z)
        w = self.identity
        while True:
            i = next((i for i, c in enumerate(self.simple_coroots) if _dot(z, c) > 0), None)
            if i is None:
                return z, w
            s = self.simple_reflection(i)
            z = s.act_char(z)
            w = self.mul(s, w)

    def orbit(self, lam: Sequence) -> dict[Vec, WeylElt]:
        """W-orbit of a cocharacter with a shortest witness per point."""
        lam = _norm_vec(lam)
        out: dict[Vec, WeylElt] = {}
        for w in self.weyl_group:
            out.setdefault(_norm_vec(w.act(lam)), w)
        return out

    def orbit_char(self, z: Sequence) -> dict[Vec, WeylElt]:
        z = _norm_vec(z)
        out: dict[Vec, WeylElt] = {}
        for w in self.weyl_group:
            out.setdefault(_norm_vec(w.act_char(z)), w)
        return out

    def stabilizes(self, w: WeylElt, lam: Sequence) -> bool:
        return _norm_vec(w.act(lam)) == _norm_vec(lam)

    # -- orders -------------------------------------------------------------

    def leq_dominance(self, z: Sequence, z2: Sequence) -> bool:
        """z <= z2 on V_R: z2 - z is a nonnegative combination of positive roots."""
        z, z2 = self.check(z, "point"), self.check(z2, "point")
        if self.is_gl:
            if sum(z) != sum(z2):
                return False
            sz = sz2 = 0
            for a, b in zip(reversed(z), reversed(z2)):
                sz += a
                sz2 += b
                if sz > sz2:
                    return False
            return True
        return self._in_cone(self.simple_roots, _sub(z2, z))

    def leq_coweight(self, mu: Sequence, lam: Sequence, integral: bool = False) -> bool:
        """mu <= lam on Lambda: lam - mu is a nonnegative combination of the
        negative coroots (with integer coefficients if ``integral``)."""
        mu, lam = self.check(mu), self.check(lam)
        return self._in_cone(self.simple_coroots, _sub(mu, lam), integral)

    def _in_cone(self, gens, d, integral=False) -> bool:
        if not gens:
            return all(x == 0 for x in d)
        cols = [[g[r] for g in gens] for r in range(self.rank)]
        x = solve(cols, list(d))
        if x is None or any(c < 0 for c in x):
            return False
        return not integral or all(c.denominator == 1 for c in x)

    def leq_dominance_lp(self, z: Sequence, z2: Sequence) -> bool:
        """Definitional test by exact LP over all positive roots."""
        d = _sub(self.check(z2), self.check(z))
        cols = [[a[r] for a in self.positive_roots] for r in range(self.rank)]
        return lp_feasible(cols, list(d)) is not None

    # -- monoid generators of the antidominant cone -------------------------

    @cached_property
    def antidominant_generators(self) -> tuple[Vec, ...]:
        if self.is_gl:
            n = self.rank
            gens = [tuple(int(k <= i) for k in range(n)) for i in range(n)]
            gens.append(tuple(-1 for _ in range(n)))
            return tuple(gens)
        if self.tag == "PGL2":
            return ((-1,),)
        return tuple(self._search_generators())

    def _search_generators(self, bound: int = 6) -> list[Vec]:
        box = range(-bound, bound + 1)
        pts = [v for v in itertools.product(box, repeat=self.rank)
               if any(v) and self.is_antidominant(v)]
        pts.sort(key=lambda v: (sum(abs(x) for x in v), v))
        zero = (0,) * self.rank
        gens: list[Vec] = []
        reach = {zero}
        for v in pts:
            if v in reach:
                continue
            gens.append(v)
            frontier = list(reach)
            while frontier:
                nxt = []
                for u in frontier:
                    for g in gens:
                        w = _add(u, g)
                        if w not in reach and all(abs(x) <= bound for x in w):
                            reach.add(w)
                            nxt.append(w)
                frontier = nxt
        half = bound // 2
        missing = [v for v in itertools.product(range(-half, half + 1), repeat=self.rank)
                   if self.is_antidominant(v) and v not in reach]
        if missing:
            raise GeneratorSearchError(
                f"generator search with bound {bound} failed to reach {missing[0]}")
        return gens

    @cached_property
    def rho_antidominant(self) -> Vec:
        """Sum of the monoid generators: strictly antidominant."""
        tot = (0,) * self.rank
        for g in self.antidominant_generators:
            tot = _add(tot, g)
        return tot

    def __repr__(self):
        return self.tag


# ---------------------------------------------------------------------------
# Thin tagged-vector API


@dataclass(frozen=True)
class LatticeVector:
    coords: Vec
    datum: RootDatum

    def __post_init__(self):
        object.__setattr__(self, "coords", self.datum.check(self.coords))


def _same(a: LatticeVector, b: LatticeVector) -> RootDatum:
    if a.datum != b.datum:
        raise DatumMismatch(f"{a.datum} vs {b.datum}")
    return a.datum


def weyl_orbit(lam: LatticeVector) -> list[tuple[WeylElt, LatticeVector]]:
    return [(w, LatticeVector(v, lam.datum)) for v, w in lam.datum.orbit(lam.coords).items()]


def dominant_rearrange(z: LatticeVector) -> LatticeVector:
    return LatticeVector(z.datum.dominant_char(z.coords)[0], z.datum)


def antidominant_rearrange(z: LatticeVector) -> LatticeVector:
    return LatticeVector(z.datum.antidominant_char(z.coords)[0], z.datum)


def leq_dominance(z: LatticeVector, z2: LatticeVector) -> bool:
    return _same(z, z2).leq_dominance(z.coords, z2.coords)


def antidominant_generators(datum: RootDatum) -> list[LatticeVector]:
    return [LatticeVector(g, datum) for g in datum.antidominant_generators]
