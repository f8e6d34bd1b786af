"""Iwahori-Hecke algebra of a split group, in the basis tau_x.

An element x = (w, lam) of the extended affine Weyl group W ⋉ Lambda stands
for w * pi^lam, so (w, lam)(v, mu) = (wv, v^{-1}.lam + mu).  With respect to
the Iwahori subgroup attached to the (lower triangular) Borel,

    l(w, lam) = sum over alpha > 0 of | <alpha, lam> - [w.alpha < 0] |,

which is additive on antidominant translations.  Multiplication reduces the
right factor to a reduced word s_1...s_k omega and applies

    tau_x tau_s = tau_{xs}                     if l(xs) > l(x)
                = (q - 1) tau_x + q tau_{xs}    otherwise,

and tau_x tau_omega = tau_{x omega} for omega of length zero.

Coefficients live in a :class:`~banach_hecke.scalars.Ring`: symbolic Laurent
polynomials in q for identities, or the numeric ring Q(pi^(1/2)) when norms
and pi-twists are needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exactlin import INF, as_fraction
from .root_datum import RootDatum, Vec, WeylElt, _add, _dot, _norm_vec
from .scalars import LaurentPoly, Ring, SymbolicRing

__all__ = [
    "AffElt",
    "HeckeElt",
    "HeckeAlgebra",
    "NonSpherical",
]


class NonSpherical(ValueError):
    pass


@dataclass(frozen=True)
class AffElt:
    w: WeylElt
    lam: Vec

    def __repr__(self):
        return f"({self.w!r}, {self.lam})"


class HeckeElt:
    """Finitely supported map from the extended affine Weyl group to scalars."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[AffElt, object] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and self.coeffs == other.coeffs

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            d[k] = d[k] + v if k in d else v
        return HeckeElt(d)

    def __neg__(self):
        return HeckeElt({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        return HeckeElt({k: v * c for k, v in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def support(self) -> list[AffElt]:
        return list(self.coeffs)

    def coefficient(self, x: AffElt):
        return self.coeffs.get(x)

    def __repr__(self):
        return " + ".join(f"({v})*T{k!r}" for k, v in self.coeffs.items()) or "0"


class HeckeAlgebra:
    def __init__(self, datum: RootDatum, ring: Ring | None = None):
        self.datum = datum
        self.ring = ring or SymbolicRing()
        self._inv = {w: datum.inverse(w) for w in datum.weyl_group}
        # per-instance memo tables
        self.mul_basis = lru_cache(maxsize=None)(self._mul_basis)
        self.decompose = lru_cache(maxsize=None)(self._decompose)
        self.length = lru_cache(maxsize=None)(self._length)
        self.bruhat_leq = lru_cache(maxsize=None)(self._bruhat_leq)
        self._simple = self._simple_reflections()

    # -- the group ----------------------------------------------------------

    def elt(self, w: WeylElt | Sequence[int] | None = None, lam: Sequence = None) -> AffElt:
        d = self.datum
        if w is None:
            w = d.identity
        elif not isinstance(w, WeylElt):
            w = d.from_word(w)
        lam = d.check(lam if lam is not None else (0,) * d.rank)
        return AffElt(w, lam)

    @property
    def one_elt(self) -> AffElt:
        return self.elt()

    def mul_elt(self, x: AffElt, y: AffElt) -> AffElt:
        vinv = self._inv[y.w]
        return AffElt(self.datum.mul(x.w, y.w), _norm_vec(_add(vinv.act(x.lam), y.lam)))

    def inv_elt(self, x: AffElt) -> AffElt:
        return AffElt(self._inv[x.w], _norm_vec(tuple(-c for c in x.w.act(x.lam))))

    def _length(self, x: AffElt) -> int:
        d = self.datum
        tot = 0
        for a in d.positive_roots:
            neg = d.is_negative_root(_norm_vec(x.w.act_char(a)))
            tot += abs(_dot(a, x.lam) - int(neg))
        return tot

    def _simple_reflections(self) -> list[AffElt]:
        d = self.datum
        out = []
        for a in d.positive_roots:
            c = d.coroot_of(a)
            refl = d.lookup(tuple(tuple(int(r == k) - c[r] * a[k] for k in range(d.rank))
                                  for r in range(d.rank)))
            for m in (-1, 0, 1):
                x = AffElt(refl, _norm_vec(tuple(m * ci for ci in c)))
                if self.length(x) == 1 and x not in out:
                    out.append(x)
        return out

    @property
    def simple_reflections(self) -> list[AffElt]:
        return list(self._simple)

    def _decompose(self, y: AffElt) -> tuple[tuple[AffElt, ...], AffElt]:
        """Reduced expression y = s_1 ... s_k omega with l(omega) = 0."""
        ly = self.length(y)
        if ly == 0:
            return (), y
        for s in self._simple:
            sy = self.mul_elt(s, y)
            if self.length(sy) < ly:
                word, omega = self.decompose(sy)
                return (s,) + word, omega
        raise AssertionError(f"no left descent for {y} of length {ly}")

    def _bruhat_leq(self, x: AffElt, y: AffElt) -> bool:
        lx, ly = self.length(x), self.length(y)
        if lx > ly:
            return False
        if ly == 0:
            return x == y
        word, _ = self.decompose(self.inv_elt(y))
        # word of y^{-1} starts with s  <=>  s is a right descent of y
        s = word[0]
        ys = self.mul_elt(y, s)
        xs = self.mul_elt(x, s)
        if self.length(xs) < lx:
            return self.bruhat_leq(xs, ys)
        return self.bruhat_leq(x, ys)

    def omega_part(self, x: AffElt) -> AffElt:
        return self.decompose(x)[1]

    # -- the algebra --------------------------------------------------------

    def tau(self, x: AffElt, c=None) -> HeckeElt:
        return HeckeElt({x: self.ring.one() if c is None else c})

    def tau_w(self, word: Sequence[int]) -> HeckeElt:
        return self.tau(self.elt(word))

    def tau_lambda(self, lam: Sequence) -> HeckeElt:
        return self.tau(self.elt(None, lam))

    def one(self) -> HeckeElt:
        return self.tau(self.one_elt)

    def _times_simple(self, h: dict, s: AffElt) -> dict:
        q = self.ring.q()
        out: dict = {}

        def put(k, v):
            out[k] = out[k] + v if k in out else v

        for x, c in h.items():
            xs = self.mul_elt(x, s)
            if self.length(xs) > self.length(x):
                put(xs, c)
            else:
                put(x, c * (q - 1))
                put(xs, c * q)
        return out

    def _mul_basis(self, x: AffElt, y: AffElt) -> tuple:
        word, omega = self.decompose(y)
        h = {x: self.ring.one()}
        for s in word:
            h = self._times_simple(h, s)
        return tuple((self.mul_elt(z, omega), c) for z, c in h.items() if c)

    def multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        out: dict = {}
        for x, c1 in a.coeffs.items():
            for y, c2 in b.coeffs.items():
                c = c1 * c2
                for z, v in self.mul_basis(x, y):
                    out[z] = out[z] + c * v if z in out else c * v
        return HeckeElt(out)

    def product(self, *hs: HeckeElt) -> HeckeElt:
        out = self.one()
        for h in hs:
            out = self.multiply(out, h)
        return out

    def tau_simple_inverse(self, s: AffElt) -> HeckeElt:
        qi = self.ring.q_power(-1)
        return HeckeElt({s: qi, self.one_elt: qi - self.ring.one()})

    def tau_inverse(self, x: AffElt) -> HeckeElt:
        word, omega = self.decompose(x)
        h = self.tau(self.inv_elt(omega))
        for s in reversed(word):
            h = self.multiply(h, self.tau_simple_inverse(s))
        return h

    # -- Bernstein elements -------------------------------------------------

    def split_translation(self, lam: Sequence) -> tuple[Vec, Vec]:
        """lam = lam1 - lam2 with lam1, lam2 antidominant, lam2 a multiple of
        the strictly antidominant sum of monoid generators."""
        d = self.datum
        lam = d.check(lam)
        rho = d.rho_antidominant
        m = 0
        while not d.is_antidominant(_add(lam, tuple(m * r for r in rho))):
            m += 1
        lam2 = tuple(m * r for r in rho)
        return _norm_vec(_add(lam, lam2)), _norm_vec(lam2)

    def translation_length(self, lam: Sequence) -> int:
        return self.length(self.elt(None, lam))

    def Theta(self, lam: Sequence) -> HeckeElt:
        lam1, lam2 = self.split_translation(lam)
        return self.multiply(self.tau_lambda(lam1), self.tau_inverse(self.elt(None, lam2)))

    def theta(self, x: AffElt) -> HeckeElt:
        lam1, lam2 = self.split_translation(x.lam)
        num = self.length(x) - x.w.length - self.translation_length(lam1) + self.translation_length(lam2)
        if num % 2:
            raise ArithmeticError(f"half-integral q-power in theta for {x}")
        h = self.multiply(self.tau(AffElt(x.w, (0,) * self.datum.rank)), self.Theta(x.lam))
        return h.scale(self.ring.q_power(num // 2))

    def theta_exponent(self, lam: Sequence) -> Fraction:
        """k with theta_lam = q^k Theta(lam)."""
        lam1, lam2 = self.split_translation(lam)
        return Fraction(self.translation_length(lam) - self.translation_length(lam1)
                        + self.translation_length(lam2), 2)

    def Theta_xi(self, lam: Sequence, xi: Sequence) -> HeckeElt:
        return self.Theta(lam).scale(self.ring.pi_power(-_dot(xi, lam)))

    def Theta_group_ring(self, x, xi: Sequence | None = None) -> HeckeElt:
        """Linear extension of Theta (or Theta_xi) to a group ring element."""
        out = HeckeElt()
        for lam, c in x.terms:
            t = self.Theta(lam) if xi is None else self.Theta_xi(lam, xi)
            out = out + t.scale(c)
        return out

    def norm_xi(self, h: HeckeElt, xi: Sequence):
        """Valuation of ||h||_xi: min of val(c_x) + <xi, lam_x^->."""
        d = self.datum
        return min((self.ring.valuation(c) + _dot(xi, d.antidominant(x.lam)[0]) for x, c in h.coeffs.items()),
                   default=INF)

    # -- spherical elements -------------------------------------------------

    def double_coset(self, lam: Sequence) -> list[AffElt]:
        orbit = self.datum.orbit(lam)
        return [AffElt(u, mu) for u in self.datum.weyl_group for mu in orbit]

    def spherical_embed(self, lam: Sequence) -> HeckeElt:
        lam = self.datum.check(lam)
        if not self.datum.is_antidominant(lam):
            raise ValueError(f"{lam} is not antidominant")
        one = self.ring.one()
        return HeckeElt({x: one for x in self.double_coset(lam)})

    def spherical(self, coeffs: Mapping[Vec, object]) -> HeckeElt:
        out = HeckeElt()
        for lam, c in coeffs.items():
            out = out + self.spherical_embed(lam).scale(c)
        return out

    def spherical_coefficients(self, h: HeckeElt) -> dict[Vec, object]:
        """Coordinates in the psi basis; raises unless h is constant on each
        W-double coset."""
        out: dict[Vec, object] = {}
        seen = set()
        for x, c in h.coeffs.items():
            if x in seen:
                continue
            lam = self.datum.antidominant(x.lam)[0]
            for y in self.double_coset(lam):
                if h.coeffs.get(y) != c:
                    raise NonSpherical(f"coefficient at {y} differs from the one at {x}")
                seen.add(y)
            out[lam] = c
        return out

    def poincare(self):
        return self.ring.from_poly(LaurentPoly.from_dict(self.datum.poincare))

    def spherical_product(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        self.spherical_coefficients(a)
        self.spherical_coefficients(b)
        p = self.poincare()
        return HeckeElt({x: c / p for x, c in self.multiply(a, b).coeffs.items()})

    def psi0(self) -> HeckeElt:
        return self.spherical_embed((0,) * self.datum.rank)

    # -- enumeration helpers --------------------------------------------------

    def elements_up_to(self, max_len: int, box: int = 2) -> list[AffElt]:
        """All (w, lam) with |lam_i| <= box and length <= max_len."""
        out = []
        for lam in itertools.product(range(-box, box + 1), repeat=self.datum.rank):
            for w in self.datum.weyl_group:
                x = AffElt(w, _norm_vec(lam))
                if self.length(x) <= max_len:
                    out.append(x)
        return out

    def omega_generators(self) -> list[AffElt]:
        """Length-zero parts of the antidominant generator translations."""
        out = []
        for g in self.datum.antidominant_generators:
            om = self.omega_part(self.elt(None, g))
            if om not in out:
                out.append(om)
        return out

    # -- JSON ---------------------------------------------------------------

    def to_json(self, h: HeckeElt, fmt=str) -> list[dict]:
        return [{"w": list(x.w.word), "lambda": [str(v) for v in x.lam], "coeff": fmt(c)}
                for x, c in h.coeffs.items()]

    def from_json(self, items: Iterable[dict], parse=as_fraction) -> HeckeElt:
        out = HeckeElt()
        for it in items:
            x = self.elt(tuple(it.get("w", [])), [as_fraction(str(v)) for v in it.get("lambda", [0] * self.datum.rank)])
            out = out + self.tau(x, self.ring.const(parse(str(it.get("coeff", "1")))))
        return out
