"""Scalar rings used by the algebra modules.

Three coefficient domains appear:

* :class:`LaurentPoly` -- Laurent polynomials in a formal ``q`` with rational
  coefficients.  Used wherever an identity is uniform in ``q``.
* :class:`LScalar` -- exact elements of ``Q(pi^(1/2))`` where ``pi^e = p``.
  This models the subfield of L generated by a uniformizer, enough to hold
  every value a cocycle or a Hecke coefficient can take, and it carries an
  exact valuation normalized by ``val(pi) = 1``.
* :class:`Monomial` -- ``pi^a q^b c``, the symbolic shape of cocycle values.

A :class:`Ring` bundles the handful of constructors the algebra code needs
(``one``, ``q``, ``pi_power`` ...), so the Hecke and Satake code is written
once and runs over either domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .exactlin import INF, as_fraction, vp

__all__ = [
    "FieldInvariants",
    "LaurentPoly",
    "LScalar",
    "Monomial",
    "Ring",
    "SymbolicRing",
    "NumericRing",
    "RationalRing",
]


@dataclass(frozen=True)
class FieldInvariants:
    """Ramification index e and residue degree f of L over Q_p."""

    p: int
    e: int = 1
    f: int = 1

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, math.isqrt(self.p) + 1)):
            raise ValueError(f"p={self.p} is not prime")
        if self.e < 1 or self.f < 1:
            raise ValueError("e and f must be positive")

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def degree(self) -> int:
        """[L:Q_p] = e*f = val_L(q)."""
        return self.e * self.f

    def val(self, x):
        """val_L of a rational number (val_L(p) = e)."""
        v = vp(x, self.p)
        return v if v is INF else Fraction(self.e * v)


# --------------------------------------------------------------------------
# Laurent polynomials in q


def _clean(d: Mapping) -> tuple:
    return tuple(sorted((k, v) for k, v in d.items() if v != 0))


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c_k q^k, k an integer."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, object]) -> "LaurentPoly":
        return cls(_clean({int(k): as_fraction(v) for k, v in d.items()}))

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls.from_dict({0: c})

    @classmethod
    def q_power(cls, k: int, c=1) -> "LaurentPoly":
        return cls.from_dict({k: c})

    @classmethod
    def from_coeffs(cls, coeffs) -> "LaurentPoly":
        """Polynomial c0 + c1 q + c2 q^2 + ..."""
        return cls.from_dict(dict(enumerate(coeffs)))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def coeffs(self) -> list[Fraction]:
        """Coefficient list c0, c1, ... of a genuine polynomial."""
        if not self.terms:
            return []
        if self.terms[0][0] < 0:
            raise ValueError("negative powers of q present")
        d = self.as_dict()
        return [d.get(k, Fraction(0)) for k in range(self.terms[-1][0] + 1)]

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return LaurentPoly(_clean(d))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict[int, Fraction] = {}
        for k1, v1 in self.terms:
            for k2, v2 in other.terms:
                d[k1 + k2] = d.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(_clean(d))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are invertible among Laurent polynomials")
        k, v = self.terms[0]
        return LaurentPoly(((-k, 1 / v),))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) == 1:
            return self * other.inverse()
        return self.exact_div(other)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Division by a Laurent polynomial that must leave no remainder."""
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        s, t = self.terms[0][0], other.terms[0][0]
        num = [c for c in LaurentPoly(tuple((k - s, c) for k, c in self.terms)).coeffs()]
        den = LaurentPoly(tuple((k - t, c) for k, c in other.terms)).coeffs()
        if len(num) < len(den):
            raise ArithmeticError("division leaves a remainder")
        out = [Fraction(0)] * (len(num) - len(den) + 1)
        for i in range(len(out) - 1, -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            out[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
        if any(num):
            raise ArithmeticError("division leaves a remainder")
        return LaurentPoly(_clean({i + s - t: c for i, c in enumerate(out)}))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, q):
        return sum((c * as_fraction(q) ** k for k, c in self.terms), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# --------------------------------------------------------------------------
# Elements of Q(pi^(1/2)) with pi^e = p

@dataclass(frozen=True)
class LScalar:
    """sum_j c_j pi^{t_j} with t_j in [0, e) a half-integer and c_j rational."""

    field: FieldInvariants
    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def make(cls, fld: FieldInvariants, d: Mapping) -> "LScalar":
        norm: dict[Fraction, Fraction] = {}
        for t, c in d.items():
            t = as_fraction(t)
            c = as_fraction(c)
            if c == 0:
                continue
            if (2 * t).denominator != 1:
                raise ValueError(f"pi exponent {t} is not a half-integer")
            k = math.floor(t / fld.e)
            t -= k * fld.e
            c *= Fraction(fld.p) ** k
            norm[t] = norm.get(t, 0) + c
        return cls(fld, _clean(norm))

    @classmethod
    def rational(cls, fld: FieldInvariants, c) -> "LScalar":
        return cls.make(fld, {0: c})

    @classmethod
    def pi_power(cls, fld: FieldInvariants, a, c=1) -> "LScalar":
        return cls.make(fld, {as_fraction(a): c})

    def _coerce(self, other):
        if isinstance(other, LScalar):
            if other.field != self.field:
                raise ValueError("scalars over different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return LScalar.rational(self.field, other)
        if isinstance(other, LaurentPoly):
            return sum((LScalar.pi_power(self.field, k * self.field.degree, c) for k, c in other.terms),
                       LScalar(self.field))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for t, c in other.terms:
            d[t] = d.get(t, 0) + c
        return LScalar(self.field, _clean(d))

    __radd__ = __add__

    def __neg__(self):
        return LScalar(self.field, tuple((t, -c) for t, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict[Fraction, Fraction] = {}
        for t1, c1 in self.terms:
            for t2, c2 in other.terms:
                d[t1 + t2] = d.get(t1 + t2, 0) + c1 * c2
        return LScalar.make(self.field, d)

    __rmul__ = __mul__

    def inverse(self) -> "LScalar":
        if len(self.terms) != 1:
            raise ZeroDivisionError("only single-term scalars are inverted exactly")
        t, c = self.terms[0]
        return LScalar.make(self.field, {-t: 1 / c})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LScalar.rational(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ValueError:
            return False
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def valuation(self):
        """val_L with val(pi) = 1.  Distinct exponents in [0, e) never tie
        after adding multiples of e, so the minimum is attained once."""
        if not self.terms:
            return INF
        return min(t + self.field.e * vp(c, self.field.p) for t, c in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}" if t == 0 else f"{c}*pi^{t}" for t, c in self.terms)


# --------------------------------------------------------------------------
# Symbolic monomials pi^a q^b c


@dataclass(frozen=True)
class Monomial:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(1)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.a + other.a, self.b + other.b, self.c * other.c)

    def inverse(self) -> "Monomial":
        return Monomial(-self.a, -self.b, 1 / self.c)

    def valuation(self, fld: FieldInvariants) -> Fraction:
        return self.a + self.b * fld.degree + fld.val(self.c)

    def to_scalar(self, fld: FieldInvariants) -> LScalar:
        return LScalar.pi_power(fld, self.a + self.b * fld.degree, self.c)

    def is_one(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 1


# --------------------------------------------------------------------------
# Rings


@dataclass(frozen=True)
class Ring:
    """Constructors shared by the algebra code."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def const(self, c):
        raise NotImplementedError

    def q(self):
        raise NotImplementedError

    def q_power(self, k):
        return self.q() ** k if k >= 0 else self.q().inverse() ** (-k)

    def pi_power(self, a):
        raise NotImplementedError

    def from_poly(self, poly: LaurentPoly):
        return sum((self.const(c) * self.q_power(k) for k, c in poly.terms), self.zero())

    def valuation(self, x):
        raise NotImplementedError


@dataclass(frozen=True)
class SymbolicRing(Ring):
    """Laurent polynomials in q; no uniformizer, no valuations."""

    def zero(self):
        return LaurentPoly()

    def one(self):
        return LaurentPoly.const(1)

    def const(self, c):
        return LaurentPoly.const(c)

    def q(self):
        return LaurentPoly.q_power(1)

    def q_power(self, k):
        return LaurentPoly.q_power(int(k))

    def pi_power(self, a):
        if a != 0:
            raise ValueError("symbolic q-ring has no uniformizer; use a numeric ring")
        return self.one()

    def from_poly(self, poly: LaurentPoly):
        return poly

    def valuation(self, x):
        raise ValueError("valuations need a numeric ring")


@dataclass(frozen=True)
class NumericRing(Ring):
    """Q(pi^(1/2)) for given (p, e, f), with pi^e = p and hence q = pi^(ef)."""

    field: FieldInvariants = field(default_factory=lambda: FieldInvariants(2))

    def zero(self):
        return LScalar(self.field)

    def one(self):
        return LScalar.rational(self.field, 1)

    def const(self, c):
        return LScalar.rational(self.field, c)

    def q(self):
        return LScalar.rational(self.field, self.field.q)

    def q_power(self, k):
        # q = p^f = pi^(ef) exactly in this model, so half-integral powers are fine
        return LScalar.pi_power(self.field, as_fraction(k) * self.field.degree)

    def pi_power(self, a):
        return LScalar.pi_power(self.field, a)

    def from_poly(self, poly: LaurentPoly):
        return LScalar.make(self.field, {0: poly.evaluate(self.field.q)})

    def valuation(self, x):
        return x.valuation()


@dataclass(frozen=True)
class RationalRing(Ring):
    """Plain rationals with q = p^f substituted (no uniformizer beyond p)."""

    field: FieldInvariants = field(default_factory=lambda: FieldInvariants(2))

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def const(self, c):
        return as_fraction(c)

    def q(self):
        return Fraction(self.field.q)

    def q_power(self, k):
        return Fraction(self.field.q) ** int(k)

    def pi_power(self, a):
        if self.field.e != 1 or as_fraction(a).denominator != 1:
            raise ValueError("pi is not rational for this field")
        return Fraction(self.field.p) ** int(a)

    def from_poly(self, poly: LaurentPoly):
        return poly.evaluate(self.field.q)

    def valuation(self, x):
        return self.field.val(x)
