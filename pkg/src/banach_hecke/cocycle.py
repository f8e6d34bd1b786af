"""Weyl cocycles, Gauss norms on the group ring of Lambda, and the domain
they cut out in V_R.

A cocycle is determined by a dominant weight xi and the field invariants
(p, e, f).  With eta the half sum of positive roots and eta_L = ef * eta,

    gamma(w, lam) = q^{<eta, w.lam - lam>} * pi^{<xi, w.lam - lam>}

(``gamma_xi``); the ``xi_only`` and ``delta_half`` variants keep one of the
two factors.  The ``normalized`` variant has trivial cocycle and a
W-invariant weight gamma_dom(lam) = q^{<eta, lam^->} pi^{<xi, lam^->}, where
lam^- is the antidominant representative; its q-powers may be half-integral.

Every variant has a "center" c in V_R (eta_L + xi, xi or eta_L).  The domain
of a cocycle variant is the convex hull of the points -(c - w.c); the
normalized domain is the hull of the orbit W.c.  Membership is decided three
independent ways: an exact LP for the hull, the dominance test, and the finite
list of linear inequalities coming from the monoid generators of Lambda^{--}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlin import INF, as_fraction, as_vector, lp_feasible
from .root_datum import RootDatum, Vec, WeylElt, _add, _dot, _norm_vec, _sub
from .scalars import FieldInvariants, LScalar, Monomial, NumericRing, Ring

__all__ = [
    "VARIANTS",
    "CocycleSpec",
    "GroupRingElt",
    "MembershipDisagreement",
    "NotAntidominant",
]

VARIANTS = ("xi_only", "delta_half", "gamma_xi", "normalized")


class MembershipDisagreement(RuntimeError):
    """The three membership tests disagreed; always an implementation bug."""


class NotAntidominant(ValueError):
    pass


@dataclass(frozen=True)
class GroupRingElt:
    """Finitely supported function Lambda -> scalars, without zero entries."""

    terms: tuple[tuple[Vec, object], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[Vec, object]) -> "GroupRingElt":
        return cls(tuple(sorted(((_norm_vec(k), v) for k, v in d.items() if v), key=lambda kv: kv[0])))

    @classmethod
    def monomial(cls, lam: Sequence, c) -> "GroupRingElt":
        return cls.from_dict({tuple(lam): c})

    def as_dict(self) -> dict[Vec, object]:
        return dict(self.terms)

    @property
    def support(self) -> list[Vec]:
        return [k for k, _ in self.terms]

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d[k] + v if k in d else v
        return GroupRingElt.from_dict(d)

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        return self + other.scale(-1)

    def scale(self, c) -> "GroupRingElt":
        return GroupRingElt.from_dict({k: v * c for k, v in self.terms})

    def __mul__(self, other: "GroupRingElt") -> "GroupRingElt":
        d: dict[Vec, object] = {}
        for k1, v1 in self.terms:
            for k2, v2 in other.terms:
                k = _add(k1, k2)
                d[k] = d[k] + v1 * v2 if k in d else v1 * v2
        return GroupRingElt.from_dict(d)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, lam: Sequence):
        return self.as_dict().get(_norm_vec(lam))


@dataclass(frozen=True)
class CocycleSpec:
    datum: RootDatum
    xi: Vec
    field: FieldInvariants = field(default_factory=lambda: FieldInvariants(2))
    variant: str = "gamma_xi"

    def __post_init__(self):
        object.__setattr__(self, "xi", self.datum.check(self.xi, "xi"))
        if any(not isinstance(x, int) for x in self.xi):
            raise ValueError(f"xi={self.xi} is not integral")
        if not self.datum.is_dominant_char(self.xi):
            raise ValueError(f"xi={self.xi} is not dominant")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")

    @classmethod
    def from_json(cls, d: dict) -> "CocycleSpec":
        datum = RootDatum.from_json(d["datum"]) if isinstance(d["datum"], dict) else RootDatum.parse(d["datum"])
        fl = d.get("field", {"p": 2, "e": 1, "f": 1})
        return cls(datum, tuple(int(x) for x in d["xi"]),
                   FieldInvariants(int(fl["p"]), int(fl.get("e", 1)), int(fl.get("f", 1))),
                   d.get("variant", "gamma_xi"))

    def to_json(self) -> dict:
        return {"datum": self.datum.to_json(), "xi": list(self.xi),
                "field": {"p": self.field.p, "e": self.field.e, "f": self.field.f},
                "variant": self.variant}

    @property
    def ring(self) -> NumericRing:
        return NumericRing(self.field)

    # -- centers and points -------------------------------------------------

    @property
    def eta_L(self) -> Vec:
        return _norm_vec(self.field.degree * x for x in self.datum.eta)

    @property
    def center(self) -> Vec:
        if self.variant == "xi_only":
            return self.xi
        if self.variant == "delta_half":
            return self.eta_L
        return _add(self.eta_L, self.xi)

    def z_points(self) -> dict[WeylElt, Vec]:
        """z_w = c - w.c for every Weyl element."""
        c = self.center
        return {w: _norm_vec(_sub(c, w.act_char(c))) for w in self.datum.weyl_group}

    def hull_vertices(self) -> list[Vec]:
        if self.variant == "normalized":
            pts = [w.act_char(self.center) for w in self.datum.weyl_group]
        else:
            pts = [tuple(-x for x in z) for z in self.z_points().values()]
        return sorted(set(_norm_vec(p) for p in pts))

    # -- cocycle values -----------------------------------------------------

    def gamma(self, w: WeylElt, lam: Sequence) -> Monomial:
        if self.variant == "normalized":
            return Monomial()
        d = _sub(w.act(lam), lam)
        a = _dot(self.xi, d) if self.variant in ("xi_only", "gamma_xi") else 0
        b = _dot(self.datum.eta, d) if self.variant in ("delta_half", "gamma_xi") else 0
        b = as_fraction(b)
        if b.denominator != 1:
            raise ArithmeticError(f"non-integral q-power {b} in gamma")
        return Monomial(as_fraction(a), b)

    def gamma_dom(self, lam: Sequence) -> Monomial:
        lam_minus, w = self.datum.antidominant(lam)
        if self.variant == "normalized":
            return Monomial(as_fraction(_dot(self.xi, lam_minus)),
                            as_fraction(_dot(self.datum.eta, lam_minus)))
        return self.gamma(w, lam)

    def gamma_dom_val(self, lam: Sequence) -> Fraction:
        return self.gamma_dom(lam).valuation(self.field)

    # -- coordinates ----------------------------------------------------------

    def _gl_shift(self) -> Vec:
        if not self.datum.is_gl:
            raise ValueError("coordinates of this kind exist only for GL(n)")
        d = self.field.degree
        return tuple(a + i * d for i, a in enumerate(self.xi))

    def gl_coordinates(self, raw: Sequence) -> Vec:
        """Raw valuations of zeta at lam_{i} to the coordinates val(zeta_i)."""
        return _norm_vec(_add(as_vector(raw), self._gl_shift()))

    def from_gl_coordinates(self, zeta: Sequence) -> Vec:
        return _norm_vec(_sub(as_vector(zeta), self._gl_shift()))

    def _to_raw(self, v: Sequence, coords: str) -> Vec:
        v = self.datum.check(as_vector(v), "valuation vector")
        if coords == "raw":
            return v
        if coords == "zeta":
            return self.from_gl_coordinates(v)
        raise ValueError(f"unknown coordinate system {coords!r}")

    # -- membership -----------------------------------------------------------

    def member_hull(self, v: Vec) -> bool:
        pts = self.hull_vertices()
        rows = [[p[r] for p in pts] for r in range(self.datum.rank)]
        rows.append([1] * len(pts))
        return lp_feasible(rows, list(v) + [1]) is not None

    def member_dominance(self, v: Vec) -> bool:
        c = self.center
        y = v if self.variant == "normalized" else _add(v, c)
        return self.datum.leq_dominance(self.datum.dominant_char(y)[0], c)

    def generator_orbit(self) -> list[Vec]:
        out: dict[Vec, None] = {}
        for g in self.datum.antidominant_generators:
            for lam in self.datum.orbit(g):
                out[lam] = None
        return list(out)

    def member_generators(self, v: Vec) -> bool:
        return all(_dot(lam, v) >= b for lam, b in self.presentation())

    def membership(self, valvec: Sequence, method: str = "all", coords: str = "raw") -> bool:
        v = self._to_raw(valvec, coords)
        tests = {"hull": self.member_hull, "dominance": self.member_dominance,
                 "generators": self.member_generators}
        if method in tests:
            return tests[method](v)
        if method != "all":
            raise ValueError(f"unknown method {method!r}")
        results = {name: t(v) for name, t in tests.items()}
        if len(set(results.values())) != 1:
            raise MembershipDisagreement(f"membership tests disagree at {v}: {results}")
        return results["hull"]

    def presentation(self, coords: str = "raw") -> list[tuple[Vec, Fraction]]:
        """Inequalities <lam, v> >= bound, one per lam in the W-orbit of the
        monoid generators; a generator and its negative together give an
        equality."""
        out = []
        shift = self._gl_shift() if coords == "zeta" else None
        for lam in self.generator_orbit():
            b = self.gamma_dom_val(lam)
            if shift is not None:
                b += _dot(shift, lam)
            out.append((lam, as_fraction(b)))
        return out

    # -- group ring -----------------------------------------------------------

    def _scalar(self, m: Monomial, ring: Ring | None = None):
        if ring is None:
            return m.to_scalar(self.field)
        return ring.pi_power(m.a) * ring.q_power(m.b) * ring.const(m.c)

    def twisted_action(self, w: WeylElt, x: GroupRingElt, ring: Ring | None = None) -> GroupRingElt:
        d: dict[Vec, object] = {}
        for lam, c in x.terms:
            mu = _norm_vec(w.act(lam))
            v = self._scalar(self.gamma(w, lam), ring) * c
            d[mu] = d[mu] + v if mu in d else v
        return GroupRingElt.from_dict(d)

    def sigma(self, lam: Sequence, ring: Ring | None = None) -> GroupRingElt:
        lam = self.datum.check(lam)
        if not self.datum.is_antidominant(lam):
            raise NotAntidominant(f"{lam} is not antidominant")
        return GroupRingElt.from_dict(
            {mu: self._scalar(self.gamma(w, lam), ring) for mu, w in self.datum.orbit(lam).items()})

    def sigma_combination(self, coeffs: Mapping[Vec, object], ring: Ring | None = None) -> GroupRingElt:
        out = GroupRingElt()
        for lam, c in coeffs.items():
            out = out + self.sigma(lam, ring).scale(c)
        return out

    def sigma_coefficients(self, x: GroupRingElt) -> dict[Vec, object]:
        """Coordinates of a twisted-invariant element in the sigma basis."""
        return {lam: c for lam, c in x.terms if self.datum.is_antidominant(lam)}

    def gauss_norm(self, x: GroupRingElt):
        """Valuation of the Gauss norm: min over the support of
        val gamma_dom(lam) + val(c_lam)."""
        ring = self.ring
        return min((self.gamma_dom_val(lam) + ring.valuation(ring.const(0) + c) for lam, c in x.terms),
                   default=INF)

