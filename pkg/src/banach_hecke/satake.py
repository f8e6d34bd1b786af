"""The renormalized Satake transform on finitely supported spherical elements.

For xi dominant,

    S_xi(psi_mu) = sum over antidominant lam <= mu of pi^{<xi, lam>} c(lam, mu) sigma_lam,

where c(lam, mu) = |(N t_lam U_0 cap U_0 t_mu U_0) / U_0| and sigma_lam is the
twisted orbit sum of the cocycle gamma_xi.  The coefficients are never
guessed: they come from the coset-count oracle (numeric, for q = p) or from
interpolated q-polynomials, optionally persisted in a JSON-lines table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .cocycle import CocycleSpec, GroupRingElt
from .exactlin import solve
from .hecke import HeckeAlgebra, HeckeElt
from .oracle import count_c, interpolate_polynomial
from .root_datum import RootDatum, Vec, _add, _dot, _norm_vec
from .scalars import FieldInvariants, LaurentPoly, NumericRing, Ring, SymbolicRing

__all__ = [
    "MissingCoefficient",
    "NotInvariant",
    "TableConflict",
    "CoefficientTable",
    "OracleSource",
    "InterpolatedSource",
    "TableSource",
    "Satake",
    "gl_lift",
    "gl_symmetric_map",
    "evaluate",
    "check_prop44",
]


class MissingCoefficient(LookupError):
    pass


class NotInvariant(ValueError):
    pass


class TableConflict(ValueError):
    pass


def gl_lift(datum: RootDatum, lam: Sequence, mu: Sequence) -> tuple[Vec, Vec] | None:
    """GL(n) cocharacters with the same coefficient as (lam, mu); None when
    the coefficient vanishes for parity reasons.  PGL2 pairs are lifted along
    GL2 -> PGL2, (a, b) -> b - a, choosing equal determinants."""
    if datum.is_gl:
        return tuple(lam), tuple(mu)
    if datum.tag == "PGL2":
        l, m = -int(lam[0]), -int(mu[0])
        if (l + m) % 2:
            return None
        return ((m + l) // 2, (m - l) // 2), (m, 0)
    raise MissingCoefficient(f"no coefficient oracle for the datum {datum.tag}")


# -- coefficient sources ------------------------------------------------------


@dataclass
class CoefficientTable:
    """c(lam, mu) as integer polynomials in q, keyed by (datum, lam, mu)."""

    entries: dict[tuple[str, Vec, Vec], LaurentPoly] = field(default_factory=dict)

    def add(self, lam: Sequence, mu: Sequence, poly: LaurentPoly, datum: str = "GL") -> None:
        key = (datum, tuple(int(x) for x in lam), tuple(int(x) for x in mu))
        old = self.entries.get(key)
        if old is not None and old != poly:
            raise TableConflict(f"table has {old} for {key}, new value {poly}")
        self.entries[key] = poly

    def get(self, lam: Sequence, mu: Sequence, datum: str = "GL") -> LaurentPoly | None:
        return self.entries.get((datum, tuple(lam), tuple(mu)))

    @staticmethod
    def line(lam: Sequence, mu: Sequence, poly: LaurentPoly, datum: str = "GL") -> str:
        return json.dumps({"datum": datum, "lambda": list(lam), "mu": list(mu),
                           "poly": [str(c) for c in poly.coeffs()]})

    @classmethod
    def load(cls, path: str | Path) -> "CoefficientTable":
        table = cls()
        p = Path(path)
        if not p.exists():
            return table
        for n, raw in enumerate(p.read_text().splitlines(), start=1):
            if not raw.strip():
                continue
            try:
                d = json.loads(raw)
                poly = LaurentPoly.from_coeffs([Fraction(str(c)) for c in d["poly"]])
                table.add(d["lambda"], d["mu"], poly, d.get("datum", "GL"))
            except (KeyError, ValueError, TypeError) as exc:
                if isinstance(exc, TableConflict):
                    raise
                raise ValueError(f"{path}:{n}: bad table line ({exc})") from exc
        return table

    def append(self, path: str | Path, lam: Sequence, mu: Sequence, poly: LaurentPoly, datum: str = "GL") -> None:
        fresh = (datum, tuple(lam), tuple(mu)) not in self.entries
        self.add(lam, mu, poly, datum)
        if fresh:
            with open(path, "a") as fh:
                fh.write(self.line(lam, mu, poly, datum) + "\n")


@dataclass
class OracleSource:
    """Numeric coefficients c(lam, mu) at q = p from the coset count."""

    p: int
    cache: dict = field(default_factory=dict)

    def __call__(self, lam: Vec, mu: Vec) -> int:
        key = (lam, mu)
        if key not in self.cache:
            self.cache[key] = count_c(lam, mu, self.p).count
        return self.cache[key]

    def check_ring(self, ring: Ring) -> None:
        fld = getattr(ring, "field", None)
        if fld is None or fld.q != self.p or fld.f != 1:
            raise ValueError(f"oracle counts at p={self.p} need a numeric ring with q = p")


@dataclass
class TableSource:
    """Polynomials from a table only; absent entries raise."""

    table: CoefficientTable
    datum: str = "GL"

    def __call__(self, lam: Vec, mu: Vec) -> LaurentPoly:
        poly = self.table.get(lam, mu, self.datum)
        if poly is None:
            if sum(lam) != sum(mu):
                return LaurentPoly()
            raise MissingCoefficient(f"c({lam}, {mu}) is not in the coefficient table")
        return poly

    def check_ring(self, ring: Ring) -> None:
        pass


@dataclass
class InterpolatedSource:
    """Polynomials from the table when present, else interpolated from
    oracle counts (and appended to ``path`` if given)."""

    table: CoefficientTable = field(default_factory=CoefficientTable)
    path: str | Path | None = None
    datum: str = "GL"

    def __call__(self, lam: Vec, mu: Vec) -> LaurentPoly:
        poly = self.table.get(lam, mu, self.datum)
        if poly is None:
            poly = interpolate_polynomial(lam, mu)
            if self.path is not None:
                self.table.append(self.path, lam, mu, poly, self.datum)
            else:
                self.table.add(lam, mu, poly, self.datum)
        return poly

    def check_ring(self, ring: Ring) -> None:
        pass


# -- the transform ------------------------------------------------------------


class Satake:
    def __init__(self, datum: RootDatum, xi: Sequence | None = None, ring: Ring | None = None,
                 source: Callable | None = None, fld: FieldInvariants | None = None):
        self.datum = datum
        self.xi = datum.check(xi if xi is not None else (0,) * datum.rank, "xi")
        if ring is None:
            ring = SymbolicRing() if not any(self.xi) else NumericRing(fld or FieldInvariants(2))
        self.ring = ring
        fld = fld or getattr(ring, "field", None) or FieldInvariants(2)
        self.spec = CocycleSpec(datum, self.xi, fld, "gamma_xi")
        self.source = source if source is not None else InterpolatedSource()
        check = getattr(self.source, "check_ring", None)
        if check is not None:
            check(ring)
        self._coeff_cache: dict[tuple[Vec, Vec], object] = {}

    # coefficients

    def coeff(self, lam: Sequence, mu: Sequence):
        """c(lam, mu) as a ring element (lam may be any cocharacter)."""
        key = (_norm_vec(lam), _norm_vec(mu))
        if key not in self._coeff_cache:
            lifted = gl_lift(self.datum, *key)
            if lifted is None:
                val = self.ring.zero()
            else:
                raw = self.source(*lifted)
                val = self.ring.from_poly(raw) if isinstance(raw, LaurentPoly) else self.ring.const(raw)
            self._coeff_cache[key] = val
        return self._coeff_cache[key]

    def height(self, lam: Sequence) -> Fraction:
        return Fraction(_dot(self.datum.eta, lam))

    def lower_set(self, mu: Sequence) -> list[Vec]:
        """Antidominant lam <= mu, highest first."""
        d = self.datum
        mu = d.check(mu)
        if not d.is_antidominant(mu):
            raise ValueError(f"{mu} is not antidominant")
        top = d.dominant(mu)[0]
        cor = d.simple_coroots
        n = solve([[c[r] for c in cor] for r in range(d.rank)], [t - m for t, m in zip(top, mu)])
        if n is None:
            raise ArithmeticError(f"{top} - {mu} is not in the coroot span")
        out = []

        def rec(i, v):
            if i == len(cor):
                v = _norm_vec(v)
                if d.is_antidominant(v):
                    out.append(v)
                return
            for k in range(int(n[i]) + 1):
                rec(i + 1, _add(v, tuple(k * x for x in cor[i])))

        rec(0, mu)
        return sorted(set(out), key=lambda v: (self.height(v), v))

    def lower_closure(self, support: Iterable[Sequence]) -> list[Vec]:
        out: set[Vec] = set()
        for mu in support:
            out.update(self.lower_set(mu))
        return sorted(out, key=lambda v: (self.height(v), v))

    # transform

    def _pi(self, lam):
        return self.ring.pi_power(_dot(self.xi, lam))

    def transform_coefficients(self, h: Mapping[Vec, object]) -> dict[Vec, object]:
        """sigma-coordinates of S_xi(sum c_mu psi_mu)."""
        out: dict[Vec, object] = {}
        for mu, c in h.items():
            if not c:
                continue
            for lam in self.lower_set(mu):
                v = self.coeff(lam, mu)
                if v:
                    term = self._pi(lam) * v * c
                    out[lam] = out[lam] + term if lam in out else term
        return {k: v for k, v in out.items() if v}

    def transform(self, h: Mapping[Vec, object]) -> GroupRingElt:
        return self.spec.sigma_combination(self.transform_coefficients(h), self.ring)

    def sigma_coefficients(self, x: GroupRingElt | Mapping[Vec, object]) -> dict[Vec, object]:
        if not isinstance(x, GroupRingElt):
            return {_norm_vec(k): v for k, v in x.items() if v}
        coeffs = self.spec.sigma_coefficients(x)
        if self.spec.sigma_combination(coeffs, self.ring) != x:
            raise NotInvariant("element is not invariant under the twisted Weyl action")
        return coeffs

    def inverse(self, x: GroupRingElt | Mapping[Vec, object]) -> dict[Vec, object]:
        """psi-coordinates of the preimage; the triangular system is solved
        over the lower closure of the support, highest elements first."""
        X = self.sigma_coefficients(x)
        a: dict[Vec, object] = {}
        for mu in self.lower_closure(X):
            rest = X.get(mu, self.ring.zero())
            for nu, c in a.items():
                if nu != mu:
                    rest = rest - self._pi(mu) * self.coeff(mu, nu) * c
            if rest:
                a[mu] = rest * self.ring.pi_power(-_dot(self.xi, mu))
        return a

    def normalized_image(self, mu: Sequence) -> dict[Vec, object]:
        """sigma-coordinates of S_xi(pi^{-<xi, mu>} psi_mu)."""
        return self.transform_coefficients({_norm_vec(mu): self.ring.pi_power(-_dot(self.xi, mu))})


# -- GL symmetric map -----------------------------------------------------------


def _elementary(vals: Sequence, k: int, ring: Ring):
    e = [ring.one()] + [ring.zero()] * k
    for v in vals:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


def gl_symmetric_map(zeta: Sequence, xi: Sequence, ring: Ring, datum: RootDatum | None = None) -> tuple:
    """(q^{-i(i-1)/2} pi^{-(a_1 + ... + a_i)} e_i(zeta))_{i=1..n}: the values
    of sigma at the cocharacters (1,...,1,0,...,0) for the character with
    coordinates zeta_i = q^{i-1} pi^{a_i} zeta(lam_i)."""
    n = len(zeta)
    if datum is not None and (not datum.is_gl or datum.rank != n):
        raise ValueError(f"symmetric map needs GL({n}), got {datum.tag}")
    if len(xi) != n:
        raise ValueError("xi and zeta have different lengths")
    out = []
    for i in range(1, n + 1):
        pref = ring.q_power(Fraction(-i * (i - 1), 2)) * ring.pi_power(-sum(xi[:i]))
        out.append(pref * _elementary(zeta, i, ring))
    return tuple(out)


def evaluate(x: GroupRingElt, chi: Sequence, ring: Ring):
    """Value of a group ring element at the character lam -> prod chi_j^{lam_j}."""
    total = ring.zero()
    for lam, c in x.terms:
        v = c
        for base, k in zip(chi, lam):
            k = int(k)
            v = v * (base ** k if k >= 0 else base.inverse() ** (-k))
        total = total + v
    return total


# -- compatibility with the Bernstein embedding ---------------------------------


@dataclass(frozen=True)
class CompatibilityResult:
    recovered: bool
    central: bool
    image: HeckeElt

    def __bool__(self):
        return self.recovered and self.central


def check_prop44(H: HeckeAlgebra, h: HeckeElt, xi: Sequence, satake: Satake | None = None) -> CompatibilityResult:
    """psi_0 * Theta_xi(S_xi(h)) == h, and Theta_xi(S_xi(h)) commutes with
    every tau_s and tau_omega."""
    if H.datum.rank > 3:
        raise ValueError("the check is limited to rank <= 3")
    sat = satake if satake is not None else Satake(H.datum, xi, H.ring)
    coeffs = H.spherical_coefficients(h)
    image = H.Theta_group_ring(sat.transform(coeffs), xi)
    recovered = H.multiply(H.psi0(), image) == h
    central = True
    for g in H.simple_reflections + H.omega_generators():
        t = H.tau(g)
        if H.multiply(t, image) != H.multiply(image, t):
            central = False
            break
    return CompatibilityResult(recovered, central, image)
