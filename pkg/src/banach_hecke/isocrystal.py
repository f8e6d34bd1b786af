"""Filtered isocrystals with a finite lattice of Frobenius-stable subspaces.

The Frobenius is never a matrix over a concrete field.  It is recorded as a
list of blocks, one per eigenvalue: an opaque label, the valuation of the
eigenvalue, and the Jordan partition.  Vectors are written in the Jordan
basis, blocks in order.  When every label has a single Jordan block, the
stable subspaces are exactly the products of the prefixes span(e_1..e_j) of
each block; this module only works in that case and refuses the others.

Filtrations are explicit: a strictly increasing list of jumps b_1 < ... < b_k
(rationals, so jumps in (1/r)Z are allowed) and a basis of Fil^{b_i} for each.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cocycle import CocycleSpec
from .exactlin import as_fraction, as_vector, format_fraction, rank
from .polygon import Polygon, newton_above_hodge, polygon_of
from .root_datum import RootDatum
from .scalars import FieldInvariants

__all__ = [
    "Block",
    "FrobeniusSpec",
    "Subspace",
    "Flag",
    "FilteredIsocrystal",
    "LIsocrystal",
    "AdmissibilityResult",
    "GL2Classification",
    "InfiniteFamily",
    "NotInvariant",
    "NoAdmissibleFiltration",
    "CycleInconsistent",
    "filtration_type",
    "t_H",
    "t_N_L",
    "t_N",
    "newton_hodge_check",
    "invariant_subspaces",
    "is_weakly_admissible",
    "construct_admissible",
    "generic_flag",
    "hn_filtration",
    "gl2_classify",
    "expand_isocrystal",
    "contract_isocrystal",
    "pair_admissibility_criterion",
    "r_filtered_isocrystal",
]


class InfiniteFamily(ValueError):
    """Some eigenvalue has two or more Jordan blocks."""


class NotInvariant(ValueError):
    pass


class NoAdmissibleFiltration(ValueError):
    def __init__(self, msg: str, newton: Polygon | None = None, hodge: Polygon | None = None):
        super().__init__(msg)
        self.newton = newton
        self.hodge = hodge


class CycleInconsistent(ValueError):
    pass


# --------------------------------------------------------------------------
# Frobenius data


@dataclass(frozen=True)
class Block:
    label: object
    val: Fraction
    jordan: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "val", as_fraction(self.val))
        object.__setattr__(self, "jordan", tuple(int(x) for x in self.jordan))
        if not self.jordan or any(x < 1 for x in self.jordan):
            raise ValueError(f"bad Jordan partition {self.jordan}")

    @property
    def dim(self) -> int:
        return sum(self.jordan)


@dataclass(frozen=True)
class FrobeniusSpec:
    blocks: tuple[Block, ...]

    def __post_init__(self):
        labels = [b.label for b in self.blocks]
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct; merge repeated eigenvalues into one block")

    @classmethod
    def from_labeled(cls, vals: Sequence, labels: Sequence | None = None,
                     semisimple: bool = False) -> "FrobeniusSpec":
        """Group equal labels into one eigenvalue.  A repeated label becomes a
        single Jordan block unless ``semisimple`` is set."""
        vals = as_vector(vals)
        labels = list(labels) if labels is not None else [f"z{i + 1}" for i in range(len(vals))]
        if len(labels) != len(vals):
            raise ValueError("one label per valuation expected")
        grouped: dict[object, list[Fraction]] = {}
        for lab, v in zip(labels, vals):
            grouped.setdefault(lab, []).append(v)
        blocks = []
        for lab, vs in grouped.items():
            if len(set(vs)) != 1:
                raise ValueError(f"label {lab!r} carries different valuations {vs}")
            jordan = (1,) * len(vs) if semisimple else (len(vs),)
            blocks.append(Block(lab, vs[0], jordan))
        return cls(tuple(blocks))

    @classmethod
    def from_json(cls, d: dict) -> "FrobeniusSpec":
        return cls(tuple(Block(b["label"], as_fraction(str(b["val"])), tuple(b.get("jordan", [1])))
                         for b in d["blocks"]))

    def to_json(self) -> dict:
        return {"blocks": [{"label": b.label, "val": format_fraction(b.val), "jordan": list(b.jordan)}
                           for b in self.blocks]}

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def offsets(self) -> list[int]:
        out, k = [], 0
        for b in self.blocks:
            out.append(k)
            k += b.dim
        return out

    def valuations(self) -> tuple[Fraction, ...]:
        """Eigenvalue valuations with multiplicity, in basis order."""
        return tuple(b.val for b in self.blocks for _ in range(b.dim))

    def shape(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b.jordan for b in self.blocks)


@dataclass(frozen=True, order=True)
class Subspace:
    """A stable subspace: the first ``prefix[i]`` Jordan basis vectors of block i."""

    prefix: tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum(self.prefix)

    def contains(self, other: "Subspace") -> bool:
        return all(a >= b for a, b in zip(self.prefix, other.prefix))

    def coordinates(self, fr: FrobeniusSpec) -> list[int]:
        return [off + j for off, k in zip(fr.offsets, self.prefix) for j in range(k)]

    def basis(self, fr: FrobeniusSpec) -> list[tuple[int, ...]]:
        n = fr.dim
        return [tuple(int(i == c) for i in range(n)) for c in self.coordinates(fr)]


def invariant_subspaces(fr: FrobeniusSpec) -> list[Subspace]:
    for b in fr.blocks:
        if len(b.jordan) > 1:
            raise InfiniteFamily(
                f"eigenvalue {b.label!r} has Jordan partition {b.jordan}: stable subspaces form a continuum")
    return [Subspace(p) for p in itertools.product(*(range(b.dim + 1) for b in fr.blocks))]


def _resolve_subspace(fr: FrobeniusSpec, sub) -> Subspace:
    if isinstance(sub, Subspace):
        return sub
    vecs = [as_vector(v) for v in sub]
    r = rank(vecs) if vecs else 0
    for s in invariant_subspaces(fr):
        if s.dim == r and (r == 0 or rank(vecs + s.basis(fr)) == r):
            return s
    raise NotInvariant("subspace is not Frobenius-stable")


def t_N_L(fr: FrobeniusSpec, sub: Subspace) -> Fraction:
    return sum((b.val * k for b, k in zip(fr.blocks, sub.prefix)), Fraction(0))


# --------------------------------------------------------------------------
# Filtrations


@dataclass(frozen=True)
class Flag:
    jumps: tuple[Fraction, ...]
    bases: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "jumps", as_vector(self.jumps))
        object.__setattr__(self, "bases", tuple(tuple(as_vector(v) for v in b) for b in self.bases))
        if len(self.jumps) != len(self.bases) or not self.jumps:
            raise ValueError("one basis per jump expected")
        if any(a >= b for a, b in zip(self.jumps, self.jumps[1:])):
            raise ValueError("jumps must increase strictly")
        n = len(self.bases[0][0]) if self.bases[0] else 0
        dims = []
        for b in self.bases:
            if any(len(v) != n for v in b):
                raise ValueError("basis vectors of different lengths")
            if rank(b) != len(b):
                raise ValueError("filtration step basis is not independent")
            dims.append(len(b))
        if dims[0] != n:
            raise ValueError("first filtration step must be the whole space")
        if any(a <= b for a, b in zip(dims, dims[1:])) or dims[-1] == 0:
            raise ValueError("filtration steps must strictly decrease and end nonzero")
        for big, small in zip(self.bases, self.bases[1:]):
            if rank(list(big) + list(small)) != len(big):
                raise ValueError("filtration steps are not nested")

    @property
    def ambient(self) -> int:
        return len(self.bases[0])

    @property
    def r(self) -> int:
        """Least r with all jumps in (1/r)Z."""
        return math.lcm(*(j.denominator for j in self.jumps))

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    @classmethod
    def from_json(cls, d: dict) -> "Flag":
        return cls(tuple(as_fraction(str(j)) for j in d["jumps"]),
                   tuple(tuple(tuple(as_fraction(str(x)) for x in v) for v in b) for b in d["bases"]))

    def to_json(self) -> dict:
        return {"jumps": [format_fraction(j) for j in self.jumps],
                "bases": [[[format_fraction(x) for x in v] for v in b] for b in self.bases]}


def _dim_meet_coordinate(basis, coords: list[int], n: int) -> int:
    """dim(span basis  ∩  span of the coordinate vectors ``coords``)."""
    rest = [i for i in range(n) if i not in set(coords)]
    if not basis:
        return 0
    if not rest:
        return len(basis)
    return len(basis) - rank([[v[i] for i in rest] for v in basis])


@dataclass(frozen=True)
class FilteredIsocrystal:
    frobenius: FrobeniusSpec
    flag: Flag
    field: FieldInvariants = field(default_factory=lambda: FieldInvariants(2))

    def __post_init__(self):
        if self.flag.ambient != self.frobenius.dim:
            raise ValueError("Frobenius and filtration live on spaces of different dimension")

    @classmethod
    def from_json(cls, d: dict) -> "FilteredIsocrystal":
        fl = d.get("field", {"p": 2})
        return cls(FrobeniusSpec.from_json(d["frobenius"]), Flag.from_json(d["flag"]),
                   FieldInvariants(int(fl["p"]), int(fl.get("e", 1)), int(fl.get("f", 1))))

    def to_json(self) -> dict:
        return {"frobenius": self.frobenius.to_json(), "flag": self.flag.to_json(),
                "field": {"p": self.field.p, "e": self.field.e, "f": self.field.f}}

    @property
    def dim(self) -> int:
        return self.frobenius.dim

    def full(self) -> Subspace:
        return Subspace(tuple(b.dim for b in self.frobenius.blocks))

    def t_H(self, sub) -> Fraction:
        sub = _resolve_subspace(self.frobenius, sub)
        coords = sub.coordinates(self.frobenius)
        meets = [_dim_meet_coordinate(b, coords, self.dim) for b in self.flag.bases] + [0]
        return sum((j * (meets[k] - meets[k + 1]) for k, j in enumerate(self.flag.jumps)), Fraction(0))

    def t_N_L(self, sub) -> Fraction:
        return t_N_L(self.frobenius, _resolve_subspace(self.frobenius, sub))


def filtration_type(d: FilteredIsocrystal | Flag) -> tuple[Fraction, ...]:
    flag = d.flag if isinstance(d, FilteredIsocrystal) else d
    dims = flag.dims() + [0]
    out: list[Fraction] = []
    for k, j in enumerate(flag.jumps):
        out += [j] * (dims[k] - dims[k + 1])
    return tuple(out)


def t_H(d: FilteredIsocrystal, sub) -> Fraction:
    return d.t_H(sub)


def t_N(d: FilteredIsocrystal, sub) -> Fraction:
    return d.t_N_L(sub)


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    violating: Subspace | None = None
    t_H: Fraction | None = None
    t_N: Fraction | None = None

    def __bool__(self):
        return self.admissible


def is_weakly_admissible(d: FilteredIsocrystal) -> AdmissibilityResult:
    full = d.full()
    th, tn = d.t_H(full), d.t_N_L(full)
    if th != tn:
        return AdmissibilityResult(False, full, th, tn)
    # smallest subspaces first so the certificate is a minimal witness
    for sub in sorted(invariant_subspaces(d.frobenius), key=lambda s: (s.dim, s.prefix)):
        if sub.dim in (0, d.dim):
            continue
        th, tn = d.t_H(sub), d.t_N_L(sub)
        if th > tn:
            return AdmissibilityResult(False, sub, th, tn)
    return AdmissibilityResult(True)


def hn_filtration(d: FilteredIsocrystal) -> list[tuple[Subspace, Fraction]]:
    """Harder-Narasimhan chain: (subobject, slope of its step) with slope
    (t_H - t_N)/dim strictly decreasing along the chain."""
    subs = invariant_subspaces(d.frobenius)
    th = {s: d.t_H(s) for s in subs}
    tn = {s: d.t_N_L(s) for s in subs}
    cur = Subspace(tuple(0 for _ in d.frobenius.blocks))
    chain = []
    while cur.dim < d.dim:
        best = None
        for s in subs:
            if s.dim <= cur.dim or not s.contains(cur):
                continue
            slope = Fraction(th[s] - th[cur] - tn[s] + tn[cur], s.dim - cur.dim)
            key = (slope, s.dim)
            if best is None or key > best[0]:
                best = (key, s)
        (slope, _), s = best
        chain.append((s, slope))
        cur = s
    return chain


# --------------------------------------------------------------------------
# Construction of admissible filtrations


def generic_flag(type_: Sequence, shift: int = 0) -> Flag:
    """Filtration of the given (increasing) type spanned by Vandermonde vectors
    (1, t, t^2, ...) with t = 1 + shift, 2 + shift, ...; all minors of such a
    matrix are nonzero, so the flag is transverse to every coordinate flag."""
    type_ = sorted(as_vector(type_))
    n = len(type_)
    vecs = [tuple(Fraction(t) ** k for k in range(n)) for t in range(1 + shift, n + 1 + shift)]
    jumps = sorted(set(type_))
    bases = [tuple(v for v, b in zip(vecs, type_) if b >= j) for j in jumps]
    return Flag(tuple(jumps), tuple(bases))


def construct_admissible(vals: Sequence, xi: Sequence, fld: FieldInvariants,
                         labels: Sequence | None = None) -> FilteredIsocrystal:
    """A weakly admissible isocrystal of type xi_L + eta~_L whose Frobenius has
    the given labeled eigenvalue valuations (one Jordan block per label)."""
    vals = as_vector(vals)
    n = len(vals)
    spec = CocycleSpec(RootDatum.gl(n), tuple(xi), fld)
    hodge_type = spec.gl_coordinates((0,) * n)
    if not spec.membership(vals, method="dominance", coords="zeta"):
        newton = polygon_of(sorted(vals))
        hodge = polygon_of(hodge_type)
        raise NoAdmissibleFiltration(
            f"valuations {[format_fraction(v) for v in vals]} lie outside the domain: "
            f"Newton polygon {newton.to_json()} is not above Hodge polygon {hodge.to_json()}",
            newton, hodge)
    fr = FrobeniusSpec.from_labeled(vals, labels)
    for shift in range(8):
        d = FilteredIsocrystal(fr, generic_flag(hodge_type, shift), fld)
        if is_weakly_admissible(d):
            return d
    raise RuntimeError("generic filtrations unexpectedly failed the admissibility check")


# --------------------------------------------------------------------------
# GL2 classification


@dataclass(frozen=True)
class GL2Classification:
    case: int
    count: int
    admissible_lines: tuple[str, ...]


def gl2_classify(xi: Sequence, vals: Sequence, fld: FieldInvariants,
                 labels: Sequence | None = None, semisimple: bool = True) -> GL2Classification:
    vals = as_vector(vals)
    if len(vals) != 2 or len(xi) != 2:
        raise ValueError("GL2 classification needs two valuations and xi of length 2")
    labels = list(labels) if labels is not None else ["z1", "z2"]
    spec = CocycleSpec(RootDatum.gl(2), tuple(xi), fld)
    if not spec.membership(vals, method="dominance", coords="zeta"):
        raise NoAdmissibleFiltration(f"valuations {[format_fraction(v) for v in vals]} lie outside the domain")
    jordan = labels[0] == labels[1]
    if jordan and semisimple:
        raise InfiniteFamily("a scalar Frobenius has infinitely many stable lines")
    fr = FrobeniusSpec.from_labeled(vals, labels)
    a1, a2 = spec.xi
    b1, b2 = spec.gl_coordinates((0, 0))
    if jordan:
        case = 3
        lines = {"stable": (1, 0), "generic": (1, 1)}
    else:
        case = 1 if min(vals) == a1 else 2
        lines = {"e1": (1, 0), "e2": (0, 1), "generic": (1, 1)}
    good = []
    for name, line in lines.items():
        flag = Flag((Fraction(b1), Fraction(b2)), (((1, 0), (0, 1)), (line,)))
        if is_weakly_admissible(FilteredIsocrystal(fr, flag, fld)):
            good.append(name)
    return GL2Classification(case, len(good), tuple(good))


# --------------------------------------------------------------------------
# Isocrystals over L with coefficients in K


@dataclass(frozen=True)
class LIsocrystal:
    """f graded pieces with transition maps piece_i -> piece_{i-1} (indices
    mod f).  ``maps[i]`` is None for an identity map, otherwise the
    eigen-data of the map in a common Jordan basis."""

    f: int
    dim: int
    maps: tuple[FrobeniusSpec | None, ...]
    flag: Flag | None = None
    field: FieldInvariants = field(default_factory=lambda: FieldInvariants(2))
    k_over_l: int = 1

    def __post_init__(self):
        if self.f < 1 or len(self.maps) != self.f:
            raise ValueError("need exactly f transition maps")
        for m in self.maps:
            if m is not None and m.dim != self.dim:
                raise CycleInconsistent("transition map of the wrong dimension")

    def t_N(self) -> Fraction:
        """[K:L] times val_L of det_K of the Frobenius on the whole module."""
        tot = sum((b.val * b.dim for m in self.maps if m is not None for b in m.blocks), Fraction(0))
        return self.k_over_l * tot

    def t_H(self) -> Fraction:
        if self.flag is None:
            return Fraction(0)
        return self.k_over_l * sum(filtration_type(self.flag), Fraction(0))


def expand_isocrystal(d: FilteredIsocrystal | FrobeniusSpec, f: int, k_over_l: int = 1) -> LIsocrystal:
    """Put the Frobenius on piece 1 and identities elsewhere."""
    if isinstance(d, FilteredIsocrystal):
        fr, flag, fld = d.frobenius, d.flag, d.field
    else:
        fr, flag, fld = d, None, FieldInvariants(2)
    return LIsocrystal(f, fr.dim, (fr,) + (None,) * (f - 1), flag, fld, k_over_l)


def contract_isocrystal(m: LIsocrystal) -> FilteredIsocrystal | FrobeniusSpec:
    """Piece 1 with the f-fold composite of the transition maps."""
    active = [x for x in m.maps if x is not None]
    if not active:
        composite = FrobeniusSpec((Block("1", Fraction(0), (1,) * m.dim),))
    else:
        shape = active[0].shape()
        if any(x.shape() != shape for x in active):
            raise CycleInconsistent("transition maps do not share a Jordan shape")
        blocks = []
        for i, base in enumerate(active[0].blocks):
            parts = [x.blocks[i] for x in active]
            label = parts[0].label if len(parts) == 1 else tuple(b.label for b in parts)
            blocks.append(Block(label, sum((b.val for b in parts), Fraction(0)), base.jordan))
        composite = FrobeniusSpec(tuple(blocks))
    if m.flag is None:
        return composite
    return FilteredIsocrystal(composite, m.flag, m.field)


# --------------------------------------------------------------------------
# Admissible pairs


def _check_r(spec: CocycleSpec, r: int):
    if any((r * as_fraction(x)).denominator != 1 for x in spec.eta_L):
        raise ValueError(f"r={r} does not make r*eta_L integral")


def r_filtered_isocrystal(xi: Sequence, vals: Sequence, fld: FieldInvariants, r: int = 1) -> FilteredIsocrystal:
    """Isocrystal with distinct eigenvalues of the given valuations and a
    generic filtration of type xi + eta_L, jumps in (1/r)Z."""
    n = len(vals)
    spec = CocycleSpec(RootDatum.gl(n), tuple(xi), fld, "normalized")
    _check_r(spec, r)
    fr = FrobeniusSpec.from_labeled(vals)
    return FilteredIsocrystal(fr, generic_flag(spec.center), fld)


def pair_admissibility_criterion(xi: Sequence, vals: Sequence, fld: FieldInvariants, r: int = 1,
                                 datum: RootDatum | None = None) -> bool:
    """val(zeta)^dom <= eta_L + xi_L.  For GL(n) the answer is cross-checked
    against an r-filtered isocrystal with a generic filtration."""
    datum = datum or RootDatum.gl(len(vals))
    spec = CocycleSpec(datum, tuple(xi), fld, "normalized")
    _check_r(spec, r)
    verdict = spec.membership(vals, method="dominance")
    if datum.is_gl:
        d = r_filtered_isocrystal(xi, vals, fld, r)
        if d.flag.r > r:
            raise ValueError(f"jumps {d.flag.jumps} are not in (1/{r})Z")
        if bool(is_weakly_admissible(d)) != verdict:
            raise RuntimeError("normalized-domain membership and the r-filtered isocrystal disagree")
    return verdict


def newton_hodge_check(vals: Sequence, hodge_type: Sequence) -> bool:
    return newton_above_hodge(polygon_of(sorted(as_vector(vals))), polygon_of(sorted(as_vector(hodge_type))))

