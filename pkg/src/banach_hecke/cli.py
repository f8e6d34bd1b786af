"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 negative decision (not in the domain, not
admissible, check failed), 2 usage or input error, 3 internal cross-check
disagreement.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cocycle import VARIANTS, CocycleSpec, MembershipDisagreement
from .exactlin import as_fraction, as_vector, format_fraction
from .hecke import HeckeAlgebra, HeckeElt, NonSpherical
from .isocrystal import (
    CycleInconsistent,
    FilteredIsocrystal,
    InfiniteFamily,
    NoAdmissibleFiltration,
    construct_admissible,
    gl2_classify,
    hn_filtration,
    is_weakly_admissible,
    pair_admissibility_criterion,
)
from .oracle import InterpolationError, JobTooLarge, Unstable, count_c, first_primes, degree_bound, interpolate_polynomial
from .polygon import newton_above_hodge, polygon_of, render_svg
from .root_datum import RootDatum
from .satake import (
    CoefficientTable,
    InterpolatedSource,
    MissingCoefficient,
    OracleSource,
    Satake,
    TableConflict,
    check_prop44,
)
from .scalars import FieldInvariants, LaurentPoly, LScalar, NumericRing, RationalRing, SymbolicRing


class Negative(Exception):
    """Carries the JSON payload of a negative decision."""

    def __init__(self, payload: dict):
        super().__init__("negative decision")
        self.payload = payload


# -- parsing and formatting ------------------------------------------------------


def parse_vec(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if text.startswith("["):
        return as_vector(str(x) for x in json.loads(text))
    return as_vector(x for x in text.split(",") if x.strip())


def parse_ints(text: str) -> tuple[int, ...]:
    v = parse_vec(text)
    if any(x.denominator != 1 for x in v):
        raise ValueError(f"{text!r} is not an integer vector")
    return tuple(int(x) for x in v)


def parse_field(text: str) -> FieldInvariants:
    parts = [int(x) for x in text.split(",")]
    if not 1 <= len(parts) <= 3:
        raise ValueError("--field expects p,e,f")
    parts += [1] * (3 - len(parts))
    return FieldInvariants(*parts)


def parse_datum(text: str) -> RootDatum:
    p = Path(text)
    if p.suffix == ".json" and p.exists():
        return RootDatum.from_json(json.loads(p.read_text()))
    return RootDatum.parse(text)


def fmt_vec(v) -> list[str]:
    return [format_fraction(x) for x in v]


def fmt_scalar(x):
    """Rationals as "num/den"; Laurent polynomials as [[k, "c"], ...];
    elements of Q(pi^(1/2)) as {"pi": [["t", "c"], ...]}."""
    if isinstance(x, LaurentPoly):
        return [[k, format_fraction(c)] for k, c in x.terms]
    if isinstance(x, LScalar):
        if all(t == 0 for t, _ in x.terms):
            return format_fraction(sum((c for _, c in x.terms), Fraction(0)))
        return {"pi": [[format_fraction(t), format_fraction(c)] for t, c in x.terms]}
    return format_fraction(x)


def parse_scalar(v, ring):
    if isinstance(v, list):
        return ring.from_poly(LaurentPoly.from_dict({int(k): as_fraction(str(c)) for k, c in v}))
    if isinstance(v, dict):
        fld = getattr(ring, "field", None)
        if fld is None or not isinstance(ring, NumericRing):
            raise ValueError("pi-valued coefficients need a numeric ring")
        return LScalar.make(fld, {as_fraction(str(t)): as_fraction(str(c)) for t, c in v["pi"]})
    return ring.const(as_fraction(str(v)))


def fmt_poly(poly: LaurentPoly) -> list[str]:
    return [format_fraction(c) for c in poly.coeffs()]


def read_json(args) -> object:
    if not args.json_file:
        raise ValueError("this command needs --json-file (use - for standard input)")
    text = sys.stdin.read() if args.json_file == "-" else Path(args.json_file).read_text()
    return json.loads(text)


def _field(args) -> FieldInvariants:
    return parse_field(args.field) if args.field else FieldInvariants(2)


def _datum(args, default: str | None = None) -> RootDatum:
    if args.datum:
        return parse_datum(args.datum)
    if default:
        return RootDatum.parse(default)
    raise ValueError("--datum is required")


def _xi(args, datum: RootDatum) -> tuple[int, ...]:
    return parse_ints(args.xi) if args.xi else (0,) * datum.rank


def _algebra_ring(args, xi=None):
    fld = _field(args)
    if getattr(args, "symbolic", False):
        if xi is not None and any(xi):
            raise ValueError("--symbolic works only with xi = 0")
        return SymbolicRing()
    return RationalRing(fld) if fld.e == 1 else NumericRing(fld)


# -- domain ---------------------------------------------------------------------------


def _spec(args) -> CocycleSpec:
    datum = _datum(args)
    return CocycleSpec(datum, _xi(args, datum), _field(args), args.variant)


def _coords(args, spec: CocycleSpec) -> str:
    if args.coords:
        return args.coords
    return "zeta" if spec.datum.is_gl else "raw"


def cmd_domain_check(args):
    spec = _spec(args)
    coords = _coords(args, spec)
    vals = parse_vec(args.vals)
    member = spec.membership(vals, method=args.method, coords=coords)
    out = {"member": member, "vals": fmt_vec(vals), "coords": coords, "method": args.method}
    if not member:
        raise Negative(out)
    return out


def cmd_domain_presentation(args):
    spec = _spec(args)
    coords = _coords(args, spec)
    return {
        "variant": spec.variant,
        "coords": coords,
        "vertices": [fmt_vec(v) for v in spec.hull_vertices()],
        "inequalities": [{"lambda": fmt_vec(lam), "bound": format_fraction(b)}
                         for lam, b in spec.presentation(coords)],
    }


# -- polygon -----------------------------------------------------------------------------


def cmd_polygon_compare(args):
    newton = polygon_of(sorted(parse_vec(args.newton)))
    hodge = polygon_of(sorted(parse_vec(args.hodge)))
    above = newton_above_hodge(newton, hodge)
    if args.svg:
        Path(args.svg).write_text(render_svg(newton, hodge))
    out = {"above": above, "newton": newton.to_json(), "hodge": hodge.to_json()}
    if not above:
        raise Negative(out)
    return out


# -- isocrystal ----------------------------------------------------------------------------


def _xi_n(args, n: int) -> tuple[int, ...]:
    return parse_ints(args.xi) if args.xi else (0,) * n


def _labels(args):
    return [x.strip() for x in args.labels.split(",")] if args.labels else None


def cmd_iso_check(args):
    d = FilteredIsocrystal.from_json(read_json(args))
    res = is_weakly_admissible(d)
    out = {"admissible": res.admissible}
    if not res.admissible:
        out.update({"violating": list(res.violating.prefix), "t_H": format_fraction(res.t_H),
                    "t_N": format_fraction(res.t_N)})
        raise Negative(out)
    return out


def cmd_iso_construct(args):
    vals = parse_vec(args.vals)
    try:
        d = construct_admissible(vals, _xi_n(args, len(vals)), _field(args), _labels(args))
    except NoAdmissibleFiltration as exc:
        raise Negative({"admissible": False, "error": str(exc),
                        "newton": exc.newton.to_json() if exc.newton else None,
                        "hodge": exc.hodge.to_json() if exc.hodge else None})
    return d.to_json()


def cmd_iso_classify(args):
    try:
        res = gl2_classify(_xi_n(args, 2), parse_vec(args.vals), _field(args), _labels(args),
                           semisimple=not args.jordan)
    except NoAdmissibleFiltration as exc:
        raise Negative({"admissible": False, "error": str(exc)})
    return {"case": res.case, "count": res.count, "lines": list(res.admissible_lines)}


def cmd_iso_hn(args):
    d = FilteredIsocrystal.from_json(read_json(args))
    return {"chain": [{"subspace": list(s.prefix), "dim": s.dim, "slope": format_fraction(sl)}
                      for s, sl in hn_filtration(d)]}


def cmd_iso_pair(args):
    datum = parse_datum(args.datum) if args.datum else None
    vals = parse_vec(args.vals)
    ok = pair_admissibility_criterion(_xi_n(args, len(vals)), vals, _field(args), args.r, datum)
    out = {"admissible": ok, "vals": fmt_vec(vals), "r": args.r}
    if not ok:
        raise Negative(out)
    return out


# -- hecke -------------------------------------------------------------------------------------


def _hecke(args, xi=None) -> HeckeAlgebra:
    return HeckeAlgebra(_datum(args, "GL2"), _algebra_ring(args, xi))


def _hecke_json(H: HeckeAlgebra, h) -> list[dict]:
    return H.to_json(h, fmt=fmt_scalar)


def _hecke_read(H: HeckeAlgebra, items) -> object:
    out = None
    for it in items:
        x = H.elt(tuple(it.get("w", [])), [as_fraction(str(v)) for v in it["lambda"]])
        t = H.tau(x, parse_scalar(it.get("coeff", "1"), H.ring))
        out = t if out is None else out + t
    return out if out is not None else HeckeElt()


def _word(text: str | None) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip()) if text else ()


def cmd_hecke_mul(args):
    H = _hecke(args)
    d = read_json(args)
    factors = d["factors"] if isinstance(d, dict) else d
    h = H.product(*(_hecke_read(H, f) for f in factors))
    return {"product": _hecke_json(H, h)}


def cmd_hecke_inverse(args):
    H = _hecke(args)
    x = H.elt(_word(args.w), parse_ints(args.lam) if args.lam else (0,) * H.datum.rank)
    return {"inverse": _hecke_json(H, H.tau_inverse(x))}


def cmd_hecke_theta(args):
    datum = _datum(args, "GL2")
    xi = parse_ints(args.xi) if args.xi else None
    H = HeckeAlgebra(datum, _algebra_ring(args, xi))
    lam = parse_ints(args.lam)
    if xi is not None:
        h = H.multiply(H.tau(H.elt(_word(args.w), (0,) * datum.rank)), H.Theta_xi(lam, xi))
    else:
        h = H.theta(H.elt(_word(args.w), lam))
    return {"theta": _hecke_json(H, h)}


def cmd_hecke_norm(args):
    H = _hecke(args)
    if H.ring == SymbolicRing():
        raise ValueError("norms need a numeric ring")
    xi = _xi(args, H.datum)
    d = read_json(args)
    h = _hecke_read(H, d["element"] if isinstance(d, dict) else d)
    return {"valuation": format_fraction(H.norm_xi(h, xi)), "xi": list(xi)}


def _satake_source(args):
    if getattr(args, "prime", None):
        return OracleSource(args.prime)
    if args.table:
        return InterpolatedSource(CoefficientTable.load(args.table), args.table)
    return InterpolatedSource()


def _psi_input(args, datum: RootDatum, ring):
    if getattr(args, "lam", None):
        return {parse_ints(args.lam): ring.one()}
    d = read_json(args)
    items = d["psi"] if isinstance(d, dict) else d
    return {tuple(int(as_fraction(str(v))) for v in it["lambda"]):
            parse_scalar(it.get("coeff", "1"), ring) for it in items}


def cmd_hecke_prop44(args):
    datum = _datum(args, "GL2")
    xi = _xi(args, datum)
    fld = _field(args)
    ring = RationalRing(fld) if fld.e == 1 else NumericRing(fld)
    if getattr(args, "prime", None) and fld != FieldInvariants(args.prime):
        raise ValueError("--prime must match the field p with e = f = 1")
    H = HeckeAlgebra(datum, ring)
    coeffs = _psi_input(args, datum, ring)
    h = H.spherical(coeffs)
    sat = Satake(datum, xi, ring, _satake_source(args), fld)
    res = check_prop44(H, h, xi, sat)
    out = {"holds": bool(res), "recovered": res.recovered, "central": res.central}
    if not res:
        raise Negative(out)
    return out


# -- satake ----------------------------------------------------------------------------------


def _satake(args) -> Satake:
    datum = _datum(args, "GL2")
    xi = _xi(args, datum)
    fld = _field(args)
    if getattr(args, "prime", None):
        ring = RationalRing(FieldInvariants(args.prime)) if not args.field else RationalRing(fld)
    elif args.symbolic or not any(xi):
        ring = SymbolicRing() if not any(xi) else None
    else:
        ring = RationalRing(fld) if fld.e == 1 else NumericRing(fld)
    if ring is None:
        raise ValueError("--symbolic works only with xi = 0")
    return Satake(datum, xi, ring, _satake_source(args), fld)


def _coeff_list(d: dict) -> list[dict]:
    return [{"lambda": list(k), "coeff": fmt_scalar(v)} for k, v in sorted(d.items())]


def cmd_satake_transform(args):
    S = _satake(args)
    h = _psi_input(args, S.datum, S.ring)
    return {"sigma": _coeff_list(S.transform_coefficients(h)), "xi": list(S.xi)}


def cmd_satake_invert(args):
    S = _satake(args)
    d = read_json(args)
    items = d["sigma"] if isinstance(d, dict) else d
    x = {tuple(int(v) for v in it["lambda"]): parse_scalar(it.get("coeff", "1"), S.ring) for it in items}
    for lam in x:
        if not S.datum.is_antidominant(lam):
            raise ValueError(f"sigma index {lam} is not antidominant")
    return {"psi": _coeff_list(S.inverse(x)), "xi": list(S.xi)}


def cmd_satake_coeff(args):
    lam, mu = parse_ints(args.lam), parse_ints(args.mu)
    if args.prime:
        return {"lambda": list(lam), "mu": list(mu), "prime": args.prime,
                "count": count_c(lam, mu, args.prime).count}
    src = _satake_source(args)
    return {"lambda": list(lam), "mu": list(mu), "poly": fmt_poly(src(lam, mu))}


# -- oracle --------------------------------------------------------------------------------


def cmd_oracle_count(args):
    lam, mu = parse_ints(args.lam), parse_ints(args.mu)
    res = count_c(lam, mu, args.prime, args.depth)
    return {"lambda": list(lam), "mu": list(mu), "prime": args.prime, "count": res.count,
            "depth": res.depth, "stable": res.stable,
            "counts": [{"depth": d, "count": c} for d, c in res.counts]}


def cmd_oracle_interpolate(args):
    lam, mu = parse_ints(args.lam), parse_ints(args.mu)
    poly = interpolate_polynomial(lam, mu)
    out_path = args.out or args.table
    if out_path:
        CoefficientTable.load(out_path).append(out_path, lam, mu, poly)
    return {"lambda": list(lam), "mu": list(mu), "poly": fmt_poly(poly),
            "primes": first_primes(degree_bound(mu) + 2)}


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", help="GL<n>, PGL2 or a root datum JSON file")
    common.add_argument("--field", help="p,e,f (default 2,1,1)")
    common.add_argument("--xi", help="dominant weight, comma separated")
    common.add_argument("--json-file", dest="json_file", help="JSON input file, - for stdin")
    common.add_argument("--table", help="coefficient table (JSON lines)")
    common.add_argument("--svg", help="write an SVG plot to this path")

    parser = argparse.ArgumentParser(prog="banach-hecke", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, func, help_):
        p = group.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    dom = groups.add_parser("domain", help="affinoid domains").add_subparsers(dest="cmd", required=True)
    for name, func in (("check", cmd_domain_check), ("presentation", cmd_domain_presentation)):
        p = sub(dom, name, func, f"domain {name}")
        p.add_argument("--variant", default="gamma_xi", choices=VARIANTS)
        p.add_argument("--coords", choices=("raw", "zeta"),
                       help="valuation coordinates (default zeta for GL, raw otherwise)")
        if name == "check":
            p.add_argument("--vals", required=True)
            p.add_argument("--method", default="all", choices=("all", "hull", "dominance", "generators"))

    pol = groups.add_parser("polygon", help="Newton/Hodge polygons").add_subparsers(dest="cmd", required=True)
    p = sub(pol, "compare", cmd_polygon_compare, "is Newton on or above Hodge")
    p.add_argument("--newton", required=True)
    p.add_argument("--hodge", required=True)

    iso = groups.add_parser("isocrystal", help="filtered isocrystals").add_subparsers(dest="cmd", required=True)
    sub(iso, "check", cmd_iso_check, "weak admissibility of a JSON isocrystal")
    sub(iso, "hn", cmd_iso_hn, "Harder-Narasimhan filtration")
    for name, func in (("construct", cmd_iso_construct), ("classify-gl2", cmd_iso_classify)):
        p = sub(iso, name, func, name)
        p.add_argument("--vals", required=True)
        p.add_argument("--labels")
        if name == "classify-gl2":
            p.add_argument("--jordan", action="store_true", help="non-semisimple Frobenius for equal labels")
    p = sub(iso, "pair-criterion", cmd_iso_pair, "admissible pair criterion")
    p.add_argument("--vals", required=True)
    p.add_argument("--r", type=int, default=1)

    hk = groups.add_parser("hecke", help="Iwahori-Hecke algebra").add_subparsers(dest="cmd", required=True)
    p = sub(hk, "mul", cmd_hecke_mul, "product of JSON elements")
    p.add_argument("--symbolic", action="store_true")
    for name, func in (("inverse", cmd_hecke_inverse), ("theta", cmd_hecke_theta)):
        p = sub(hk, name, func, name)
        p.add_argument("--w", help="finite Weyl word, e.g. 0,1")
        p.add_argument("--lambda", dest="lam", required=(name == "theta"))
        p.add_argument("--symbolic", action="store_true")
    sub(hk, "norm", cmd_hecke_norm, "xi-norm valuation")
    p = sub(hk, "check-prop44", cmd_hecke_prop44, "Satake/Bernstein compatibility")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--prime", type=int, help="use oracle counts at this prime")

    sat = groups.add_parser("satake", help="Satake transform").add_subparsers(dest="cmd", required=True)
    for name, func in (("transform", cmd_satake_transform), ("invert", cmd_satake_invert)):
        p = sub(sat, name, func, name)
        p.add_argument("--prime", type=int, help="use oracle counts at this prime")
        p.add_argument("--symbolic", action="store_true")
        if name == "transform":
            p.add_argument("--lambda", dest="lam")
    p = sub(sat, "coeff", cmd_satake_coeff, "c(lambda, mu)")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--prime", type=int)

    orc = groups.add_parser("oracle", help="coset-count oracle").add_subparsers(dest="cmd", required=True)
    p = sub(orc, "count", cmd_oracle_count, "count c(lambda, mu) at a prime")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--depth", type=int)
    p = sub(orc, "interpolate", cmd_oracle_interpolate, "interpolate c(lambda, mu) in q")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--out", help="append the polynomial to this table")
    return parser


_NUMERIC = re.compile(r"^-[0-9./,\-\s]*$")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Let "--vals -1,0" mean "--vals=-1,0"."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NUMERIC.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


INTERNAL = (MembershipDisagreement, CycleInconsistent, Unstable, InterpolationError, TableConflict)
INPUT = (ValueError, KeyError, TypeError, LookupError, JobTooLarge, InfiniteFamily, NonSpherical,
         MissingCoefficient, FileNotFoundError, json.JSONDecodeError, ZeroDivisionError)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
        code = 0
    except Negative as neg:
        out, code = neg.payload, 1
    except INTERNAL as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 3
    except INPUT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(out, sort_keys=True))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
