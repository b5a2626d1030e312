"""Command-line surface: every operation behind one executable.

Reports are deterministic for fixed inputs: collections are emitted in
canonical order and timings are only included when --timings is passed (the
timings_ms field is null otherwise), so default output is byte-identical
across runs.  Exit codes: 0 success, 1 input error, 2 Unknown verdict under
--strict.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .arith import ZpViolationError, is_prime
from .elliptic import (hasse_closed, hasse_coeff, supersingular_report,
                       write_hasse_table)
from .fedder import fpt_bounds, is_fpure_pair, nu
from .fibration import (DEFAULT_BIGRADED_PMAX, cbf_iii_check,
                        f_discriminant_legendre, is_kgfr_legendre, prime_scan,
                        total_space_gfs)
from .gsplit import (DEFAULT_EMAX, DEFAULT_POINT_BUDGET, DoubleCover,
                     P1Divisor, gfr_p1_bounded, gfs_bigraded_hypersurface,
                     gfs_cy_hypersurface, gfs_p1, parse_divisor, parse_point,
                     pushforward_splitting_check)
from .kappa import CurveSectionGrowth, check_superadditivity, kappa_estimate
from .mpoly import PolyParseError, format_poly, parse_poly

SCHEMA_VERSION = "1"


def _opt(value, default):
    """Flag default that treats 0 as a real value, unlike `or`."""
    return default if value is None else value


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on input errors, not argparse's 2
        raise CliError(message)


def _require_prime(p: int) -> int:
    if p is None:
        raise CliError("--p is required")
    if p < 3 or not is_prime(p):
        raise CliError(f"p must be an odd prime >= 3, got {p}")
    return p


def _parse_lambda(text: str, p: int):
    pt = parse_point(text, p)
    if pt.is_infinity:
        raise CliError("lambda must be finite")
    return pt.value


def _fraction_dict(fr: Fraction) -> dict:
    return {"num": fr.numerator, "den": fr.denominator}


def _divisor_payload(B: P1Divisor) -> list[dict]:
    return [{"point": str(pt), "num": c.numerator, "den": c.denominator}
            for pt, c in B.sorted_entries()]


# -- subcommand handlers -------------------------------------------------------

def _elt_str(x) -> str:
    from .gsplit import P1Point
    return str(P1Point(x))


def _cmd_hasse(args) -> dict:
    p = _require_prime(args.p)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            rows = write_hasse_table(p, fh)
        if args.lam is None:
            return {"table_rows": rows, "out": args.out}
    if args.lam is None:
        raise CliError("--lambda is required (or --out for the full table)")
    lam = _parse_lambda(args.lam, p)
    closed = hasse_closed(lam, p)
    coeffc = hasse_coeff(lam, p)
    return {
        "lambda": _elt_str(lam),
        "hasse_closed": _elt_str(closed),
        "hasse_coeff": _elt_str(coeffc),
        "methods_agree": closed == coeffc,
        "ordinary": not closed.is_zero(),
    }


def _cmd_supersingular(args) -> dict:
    from .gsplit import P1Point
    p = _require_prime(args.p)
    rep = supersingular_report(p)
    payload = {
        "poly": format_poly(rep.poly, ["lam"]),
        "degree": rep.poly.degree(),
        "squarefree": rep.squarefree,
        "roots": [{"root": str(P1Point(r)), "multiplicity": m} for r, m in rep.roots],
        "root_count": rep.root_count,
        "expected_count": (p - 1) // 2,
    }
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["root", "multiplicity"])
            for r, m in rep.roots:
                writer.writerow([str(P1Point(r)), m])
    return payload


def _cmd_fdisc(args) -> dict:
    p = _require_prime(args.p)
    rep = f_discriminant_legendre(p)
    return {
        "bY": _divisor_payload(rep.divisor),
        "degree": str(rep.degree),
        "fiber_table": {str(pt): label for pt, label in rep.fiber_table},
    }


def _poly_from_args(args):
    p = _require_prime(args.p)
    if not args.poly or not args.vars:
        raise CliError("--poly and --vars are required")
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    try:
        return parse_poly(args.poly, names, p), names
    except PolyParseError as exc:
        raise CliError(f"bad polynomial: {exc}") from exc


def _cmd_fedder_nu(args) -> dict:
    f, names = _poly_from_args(args)
    e = _opt(args.e, 1)
    return {"poly": format_poly(f, names), "e": e, "nu": nu(f, e)}


def _cmd_fpt(args) -> dict:
    f, names = _poly_from_args(args)
    seq = fpt_bounds(f, _opt(args.emax, 3))
    return {
        "poly": format_poly(f, names),
        "values": [{"e": e, "nu": v} for e, v in seq.values],
        "fpt_lower": str(seq.fpt_lower),
        "fpt_upper": str(seq.fpt_upper),
        "fpure_at_one": is_fpure_pair(f, 1, seq.values[-1][0]),
    }


def _divisor_from_args(args) -> P1Divisor:
    p = _require_prime(args.p)
    if args.divisor is None:
        raise CliError("--divisor is required")
    try:
        return parse_divisor(args.divisor, p)
    except (ValueError, ZpViolationError) as exc:
        raise CliError(f"bad divisor: {exc}") from exc


def _cmd_gfs_p1(args) -> dict:
    B = _divisor_from_args(args)
    verdict = gfs_p1(B, e_max=_opt(args.emax, DEFAULT_EMAX))
    return {"divisor": _divisor_payload(B), "verdict": verdict.to_dict()}


def _cmd_gfr_p1(args) -> dict:
    B = _divisor_from_args(args)
    verdict = gfr_p1_bounded(B, e_max=_opt(args.emax, DEFAULT_EMAX),
                             perturbation_budget=_opt(args.budget, DEFAULT_POINT_BUDGET))
    return {"divisor": _divisor_payload(B), "verdict": verdict.to_dict()}


def _cmd_gfs_cy(args) -> dict:
    f, names = _poly_from_args(args)
    return {"poly": format_poly(f, names), "split": gfs_cy_hypersurface(f, _opt(args.e, 1))}


def _cmd_gfs_bigraded(args) -> dict:
    f, names = _poly_from_args(args)
    if not args.groups:
        raise CliError("--groups is required, e.g. --groups 3,2")
    groups = tuple(int(x) for x in args.groups.split(","))
    if len(groups) != 2:
        raise CliError("--groups needs exactly two sizes")
    return {
        "poly": format_poly(f, names),
        "groups": list(groups),
        "split": gfs_bigraded_hypersurface(f, groups, _opt(args.e, 1)),
    }


def _cmd_cover_check(args) -> dict:
    p = _require_prime(args.p)
    if args.cover == "squaring":
        cover = DoubleCover.squaring_map(p)
    elif args.cover == "legendre":
        if args.lam is None:
            raise CliError("--lambda is required for the legendre cover")
        cover = DoubleCover.legendre(int(args.lam), p)
    else:
        raise CliError("--cover must be 'squaring' or 'legendre'")
    B = _divisor_from_args(args)
    rep = pushforward_splitting_check(cover, B, _opt(args.e, 1))
    return {
        "cover": cover.name,
        "divisor": _divisor_payload(B),
        "agree": rep.agree,
        "source_gfs": rep.source_gfs,
        "target_gfs": rep.target_gfs,
        "verdicts_agree": rep.verdicts_agree,
        "monomials_tested": rep.monomials_tested,
    }


def _cmd_kgfr(args) -> dict:
    p = _require_prime(args.p)
    verdict = is_kgfr_legendre(p, e_max=_opt(args.emax, DEFAULT_EMAX),
                               perturbation_budget=_opt(args.budget, DEFAULT_POINT_BUDGET))
    rep = f_discriminant_legendre(p)
    return {
        "prime": p,
        "bY": _divisor_payload(rep.divisor),
        "degree": str(rep.degree),
        "fiber_table": {str(pt): label for pt, label in rep.fiber_table},
        "kgfr": verdict.to_dict(),
        "timings_ms": None,
    }


def _cmd_scan(args) -> dict:
    if not args.range:
        raise CliError("--range a..b is required")
    try:
        lo, hi = (int(x) for x in args.range.split(".."))
    except ValueError as exc:
        raise CliError("--range must look like 3..31") from exc
    report = prime_scan(lo, hi, e_max=_opt(args.emax, DEFAULT_EMAX),
                        perturbation_budget=_opt(args.budget, DEFAULT_POINT_BUDGET),
                        workers=_opt(args.workers, 1))
    payload = report.to_dict()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["prime", "overall", "fiber_gfs", "base_status"])
            for r in report.rows:
                writer.writerow([r.prime, r.overall, r.fiber_gfs, r.base_status])
    return payload


def _cmd_cbf(args) -> dict:
    p = _require_prime(args.p)
    total = total_space_gfs(p, e_max=_opt(args.emax, DEFAULT_EMAX),
                            pmax=_opt(args.bigraded_pmax, DEFAULT_BIGRADED_PMAX))
    base = gfs_p1(f_discriminant_legendre(p).divisor,
                  e_max=_opt(args.emax, DEFAULT_EMAX)).is_yes
    match = cbf_iii_check(p, e_max=_opt(args.emax, DEFAULT_EMAX),
                          pmax=_opt(args.bigraded_pmax, DEFAULT_BIGRADED_PMAX))
    return {"total_space_gfs": total, "base_couple_gfs": base, "match": match}


def _cmd_kappa(args) -> dict:
    if args.case:
        case_id, params = _parse_case(args.case)
        rep = check_superadditivity(case_id, **params)
        return rep.to_dict()
    if args.genus is None or args.degree is None:
        raise CliError("kappa needs --case or both --genus and --degree")
    src = CurveSectionGrowth(args.genus, args.degree, args.degree_zero)
    res = kappa_estimate(src, _opt(args.mmax, 20))
    return {
        "genus": args.genus,
        "degree": args.degree,
        "kappa": res.describe(),
        "certified": res.certified,
        "evidence": [{"m": iv.m, "lower": iv.lower, "upper": iv.upper}
                     for iv in res.evidence],
        "note": res.note,
    }


def _parse_case(text: str) -> tuple[str, dict]:
    case_id, _, params_str = text.partition(":")
    params: dict = {}
    if params_str:
        for chunk in params_str.split(","):
            key, _, val = chunk.partition("=")
            if not val:
                raise CliError(f"bad case parameter {chunk!r}")
            key = key.strip()
            val = val.strip()
            if val in ("true", "false"):
                params[key] = val == "true"
            else:
                params[key] = int(val)
    return case_id.strip(), params


def load_catalog() -> list[dict]:
    import importlib.resources as resources
    rows = []
    text = resources.files("frobsplit").joinpath("catalog.txt").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != 4:
            raise CliError(f"bad catalog row: {line}")
        case_id, params_str, expected_str, basis = cols
        params = {}
        if params_str:
            for chunk in params_str.split(","):
                k, _, v = chunk.partition("=")
                params[k.strip()] = (v.strip() == "true") if v.strip() in ("true", "false") \
                    else int(v.strip())
        expected = {}
        for chunk in expected_str.split(";"):
            k, _, v = chunk.partition("=")
            expected[k.strip()] = v.strip()
        rows.append({"case_id": case_id, "params": params,
                     "expected": expected, "basis": basis})
    return rows


def _match_expectation(report, expected: dict) -> tuple[bool, list[str]]:
    problems = []
    want = expected.get("inequality")
    if want == "holds-with-equality":
        if report.inequality_holds is not True or report.equality_observed is not True:
            problems.append("expected the inequality to hold with equality")
    elif want == "holds":
        if report.inequality_holds is not True:
            problems.append("expected the inequality to hold")
    elif want == "fails":
        if report.inequality_holds is not False:
            problems.append("expected the inequality to fail")
    if expected.get("kgfr") == "yes" and report.hypothesis_flags.get("kgfr") != "KGFR":
        problems.append("expected a KGFR verdict")
    if expected.get("kgfr") == "no" and report.hypothesis_flags.get("kgfr") == "KGFR":
        problems.append("expected a non-KGFR verdict")
    if expected.get("fixed-part") == "fires" and not report.hypothesis_flags.get("fixed_part_flag"):
        problems.append("expected the fixed-part flag to fire")
    return not problems, problems


def _cmd_catalog(args) -> dict:
    entries = load_catalog()
    if args.case:
        case_id, params = _parse_case(args.case)
        entries = [e for e in entries
                   if e["case_id"] == case_id
                   and all(e["params"].get(k) == v for k, v in params.items())]
        if not entries:
            entries = [{"case_id": case_id, "params": params,
                        "expected": {}, "basis": "ad-hoc"}]
    results = []
    for entry in entries:
        rep = check_superadditivity(entry["case_id"], **entry["params"])
        ok, problems = _match_expectation(rep, entry["expected"])
        results.append({
            "case": entry["case_id"],
            "params": {k: str(v) for k, v in sorted(entry["params"].items())},
            "basis": entry["basis"],
            "report": rep.to_dict(),
            "matches_expected": ok,
            "problems": problems,
        })
    return {"cases": results, "all_match": all(r["matches_expected"] for r in results)}


_HANDLERS = {
    "hasse": _cmd_hasse,
    "supersingular": _cmd_supersingular,
    "fdisc": _cmd_fdisc,
    "fedder-nu": _cmd_fedder_nu,
    "fpt": _cmd_fpt,
    "gfs-p1": _cmd_gfs_p1,
    "gfr-p1": _cmd_gfr_p1,
    "gfs-cy": _cmd_gfs_cy,
    "gfs-bigraded": _cmd_gfs_bigraded,
    "cover-check": _cmd_cover_check,
    "kgfr": _cmd_kgfr,
    "cbf": _cmd_cbf,
    "scan": _cmd_scan,
    "kappa": _cmd_kappa,
    "catalog": _cmd_catalog,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="frobsplit", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")
    for name in _HANDLERS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int)
        sp.add_argument("--lambda", dest="lam")
        sp.add_argument("--e", type=int)
        sp.add_argument("--emax", type=int)
        sp.add_argument("--poly")
        sp.add_argument("--vars")
        sp.add_argument("--divisor")
        sp.add_argument("--groups")
        sp.add_argument("--cover")
        sp.add_argument("--range")
        sp.add_argument("--case")
        sp.add_argument("--genus", type=int)
        sp.add_argument("--degree", type=int)
        sp.add_argument("--degree-zero", dest="degree_zero",
                        choices=["trivial", "generic"])
        sp.add_argument("--mmax", type=int)
        sp.add_argument("--budget", type=int)
        sp.add_argument("--bigraded-pmax", dest="bigraded_pmax", type=int)
        sp.add_argument("--workers", type=int)
        sp.add_argument("--out")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--strict", action="store_true")
        sp.add_argument("--timings", action="store_true")
    return parser


def _echo_inputs(args) -> dict:
    # workers is deliberately not echoed: results are independent of the
    # worker count, and the contract is byte-identical output across it
    keys = ["p", "lam", "e", "emax", "poly", "vars", "divisor", "groups",
            "cover", "range", "case", "genus", "degree", "degree_zero",
            "mmax", "budget", "bigraded_pmax", "out"]
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _contains_unknown(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("status") == "unknown" or obj.get("overall") == "unknown":
            return True
        return any(_contains_unknown(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_contains_unknown(v) for v in obj)
    return obj is None and False


def _render_text(obj, indent: int = 0, out=None) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in obj:
            v = obj[k]
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:", file=out)
                _render_text(v, indent + 1, out)
            else:
                print(f"{pad}{k} = {v}", file=out)
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _render_text(v, indent, out)
                print(f"{pad}-", file=out)
            else:
                print(f"{pad}- {v}", file=out)
    else:
        print(f"{pad}{obj}", file=out)


def run(argv=None) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise CliError("a subcommand is required (see --help)")
        started = time.perf_counter()
        results = _HANDLERS[args.command](args)
        elapsed_ms = int((time.perf_counter() - started) * 1000)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    except (ValueError, ZpViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "inputs": _echo_inputs(args),
        "results": results,
        "timings_ms": elapsed_ms if args.timings else None,
    }
    if args.json:
        print(json.dumps(report, indent=2, default=str))
    else:
        _render_text(report)
    if args.strict and _contains_unknown(report["results"]):
        return 2, report
    return 0, report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
