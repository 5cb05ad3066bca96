"""Command-line entry point: ``quotmmp report | point | enumerate``.

Exit codes: 0 success, 1 I/O or parse error, 2 mathematical failure (for
example condition (star_m) false), 3 enumeration cap exceeded.  Only the
rendered result goes to stdout; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from . import __version__
from .chamberfan import mmp_report
from .exactcore import FieldMismatchError
from .ffenum import CapExceededError, census, cross_check_pr1, default_cap
from .p1forms import ModuliParams, ParseError, format_form
from .quotmodel import StratumError, fiber_profile, gm_point, rm_point
from .serialize import (FormatError, dumps_report, is_subspace_json, parse_field_option,
                        point_from_json, point_to_json, report_text, subspace_from_json,
                        subspace_to_json, loads_json)
from .sheafpoint import (DomainError, H0InjectivityError, InvalidPointError, NotLocallyFreeError,
                         check_star, dualize, pluecker_point)
from .svgfan import render_svg

EXIT_OK, EXIT_IO, EXIT_MATH, EXIT_CAP = 0, 1, 2, 3
_MATH_ERRORS = (DomainError, H0InjectivityError, InvalidPointError, NotLocallyFreeError, StratumError,
                ArithmeticError)


class _MathFailure(Exception):
    """Raised after rendering a negative mathematical answer (exit 2)."""


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _field(text: str):
    try:
        return parse_field_option(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "svg", "csv"), default="text")
    common.add_argument("--out", help="write the result to this path instead of stdout")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--n", type=int, required=True, help="rank of the trivial bundle V")
    params.add_argument("--r", type=int, required=True, help="rank of the quotients")
    params.add_argument("--d", type=int, required=True, help="degree of the quotients")

    ap = argparse.ArgumentParser(prog="quotmmp", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("report", parents=[common, params],
                        help="chamber decomposition, walls and log Fano check")
    rp.set_defaults(func=cmd_report)

    pp = sub.add_parser("point", parents=[common], help="operations on an explicit point or subspace")
    pp.add_argument("action", choices=("check-star", "gm", "rm", "stratum", "dualize", "pluecker"))
    pp.add_argument("file", help="point file (JSON); a subspace file is accepted by 'stratum'")
    pp.add_argument("--m", type=int, help="level m (default ceil(d/s))")
    pp.add_argument("--field", type=_field, help="override the field of the file (Q or Fp:<p>)")
    pp.set_defaults(func=cmd_point)

    ep = sub.add_parser("enumerate", parents=[common, params],
                        help="brute-force stratum census of G_m over F_q")
    ep.add_argument("--m", type=int, required=True)
    ep.add_argument("--q", type=int, choices=(2, 3, 5, 7), default=2)
    ep.add_argument("--cap", type=_positive_int,
                    help="max subspaces to enumerate (default $QUOTMMP_CAP, else 10^7)")
    ep.add_argument("--threads", type=_positive_int, default=1)
    ep.add_argument("--cross-check", action="store_true",
                    help="also count R_m directly and through pr_1")
    ep.set_defaults(func=cmd_enumerate)
    return ap


def _params(args, parser) -> ModuliParams:
    try:
        return ModuliParams(args.n, args.r, args.d)
    except ValueError as exc:
        parser.error(str(exc))


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- report ---------------------------------------------------------------

def cmd_report(args, parser) -> int:
    params = _params(args, parser)
    if params.n < 2:
        parser.error("report needs n >= 2")
    rep = mmp_report(params)
    if args.format == "json":
        _emit(dumps_report(rep) + "\n", args)
    elif args.format == "svg":
        _emit(render_svg(rep), args)
    elif args.format == "csv":
        lines = ["kind,name,ray1,ray2"]
        lines += [f"chamber,{c.model},{c.nef.ray1},{c.nef.ray2}" for c in rep.chambers]
        if not rep.degenerate:
            lines.append(f"cone,Mov,{rep.mov.ray1},{rep.mov.ray2}")
            lines.append(f"cone,Eff,{rep.eff.ray1},{rep.eff.ray2}")
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit(report_text(rep), args)
    return EXIT_OK


# -- point ----------------------------------------------------------------

def _render_profile(prof) -> dict:
    return {"m": prof.m, "index": prof.index, "stratum_dimension": prof.stratum_dimension,
            "pr2_fiber": list(prof.pr2_fiber) if prof.pr2_fiber else None,
            "pr1_fiber": list(prof.pr1_fiber)}


def _text_of(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text_of(v, indent + 1).rstrip("\n"))
        elif isinstance(v, list) and v and isinstance(v[0], list):
            lines.append(f"{pad}{k}:")
            lines += [f"{pad}  {row}" for row in v]
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines) + "\n"


def cmd_point(args, parser) -> int:
    if args.format in ("svg", "csv"):
        parser.error(f"format {args.format} is not available for 'point'")
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    obj = loads_json(text)
    if args.field is not None and isinstance(obj, dict):
        obj["field"] = {"type": "Q"} if args.field.kind == "Q" else {"type": "Fp", "p": args.field.characteristic}

    negative = False
    if is_subspace_json(obj):
        if args.action != "stratum":
            raise FormatError(f"'{args.action}' needs a point file, got a subspace file")
        K = subspace_from_json(obj)
        result = {"subspace_dim": K.dim, **_render_profile(fiber_profile(K))}
    else:
        pt = point_from_json(obj, text)
        p = pt.params
        m = args.m if args.m is not None else p.ceil_ds
        if args.action == "check-star":
            rep = check_star(pt, m)
            result = {"m": m, "holds": rep.holds, "conditions": rep.conditions, "messages": rep.messages}
            negative = not rep.holds
        elif args.action == "gm":
            result = subspace_to_json(gm_point(pt, m))
        elif args.action == "rm":
            pr = rm_point(pt, m)
            result = {"m": m, "low": subspace_to_json(pr.low), "high": subspace_to_json(pr.high),
                      "verified": True}
        elif args.action == "stratum":
            K = gm_point(pt, m)
            result = _render_profile(fiber_profile(K))
        elif args.action == "dualize":
            result = point_to_json(dualize(pt))
        else:
            minors = pluecker_point(pt)
            subsets = [list(c) for c in combinations(range(p.n), p.s)]
            result = {"row_subsets": subsets, "coordinates": [format_form(f) for f in minors]}
    if args.format == "json":
        _emit(_json(result), args)
    else:
        _emit(_text_of(result), args)
    if negative:
        raise _MathFailure("; ".join(result["messages"]) or "condition fails")
    return EXIT_OK


# -- enumerate ------------------------------------------------------------

def cmd_enumerate(args, parser) -> int:
    params = _params(args, parser)
    if args.format == "svg":
        parser.error("format svg is not available for 'enumerate'")
    cap = args.cap if args.cap is not None else default_cap()
    bottom = args.m == params.ceil_ds - 1
    res = census(params, args.m, args.q, direct=args.cross_check and not bottom,
                 cap=cap, threads=args.threads)
    out = res.to_dict()
    ok = res.emptiness_holds and res.disagreements == 0
    if args.cross_check:
        cc = cross_check_pr1(params, args.m if bottom else args.m - 1, args.q, cap=cap, threads=args.threads)
        out["pr1_cross_check"] = cc.to_dict()
        ok = ok and cc.consistent
        if res.rm_point_count_direct is not None:
            ok = ok and res.rm_point_count_direct == res.rm_point_count_stratified
    if args.format == "csv":
        _emit(res.to_csv(), args)
    elif args.format == "json":
        _emit(_json(out), args)
    else:
        _emit(_census_text(out), args)
    if not ok:
        raise _MathFailure("census invariants violated")
    return EXIT_OK


def _census_text(out: dict) -> str:
    p = out["params"]
    lines = [f"G_{out['m']}(F_{out['q']}) for n={p['n']}, r={p['r']}, d={p['d']}: {out['total']} points",
             "index  count  pr1_count"]
    keys = sorted({int(k) for k in out["counts"]} | {int(k) for k in out["pr1_counts"]})
    for i in keys:
        lines.append(f"{i:5d}  {out['counts'].get(str(i), 0):5d}  {out['pr1_counts'].get(str(i), 0):9d}")
    lines.append(f"max index allowed {out['max_index_allowed']}, observed {out['max_index_observed']}")
    lines.append(f"index disagreements: {out['disagreements']}")
    if out["rm_point_count_stratified"] is not None:
        lines.append(f"|R_{out['m']}(F_{out['q']})| stratified = {out['rm_point_count_stratified']}")
    if out["rm_point_count_direct"] is not None:
        lines.append(f"|R_{out['m']}(F_{out['q']})| direct = {out['rm_point_count_direct']}")
    cc = out.get("pr1_cross_check")
    if cc:
        lvl = cc["m"] + 1
        lines.append(f"|R_{lvl}(F_{out['q']})| via pr_1 over G_{cc['m']} = {cc['rm1_count_pr1_stratified']}")
        if cc["all_fibers_nontrivial"] is not None:
            lines.append(f"all pr_1 fibers over G_{cc['m']} have > 1 point: {cc['all_fibers_nontrivial']}")
        lines.append(f"cross-check consistent: {cc['consistent']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except _MathFailure as exc:
        print(f"quotmmp: {exc}", file=sys.stderr)
        return EXIT_MATH
    except CapExceededError as exc:
        print(f"quotmmp: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, FormatError, ParseError, FieldMismatchError) as exc:
        print(f"quotmmp: {exc}", file=sys.stderr)
        return EXIT_IO
    except _MATH_ERRORS as exc:
        print(f"quotmmp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"quotmmp: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
