"""Command-line front end.

Subcommands: witt, ring, euler, localize, verify.  Exit codes: 0 success,
1 computation error, 2 parse/usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import fields as F
from .errors import ExprSyntaxError, WittlocError
from .exprs import (
    parse_field,
    parse_rep,
    parse_ring_expr,
    parse_scalar,
    parse_witt_expr,
    rep_str,
    ring_str,
    witt_str,
)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wittloc",
        description="Exact Witt-ring arithmetic, equivariant cohomology "
        "presentations, Euler classes, and Bott-residue localization.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_a=True):
        p.add_argument("--field", default="Q", help="field tag: Q, R, Fp:7, Q(sqrt:2)")
        if with_a:
            p.add_argument("--a", help="square class defining a quadratic extension")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    pw = sub.add_parser("witt", help="evaluate a Witt-class expression")
    pw.add_argument("expr")
    common(pw, with_a=False)

    pr = sub.add_parser("ring", help="evaluate a graded-ring expression")
    pr.add_argument("expr")
    pr.add_argument(
        "--presentation",
        choices=["bsl2n", "bn", "twisted"],
        default="bsl2n",
        help="coefficient ring presentation",
    )
    pr.add_argument("--n", type=int, default=1)
    common(pr)

    pe = sub.add_parser("euler", help="Euler class of a representation")
    pe.add_argument("rep", help="e.g. 'Sym(3)@1 + F@2' or 'rho(3) + rho0'")
    pe.add_argument("--group", choices=["sl2n", "n"], default="sl2n")
    pe.add_argument("--n", type=int, default=1)
    common(pe, with_a=False)

    pl = sub.add_parser("localize", help="evaluate a Bott-residue problem")
    pl.add_argument("--problem", help="path to a JSON problem file")
    pl.add_argument(
        "--builder",
        nargs="+",
        help="built-in space: 'p 2n', 'p 2n-1', or 'gr' with --m/--ambient",
    )
    pl.add_argument("--n", type=int, default=1)
    pl.add_argument("--m", type=int)
    pl.add_argument("--ambient", type=int)
    common(pl)

    pv = sub.add_parser("verify", help="run a self-check suite")
    pv.add_argument("suite", nargs="?", help="witt-fp, lam, ring-laws, paper-table")
    pv.add_argument("--suite", dest="suite_flag", help="alternative to the positional")
    pv.add_argument("--p-max", type=int, default=11)
    pv.add_argument("--rank-max", type=int, default=4)
    pv.add_argument("--n-max", type=int, default=4)
    pv.add_argument("--samples", type=int, default=200)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--field", default=None)
    pv.add_argument("--a")
    pv.add_argument("--json", action="store_true")
    return ap


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_witt(args) -> int:
    field = parse_field(args.field)
    x = parse_witt_expr(args.expr, field)
    s = witt_str(x)
    _emit(args, {"field": str(field), "class": s}, [s])
    return 0


def _presentation_from_args(args):
    from .quadext import make_context
    from .rings import bnn, bsl2n, twisted_point

    field = parse_field(args.field)
    if args.presentation == "bsl2n":
        return bsl2n(args.n, field)
    if args.presentation == "bn":
        return bnn(args.n, field)
    if args.a is None:
        raise ExprSyntaxError("twisted presentation needs --a", 0)
    ctx = make_context(field, parse_scalar(args.a, field))
    return twisted_point(ctx)


def _cmd_ring(args) -> int:
    pres = _presentation_from_args(args)
    x = parse_ring_expr(args.expr, pres)
    s = ring_str(x)
    _emit(args, {"presentation": str(pres), "element": s}, [s])
    return 0


def _cmd_euler(args) -> int:
    from .euler import euler_rep

    field = parse_field(args.field)
    kind = "SL2n" if args.group == "sl2n" else "N"
    rep = parse_rep(args.rep, kind, args.n)
    val = euler_rep(rep, field)
    lines = [f"determinacy: {val.determinacy}"]
    payload = {"rep": rep_str(rep), "determinacy": val.determinacy}
    if val.value is not None:
        lines.insert(0, f"euler: {ring_str(val.value)}")
        payload["euler"] = ring_str(val.value)
    lines.append(f"known_square: {ring_str(val.known_square)}")
    payload["known_square"] = ring_str(val.known_square)
    _emit(args, payload, lines)
    return 0


def _build_problem(args):
    from .engine import (
        build_grassmannian_problem,
        build_projective_problem,
        problem_from_json,
    )

    if args.problem:
        with open(args.problem) as fh:
            return problem_from_json(json.load(fh))
    if not args.builder:
        raise ExprSyntaxError("localize needs --problem or --builder", 0)
    field = parse_field(args.field)
    kind = args.builder[0]
    if kind == "p":
        if len(args.builder) != 2 or args.builder[1] not in ("2n", "2n-1"):
            raise ExprSyntaxError("builder 'p' takes a dimension: 2n or 2n-1", 0)
        dim = 2 * args.n if args.builder[1] == "2n" else 2 * args.n - 1
        return build_projective_problem(dim, args.n, field)
    if kind == "gr":
        if args.m is None or args.ambient is None:
            raise ExprSyntaxError("builder 'gr' needs --m and --ambient", 0)
        return build_grassmannian_problem(args.m, args.ambient, args.n, field)
    raise ExprSyntaxError(f"unknown builder {kind!r}", 0)


def _cmd_localize(args) -> int:
    from .engine import bott_residue

    problem = _build_problem(args)
    res = bott_residue(problem)
    lines = []
    payload = {}
    num = ring_str(res.value.numerator)
    den = ring_str(res.value.inverted)
    loc = num if res.value.dexp == 0 else f"({num}) / ({den})^{res.value.dexp}"
    lines.append(f"localized: {loc}")
    payload["localized"] = loc
    if res.cleared is not None:
        lines.append(f"cleared: {ring_str(res.cleared)}")
        payload["cleared"] = ring_str(res.cleared)
    if res.degree_zero is not None:
        lines.append(f"degree_zero: {witt_str(res.degree_zero)}")
        payload["degree_zero"] = witt_str(res.degree_zero)
    if res.flags:
        lines.append("flags: " + ", ".join(sorted(k for k, v in res.flags.items() if v)))
        payload["flags"] = res.flags
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    suite = args.suite_flag or args.suite
    if not suite:
        raise ExprSyntaxError(f"verify needs a suite: {', '.join(SUITES)}", 0)
    if suite not in SUITES:
        raise ExprSyntaxError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}", 0)
    field = parse_field(args.field) if args.field else None
    a = parse_scalar(args.a, field) if args.a and field else None
    ok, lines = run_suite(
        suite,
        field=field,
        a=a,
        p_max=args.p_max,
        rank_max=args.rank_max,
        n_max=args.n_max,
        samples=args.samples,
        seed=args.seed,
    )
    payload = {"suite": suite, "passed": ok, "lines": lines}
    _emit(args, payload, lines + [f"suite {suite}: {'pass' if ok else 'FAIL'}"])
    return 0 if ok else 3


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handlers = {
        "witt": _cmd_witt,
        "ring": _cmd_ring,
        "euler": _cmd_euler,
        "localize": _cmd_localize,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.cmd](args)
    except ExprSyntaxError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except WittlocError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
