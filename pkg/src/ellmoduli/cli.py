"""Command line interface: ``ellmoduli describe GL6 4`` and friends.

Exit status 0 on success, 1 when a computation fails (error JSON on
stderr), 2 for malformed requests.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .jordan_holder import UniquenessViolatedError
from .moduli import TableRequest, appendix_requests, describe, render_table, torsion_orbit_count
from .oracles import selfcheck
from .root_datum import (
    GroupSpecError,
    RootDatum,
    build_datum,
    class_of_lift,
    fundamental_group,
    levi_pi1,
    parse_group,
    pi1_class,
)
from .slope import slope_map
from .weyl import DEFAULT_BUDGET, DEFAULT_GROUP_BUDGET, BudgetExceededError


class UsageError(ValueError):
    """Malformed request (exit status 2)."""


def _ints(text: str) -> list[int]:
    text = text.strip().strip("()[]")
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _datum(args) -> RootDatum:
    try:
        return build_datum(parse_group(args.group, default_isogeny=args.isogeny))
    except GroupSpecError as exc:
        raise UsageError(str(exc)) from None


def _class(d: RootDatum, text: str, lift: bool, s=None):
    vals = _ints(text)
    group = fundamental_group(d) if s is None else levi_pi1(d, s)
    if lift:
        if len(vals) != d.rank:
            raise UsageError(f"a lift needs {d.rank} cocharacter coordinates, got {len(vals)}")
        return class_of_lift(d, vals, s)
    if group.ngens == 0 and not any(vals):
        vals = []
    if len(vals) != group.ngens:
        raise UsageError(f"degree needs {group.ngens} coordinates for {group}, got {len(vals)}")
    return pi1_class(d, vals, s)


def _subset(d: RootDatum, text: str) -> tuple[int, ...]:
    t = text.strip().lower()
    if t == "all":
        return tuple(range(d.nsimple))
    if t in ("", "none", "empty", "-"):
        return ()
    idx = _ints(t)
    if any(i < 1 or i > d.nsimple for i in idx):
        raise UsageError(f"Levi indices must lie in 1..{d.nsimple}")
    return tuple(sorted(i - 1 for i in idx))


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_describe(args) -> int:
    d = _datum(args)
    m = describe(d, _class(d, args.degree, args.lift), args.budget)
    if args.format == "markdown":
        data = m.to_json()
        rows = [("group", d.name), ("degree", str(data["degree"])), ("Levi", f"{m.levi_name} (nodes {data['levi']['indices']})"),
                ("lambda_L", str(data["lambda_L"])), ("cocenter rank", str(m.cocenter_rank)),
                ("det lambda_L", str(data["det_lambda"])), ("W_d", f"{m.weyl_label}, order {m.order}"),
                ("moduli", m.display)]
        print("| field | value |\n|---|---|\n" + "\n".join(f"| {k} | {v} |" for k, v in rows))
        return 0
    _emit(args, m.text(), m.to_json())
    return 0


def cmd_table(args) -> int:
    reqs: list[TableRequest] = []
    if args.appendix:
        reqs.extend(appendix_requests(args.max_rank, args.gl_max))
    for item in args.requests:
        if "@" not in item:
            raise UsageError(f"table requests look like GROUP@DEGREE, got {item!r}")
        g, deg = item.rsplit("@", 1)
        spec = parse_group(g, default_isogeny=args.isogeny)
        reqs.append(TableRequest(spec, degree=tuple(_ints(deg)), label=deg))
    print(render_table(reqs, args.format, args.budget))
    return 0


def cmd_pi1(args) -> int:
    d = _datum(args)
    g = fundamental_group(d)
    _emit(args, str(g), g.to_json())
    return 0


def cmd_slope(args) -> int:
    d = _datum(args)
    s = _subset(d, args.levi)
    phi = slope_map(d, s, _class(d, args.degree, args.lift, s))
    _emit(args, str(phi), phi.to_json())
    return 0


def cmd_torsion(args) -> int:
    d = _datum(args)
    if args.n < 1:
        raise UsageError("N must be at least 1")
    m = describe(d, _class(d, args.degree, args.lift))
    count = torsion_orbit_count(m, args.n, args.budget or DEFAULT_GROUP_BUDGET)
    _emit(args, str(count), {"N": args.n, "orbits": count, "display": m.display})
    return 0


def cmd_selfcheck(args) -> int:
    results = selfcheck()
    if args.format == "json":
        print(json.dumps([{"check": n, "passed": ok, "detail": det} for n, ok, det in results], indent=2))
    else:
        for name, ok, det in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({det})" if det else ""))
    return 0 if all(ok for _, ok, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "markdown"), default=None,
                        help="output format (default: text; markdown for table)")
    common.add_argument("--budget", type=int, default=None,
                        help=f"enumeration budget (default: {DEFAULT_BUDGET} cosets; {DEFAULT_GROUP_BUDGET} group elements for torsion)")
    common.add_argument("--isogeny", choices=("sc", "ad"), default="ad",
                        help="isogeny for shorthand without /sc or /ad (default: ad)")

    p = argparse.ArgumentParser(prog="ellmoduli", description="Semistable G-bundles on an elliptic curve.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("describe", parents=[common], help="moduli descriptor of (G, degree)")
    q.add_argument("group", help='e.g. "B5/ad", "GL6", "A1/sc+GL2" or a JSON spec')
    q.add_argument("degree", help="pi_1 coordinates as printed by `pi1`, comma separated")
    q.add_argument("--lift", action="store_true", help="read the degree as X_*(T) coordinates")
    q.set_defaults(func=cmd_describe)

    q = sub.add_parser("table", parents=[common], help="table of Levis and relative Weyl groups")
    q.add_argument("requests", nargs="*", help="extra rows as GROUP@DEGREE")
    q.add_argument("--appendix", action="store_true", help="include the Appendix rows")
    q.add_argument("--max-rank", type=int, default=None, help="skip groups of larger semisimple rank")
    q.add_argument("--gl-max", type=int, default=12, help="largest n for the GL_n rows")
    q.set_defaults(func=cmd_table)

    q = sub.add_parser("pi1", parents=[common], help="fundamental group presentation")
    q.add_argument("group")
    q.set_defaults(func=cmd_pi1)

    q = sub.add_parser("slope", parents=[common], help="slope map of a Levi class")
    q.add_argument("group")
    q.add_argument("levi", help='1-based simple root indices, "all" or "none"')
    q.add_argument("degree", help="coordinates in pi_1 of the Levi")
    q.add_argument("--lift", action="store_true")
    q.set_defaults(func=cmd_slope)

    q = sub.add_parser("torsion", parents=[common], help="W_d-orbits on E[N]^r")
    q.add_argument("group")
    q.add_argument("degree")
    q.add_argument("n", type=int, metavar="N")
    q.add_argument("--lift", action="store_true")
    q.set_defaults(func=cmd_torsion)

    q = sub.add_parser("selfcheck", parents=[common], help="low-rank brute-force oracles")
    q.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "markdown" if args.command == "table" else "text"
    if args.budget is None and args.command != "torsion":
        args.budget = DEFAULT_BUDGET
    try:
        return args.func(args)
    except (UsageError, GroupSpecError) as exc:
        print(f"ellmoduli: error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, UniquenessViolatedError, ArithmeticError, ValueError, AssertionError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
