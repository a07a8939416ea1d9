"""Command-line front end.

Exit codes: 0 success, 1 input or validation error, 2 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import families, selftest
from .errors import LimitExceeded, RealOrbitsError
from .report import classify, format_classification, format_table, recipe_table, table_json


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, keep exit code 2 for resource limits
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realorbits", description="Classify real orbits via twisted N0-actions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="orbits of one action")
    c.add_argument("--family", choices=["sl-so"])
    c.add_argument("--p", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--mode", choices=["twisted", "plain-w0", "plain-w00"], default="twisted")
    c.add_argument("--compare", action="store_true", help="also count the plain W0 and W00 actions")
    c.add_argument("--spec", help="JSON spec file of a custom action")
    c.add_argument("--format", choices=["table", "json"], default="table")
    c.add_argument("--limit", type=int, help="maximum number of enumerated states")
    c.add_argument("--engine", choices=["bfs", "union_find"], default="bfs")

    t = sub.add_parser("table", help="twisted vs W00 orbit counts over a range of (p, q)")
    t.add_argument("--family", choices=["sl-so"], default="sl-so")
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--format", choices=["table", "json"], default="table")
    t.add_argument("--limit", type=int)

    s = sub.add_parser("selftest", help="run the invariant suites")
    s.add_argument("--suite", action="append", choices=sorted(selftest.SUITES))
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--inject-fault", choices=selftest.FAULTS, help=argparse.SUPPRESS)
    return parser


def cmd_classify(args) -> int:
    if args.spec and args.family:
        raise families.InvalidFamily("use either --family or --spec, not both")
    if args.spec:
        if args.mode != "twisted" or args.compare:
            raise families.InvalidFamily("--mode and --compare only apply to --family sl-so")
        action = families.load_spec(args.spec)
        family = {"kind": "custom", "path": args.spec, "description": action.description}
        report = classify(action, family=family, limit=args.limit, engine=args.engine)
    elif args.family == "sl-so":
        mode = args.mode.replace("-", "_")
        spec = families.FamilySpec("sl_so", mode, args.p, args.q)
        action = spec.build()
        family = {
            "kind": "sl_so",
            "mode": mode,
            "p": args.p,
            "q": args.q,
            "description": action.description,
        }
        report = classify(
            action,
            family=family,
            mode=mode,
            p=args.p,
            q=args.q,
            compare=args.compare,
            limit=args.limit,
            engine=args.engine,
        )
    else:
        raise families.InvalidFamily("classify needs --family sl-so or --spec PATH")
    if args.format == "json":
        print(report.to_json())
    else:
        sys.stdout.write(format_classification(report))
    return 0


def cmd_table(args) -> int:
    if args.max_n > families.RANK_LIMIT:
        raise families.RankLimit(f"--max-n {args.max_n} exceeds the rank limit {families.RANK_LIMIT}")
    rows = recipe_table(args.max_n, limit=args.limit)
    if args.format == "json":
        print(table_json(rows))
    else:
        sys.stdout.write(format_table(rows))
    return 0


def cmd_selftest(args) -> int:
    results = selftest.run(args.suite, max_n=args.max_n, fault=args.inject_fault)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{r.name:<10} {status}  {r.checks:>7} checks  {r.seconds:6.2f}s")
        for msg in r.failures[:5]:
            print(f"    {msg}")
    ok = all(r.ok for r in results)
    print("selftest:", "ok" if ok else "FAILED")
    return 0 if ok else 1


COMMANDS = {"classify": cmd_classify, "table": cmd_table, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RealOrbitsError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
