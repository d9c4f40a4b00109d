"""Batch command-line front end: dimension tables, verification suites, and
Greek-letter product tables, with human, CSV, and JSON output.

Exit codes: 0 success, 1 verification/internal failure, 2 usage error.
The default prime is 7, overridable by the STAB3_PRIME environment variable;
an explicit --prime flag always wins.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .fplinalg import is_prime


def _parse_t_range(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    return range(1, int(text) + 1)


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _rows_to_human(header, rows) -> str:
    widths = [
        max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
        for i, h in enumerate(header)
    ]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    for r in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _format_rows(header, rows, fmt, meta=None) -> str:
    if fmt == "csv":
        return _rows_to_csv(header, rows)
    if fmt == "json":
        payload = {"meta": meta or {}, "header": list(header), "rows": [list(r) for r in rows]}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return _rows_to_human(header, rows)


def _check_prime(p: int):
    if p <= 3 or not is_prime(p):
        raise SystemExit2(f"prime required: p must be a prime > 3, got {p}")


class SystemExit2(Exception):
    """Usage error carrying its message (mapped to exit code 2)."""


def cmd_table(args) -> int:
    _check_prime(args.prime)
    meta = {"prime": args.prime, "version": __version__, "command": "table",
            "model": args.model}
    if args.model == "exterior":
        from .cohomology import ExteriorCohomology

        eng = ExteriorCohomology(args.prime)
        per_s = {}
        for (s, t, w, dim_c, dim_h) in eng.dims_table():
            tot_c, tot_h, secs = per_s.get(s, (0, 0, 0))
            per_s[s] = (tot_c + dim_c, tot_h + dim_h, secs + (1 if dim_h else 0))
        rows = [
            (s, per_s[s][0], per_s[s][1], per_s[s][2]) for s in sorted(per_s)
        ]
        header = ("s", "dim_cochains", "dim_cohomology", "nonzero_sectors")
    else:
        from .hopf_cobar import CobarEngine

        eng = CobarEngine(args.prime, weight_bound=args.may_bound,
                          sector_cap=args.sector_cap)
        rows = []
        for (t, w) in eng.sector_keys():
            tower = eng.tower(t, w)
            for s in sorted(tower.bases):
                if s > args.max_s:
                    continue
                rows.append((s, t, w, tower.dim(s), tower.dim_h(s)))
        rows.sort()
        header = ("s", "t", "w", "dim_cochains", "dim_cohomology")
    _emit(_format_rows(header, rows, args.format, meta), args.output)
    return 0


def cmd_verify(args) -> int:
    _check_prime(args.prime)
    from .reports import SUITE_NAMES, run_suites

    suites = args.suite or None
    if suites:
        unknown = set(suites) - set(SUITE_NAMES)
        if unknown:
            raise SystemExit2(
                f"unknown suite(s) {sorted(unknown)}; available: {', '.join(SUITE_NAMES)}"
            )
    t_range = _parse_t_range(args.t_range) if args.t_range else None
    report = run_suites(
        args.prime,
        suites=suites,
        t_range=t_range,
        sector_cap=args.sector_cap,
        command="verify",
    )
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.format == "human":
        lines = [
            f"{c['status'].upper():4s} {c['name']}: {c['ref']}" for c in report["checks"]
        ]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit(text, args.output)
    failures = [c for c in report["checks"] if c["status"] != "pass"]
    if failures:
        first = failures[0]
        sys.stderr.write(
            f"FAILED {first['name']}: {json.dumps(first['certificate'], sort_keys=True)}\n"
        )
        return 1
    return 0


def cmd_greek(args) -> int:
    _check_prime(args.prime)
    from . import greek

    if args.bidegree:
        spec = greek.GreekSpec(tuple(int(x) for x in args.bidegree.split(",")), "custom")
        n, tA = greek.bidegree(spec, args.prime)
        _emit(f"({n}, {tA})\n", args.output)
        return 0
    if args.prime == 5:
        sys.stderr.write(
            "warning: the product table is validated for primes greater than 5; "
            "predicate agreement at p = 5 is not guaranteed\n"
        )
    t_range = _parse_t_range(args.t_range) if args.t_range else None
    rows_raw = greek.classify_products(args.prime, t_range)
    header = (
        "t",
        "bidegree_n",
        "bidegree_tA",
        *greek.PRODUCT_NAMES,
        "predicate_full",
        "predicate_pair",
        "agree",
    )
    rows = []
    for row in rows_raw:
        n, tA = greek.bidegree(greek.gamma(row["t"]), args.prime)
        rows.append(
            (
                row["t"],
                n,
                tA,
                *(int(row["products"][name]["nonzero"]) for name in greek.PRODUCT_NAMES),
                int(row["predicate_full"]),
                int(row["predicate_pair"]),
                "agree" if row["agree"] else "DISAGREE",
            )
        )
    meta = {"prime": args.prime, "version": __version__, "command": "greek"}
    _emit(_format_rows(header, rows, args.format, meta), args.output)
    return 0 if all(r["agree"] for r in rows_raw) else 1


def build_parser() -> argparse.ArgumentParser:
    default_prime = int(os.environ.get("STAB3_PRIME", "7"))
    parser = argparse.ArgumentParser(
        prog="stab3",
        description="Exact verification engine for a rank-3 exterior cohomology "
        "model, its cobar cross-checks, and Greek-letter product tables.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="human"):
        sp.add_argument("--prime", type=int, default=default_prime,
                        help="odd prime > 3 (default from STAB3_PRIME or 7)")
        sp.add_argument("--format", choices=("human", "csv", "json"), default=fmt_default)
        sp.add_argument("--output", help="write output to this path instead of stdout")
        sp.add_argument("--sector-cap", type=int, default=20000,
                        help="abort if a cobar sector exceeds this dimension")

    sp = sub.add_parser("table", help="per-sector dimension tables")
    common(sp)
    sp.add_argument("--model", choices=("exterior", "cobar"), default="exterior")
    sp.add_argument("--max-s", type=int, default=2, help="cobar: bound on cohomological degree")
    sp.add_argument("--may-bound", type=int, default=3, help="cobar: bound on the weight grading")
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("verify", help="run verification suites, emit a JSON report")
    common(sp, fmt_default="json")
    sp.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    sp.add_argument("--t-range", help="range of t values, e.g. 1..49")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("greek", help="Greek-letter bidegrees and product table")
    common(sp)
    sp.add_argument("--t-range", help="range of t values, e.g. 1..49")
    sp.add_argument("--bidegree", help="comma-separated sequence, e.g. 1,1,1,2")
    sp.set_defaults(fn=cmd_greek)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses its own exit codes
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # internal failure
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
