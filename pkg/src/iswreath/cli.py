"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 element cap exceeded, 64 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import counting, green, wreath
from .errors import EnumerationLimitError
from .subtree_types import enumerate_types
from .verify import run_checks

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CAP = 2
EXIT_USAGE = 64

STATS_COLUMNS = ("type", "index", "num_idempotents", "num_r_classes", "num_l_classes",
                 "h_class_size", "d_class_size")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    degree: int
    levels: int
    format: str = "text"
    max_elements: int = 100_000
    oracle_cap: int = 2000
    observed: bool = False
    output: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.degree < 1 or self.levels < 1:
            raise UsageError(f"need -d >= 1 and -k >= 1, got d={self.degree}, k={self.levels}")
        if self.max_elements < 1 or self.oracle_cap < 1:
            raise UsageError("caps must be positive")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-d", "--degree", type=int, required=True)
    common.add_argument("-k", "--levels", type=int, required=True)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-elements", type=int, default=100_000,
                        help="refuse to enumerate more elements than this")
    common.add_argument("--oracle-cap", type=int, default=2000,
                        help="largest universe for the brute-force Green oracle")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = _Parser(prog="iswreath",
                     description="Partial wreath powers of the symmetric inverse semigroup IS_d.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("count", parents=[common],
                   help="order, idempotents, D-classes and |Aut T_k|")
    sub.add_parser("enumerate", parents=[common], help="list every element")
    p = sub.add_parser("classify", parents=[common], help="per-D-class statistics")
    p.add_argument("--observed", action="store_true",
                   help="also classify by enumeration and compare with the formulas")
    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command, degree=ns.degree, levels=ns.levels, format=ns.format,
        max_elements=ns.max_elements, oracle_cap=ns.oracle_cap,
        observed=getattr(ns, "observed", False), output=ns.output,
        seed=getattr(ns, "seed", 0),
    )


def _table(rows: list, columns, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
    lines += ["  ".join(str(r[c]).ljust(widths[c]) for c in columns) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_count(cfg: RunConfig) -> tuple:
    d, k = cfg.degree, cfg.levels
    row = {
        "degree": d,
        "levels": k,
        "order": str(counting.order_formula(d, k)),
        "idempotents": str(counting.idempotent_count(d, k)),
        "dclasses": str(counting.dclass_count(d, k)),
        "aut": str(counting.full_tree_aut_order(d, k)),
    }
    if cfg.format == "text":
        text = "".join(f"{key}={row[key]}\n" for key in ("order", "idempotents", "dclasses", "aut"))
        return EXIT_OK, text
    if cfg.format == "json":
        return EXIT_OK, json.dumps(row, indent=2) + "\n"
    return EXIT_OK, _table([row], list(row), "csv")


def cmd_enumerate(cfg: RunConfig) -> tuple:
    els = wreath.enumerate_wreath(cfg.degree, cfg.levels, cfg.max_elements)
    if cfg.format == "json":
        return EXIT_OK, json.dumps([wreath.to_json(x) for x in els]) + "\n"
    if cfg.format == "csv":
        rows = [{"index": i, "element": str(x)} for i, x in enumerate(els)]
        return EXIT_OK, _table(rows, ("index", "element"), "csv")
    return EXIT_OK, "".join(f"{x}\n" for x in els)


def _stats_row(s: counting.DClassStats, index: int) -> dict:
    return {
        "type": s.subtree_type.encoding,
        "index": index,
        "num_idempotents": str(s.num_idempotents),
        "num_r_classes": str(s.num_r_classes),
        "num_l_classes": str(s.num_l_classes),
        "h_class_size": str(s.h_class_size),
        "d_class_size": str(s.d_class_size),
    }


def cmd_classify(cfg: RunConfig) -> tuple:
    d, k = cfg.degree, cfg.levels
    types = enumerate_types(d, k, cap=cfg.max_elements)
    rows = [_stats_row(counting.dclass_stats(t, d, k), i) for i, t in enumerate(types)]
    columns = list(STATS_COLUMNS)
    if not cfg.observed:
        return EXIT_OK, _table(rows, columns, cfg.format)
    order = counting.order_formula(d, k)
    if order > cfg.max_elements:
        print(f"warning: {order} elements exceed --max-elements {cfg.max_elements}; "
              "showing formula values only", file=sys.stderr)
        return EXIT_OK, _table(rows, columns, cfg.format)
    observed = {c.subtree_type: c for c in green.classify(d, k, cfg.max_elements)}
    status = EXIT_OK
    for row, t in zip(rows, types):
        obs = observed.get(t)
        match = (obs is not None and len(obs.h_class_sizes) == 1
                 and obs.stats() == counting.dclass_stats(t, d, k))
        row["observed_d_class_size"] = str(obs.size) if obs else "0"
        row["match"] = match if cfg.format == "json" else str(match).lower()
        if not match:
            status = EXIT_MISMATCH
    if len(observed) != len(types):
        status = EXIT_MISMATCH
    columns += ["observed_d_class_size", "match"]
    return status, _table(rows, columns, cfg.format)


def cmd_verify(cfg: RunConfig) -> tuple:
    try:
        results = run_checks(cfg.degree, cfg.levels, cfg.max_elements, cfg.oracle_cap, cfg.seed)
        status = EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH
    except EnumerationLimitError as e:
        results = getattr(e, "partial", [])
        print(f"error: {e}", file=sys.stderr)
        status = EXIT_CAP
        if any(not r.ok for r in results):
            status = EXIT_MISMATCH
    if cfg.format == "json":
        body = {
            "degree": cfg.degree,
            "levels": cfg.levels,
            "status": {EXIT_OK: "pass", EXIT_MISMATCH: "fail", EXIT_CAP: "cap"}[status],
            "checks": [{"name": r.name, "status": r.status, "detail": r.detail,
                        "mismatches": r.mismatches} for r in results],
        }
        return status, json.dumps(body, indent=2) + "\n"
    if cfg.format == "csv":
        rows = [{"name": r.name, "status": r.status, "detail": r.detail} for r in results]
        return status, _table(rows, ("name", "status", "detail"), "csv")
    return status, "".join(r.line() + "\n" for r in results)


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code or EXIT_OK
    try:
        status, text = COMMANDS[cfg.command](cfg)
    except EnumerationLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
