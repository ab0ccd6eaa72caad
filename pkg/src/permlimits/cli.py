"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource ceiling exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import verify
from .cache import CountCache, MemoryCache
from .enumeration import (
    DEFAULT_CEILING, STREAM_CEILING, CeilingExceeded, count_avoiders, count_by_lr_minima,
    default_workers, enumerate_avoiders, wilf_equivalent_upto,
)
from .limits import bound_report
from .merging import (
    WitnessError, WitnessParams, block_lengths, build_witness, extend_with_buffer,
)
from .perm import (
    PatternError, classify_decomposability, format_permutation, is_sum_indecomposable,
    layered_from_composition, layers_of, left_to_right_minima, parse_permutation,
    prepend_one, qk_family, remaining_string, reverse_complement, sandwich, block_structured,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CEILING = 0, 1, 2, 3

log = logging.getLogger("permlimits")


@dataclass
class RunConfig:
    ceiling_n: int = DEFAULT_CEILING
    workers: int = 1
    cache_path: Path | None = None
    output_format: str = "table"
    force: bool = False

    def __post_init__(self):
        if self.ceiling_n < 1:
            raise ValueError("ceiling must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def default_cache_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "permlimits" / "counts.jsonl"


def _fmt_decimal(x) -> str:
    return f"{float(x):.10f}"


# ---------------------------------------------------------------------------
# output

def emit(rows: list[dict], fmt: str, out) -> None:
    """Write flat records as an aligned table, CSV with a header, or JSON."""
    if fmt == "json":
        out.write(json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n")
        return
    if not rows:
        return
    cols = list(rows[0])
    for r in rows[1:]:
        cols.extend(c for c in r if c not in cols)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: _cell(r.get(c, "")) for c in cols})
        out.write(buf.getvalue())
        return
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


# ---------------------------------------------------------------------------
# commands

def cmd_count(args, cfg: RunConfig, cache, out) -> int:
    q = parse_permutation(args.pattern)
    kw = dict(workers=cfg.workers, ceiling=cfg.ceiling_n, force=cfg.force)
    if args.by_lr_minima:
        dist = count_by_lr_minima(q, args.n, **kw)
        rows = [{"pattern": format_permutation(q), "n": args.n, "m": m, "count": str(c)}
                for m, c in sorted(dist.per_m.items())]
        cache.put(format_permutation(q), args.n, dist.total)
    else:
        c = count_avoiders(q, args.n, cache=cache, **kw)
        if cfg.output_format == "table":
            out.write(f"{c}\n")
            return EXIT_OK
        rows = [{"pattern": format_permutation(q), "n": args.n, "count": str(c)}]
    emit(rows, cfg.output_format, out)
    return EXIT_OK


def cmd_avoiders(args, cfg: RunConfig, cache, out) -> int:
    q = parse_permutation(args.pattern)
    ceiling = min(cfg.ceiling_n, STREAM_CEILING)
    rows = [{"permutation": format_permutation(p)}
            for p in enumerate_avoiders(q, args.n, ceiling=ceiling, force=cfg.force)]
    if cfg.output_format == "table":
        out.writelines(r["permutation"] + "\n" for r in rows)
    else:
        emit(rows, cfg.output_format, out)
    return EXIT_OK


def cmd_classify(args, cfg: RunConfig, cache, out) -> int:
    q = parse_permutation(args.pattern)
    row = {"pattern": format_permutation(q), "length": len(q)}
    if q:
        cuts = classify_decomposability(q)
        prof = left_to_right_minima(q)
        row.update({
            "indecomposable": not cuts,
            "cuts": list(cuts),
            "sum_indecomposable": is_sum_indecomposable(q),
            "layers": list(layers_of(q) or []),
            "layered": layers_of(q) is not None,
            "reverse_complement": format_permutation(reverse_complement(q)),
            "lr_minima_positions": list(prof.positions),
            "lr_minima_values": list(prof.values),
            "remaining": format_permutation(remaining_string(q).raw),
        })
    if cfg.output_format == "table":
        for k, v in row.items():
            out.write(f"{k:20} {_cell(v)}\n")
    else:
        emit([row], cfg.output_format, out)
    return EXIT_OK


def cmd_wilf(args, cfg: RunConfig, cache, out) -> int:
    q1, q2 = parse_permutation(args.pattern), parse_permutation(args.other)
    res = wilf_equivalent_upto(q1, q2, args.max_n, cache=cache, workers=cfg.workers,
                               ceiling=cfg.ceiling_n, force=cfg.force)
    row = {"pattern": format_permutation(q1), "other": format_permutation(q2),
           "max_n": args.max_n, "agree": res.agree}
    if not res.agree:
        row.update(first_difference=res.first_difference,
                   counts=[str(c) for c in res.counts])
    emit([row], cfg.output_format, out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig, cache, out) -> int:
    res = verify.run_suite(args.suite, args.max_n, cache=cache)
    if cfg.output_format == "json":
        out.write(json.dumps({"suite": res.suite, "max_n": res.max_n, "passed": res.passed,
                              "checks": res.checks, "failures": res.failures,
                              "notes": res.notes}, indent=2, default=str) + "\n")
    else:
        status = "pass" if res.passed else "FAIL"
        out.write(f"{res.suite}: {status} ({res.checks} checks, {len(res.failures)} failures)\n")
        for f in res.failures:
            out.write("failure: " + json.dumps(f, default=str) + "\n")
        for note in res.notes:
            out.write(f"note: {note}\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_limit(args, cfg: RunConfig, cache, out) -> int:
    q = parse_permutation(args.pattern)
    max_n = args.max_n if args.max_n is not None else min(8, cfg.ceiling_n)
    rep = bound_report(q, max_n, cache=cache, workers=cfg.workers,
                       ceiling=cfg.ceiling_n, force=cfg.force)
    row = {
        "pattern": format_permutation(q),
        "closed_form": str(rep.closed_form) if rep.closed_form is not None else "unknown",
        "closed_form_decimal": _fmt_decimal(rep.closed_form) if rep.closed_form is not None else "",
        "finite_lower": _fmt_decimal(rep.finite_lower.best),
        "finite_lower_n": rep.finite_lower.witness_n,
        "upper_chain": str(rep.upper_chain.value) if rep.upper_chain else "",
        "upper_chain_decimal": _fmt_decimal(rep.upper_chain.value) if rep.upper_chain else "",
        "valtr_floor": _fmt_decimal(rep.reference_floor),
    }
    if cfg.output_format == "json":
        row["upper_chain_trace"] = rep.upper_chain.trace() if rep.upper_chain else []
        row["counts"] = [str(c) for c in rep.finite_lower.counts]
        row["notes"] = rep.notes
        emit([row], "json", out)
    elif cfg.output_format == "csv":
        emit([row], "csv", out)
    else:
        for k, v in row.items():
            out.write(f"{k:20} {v}\n")
        for line in (rep.upper_chain.trace() if rep.upper_chain else []):
            out.write(f"{'':20} {line}\n")
        for note in rep.notes:
            out.write(f"{'note':20} {note}\n")
    return EXIT_OK


def _blocks(texts):
    return [parse_permutation(t) for t in texts]


def cmd_construct(args, cfg: RunConfig, cache, out) -> int:
    kind = args.kind

    def need(name):
        val = getattr(args, name)
        if val is None:
            raise PatternError(f"construct {kind} needs --{name.replace('_', '-')}")
        return val

    if kind == "qprime":
        p = prepend_one(parse_permutation(need("pattern")))
    elif kind == "sandwich":
        p = sandwich(parse_permutation(need("pattern")))
    elif kind == "qk":
        p = qk_family(need("k"))
    elif kind == "layered":
        p = layered_from_composition([int(x) for x in need("layers").split(",")])
    elif kind == "block":
        p = block_structured(_blocks(need("blocks")))
    else:  # witness
        p_prime = parse_permutation(need("p_prime"))
        N = need("N")
        if args.blocks:
            blocks = _blocks(args.blocks)
        else:
            rest = len(remaining_string(extend_with_buffer(p_prime, N)).raw)
            blocks = [layered_from_composition([length]) for length in block_lengths(rest, N)]
        p = build_witness(WitnessParams(p_prime, N, tuple(blocks)))
    text = format_permutation(p)
    if cfg.output_format == "table":
        out.write(text + "\n")
    else:
        emit([{"kind": kind, "permutation": text}], cfg.output_format, out)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count, "avoiders": cmd_avoiders, "classify": cmd_classify,
    "wilf": cmd_wilf, "verify": cmd_verify, "limit": cmd_limit, "construct": cmd_construct,
}


# ---------------------------------------------------------------------------
# parser

def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--cache", type=Path, default=d(None), help="count cache file (JSON lines)")
    p.add_argument("--no-cache", action="store_true", default=d(False), help="disable the on-disk cache")
    p.add_argument("--workers", type=int, default=d(None), help="worker processes (default: all cores)")
    p.add_argument("--ceiling", type=int, default=d(DEFAULT_CEILING), help="largest n computed without --force")
    p.add_argument("--format", choices=("table", "csv", "json"), default=d("table"))
    p.add_argument("--force", action="store_true", default=d(False), help="ignore the resource ceiling")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permlimits",
                                     description="Pattern-avoidance counts and growth-rate bounds.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _add_globals(p, suppress=True)
        return p

    p = add("count", "count avoiders of a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--by-lr-minima", action="store_true")

    p = add("avoiders", "list avoiders in lexicographic order")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("classify", "structural facts about a pattern")
    p.add_argument("--pattern", required=True)

    p = add("wilf", "compare avoider counts of two patterns")
    p.add_argument("--pattern", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--max-n", type=int, default=8)

    p = add("verify", "run an invariant suite")
    p.add_argument("suite", choices=verify.SUITES)
    p.add_argument("--max-n", type=int, default=7)

    p = add("limit", "growth-rate bounds for a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--max-n", type=int, default=None)

    p = add("construct", "build a pattern or witness permutation")
    p.add_argument("kind", choices=("qprime", "sandwich", "qk", "layered", "block", "witness"))
    p.add_argument("--pattern")
    p.add_argument("--k", type=int)
    p.add_argument("--layers", help="comma-separated layer lengths, e.g. 3,4")
    p.add_argument("--blocks", nargs="+", help="block patterns, e.g. 21 12")
    p.add_argument("--p-prime", dest="p_prime")
    p.add_argument("--N", type=int)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(ceiling_n=args.ceiling, workers=default_workers() if args.workers is None else args.workers,
                        cache_path=None if args.no_cache else (args.cache or default_cache_path()),
                        output_format=args.format, force=args.force)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cache = CountCache(cfg.cache_path) if cfg.cache_path else MemoryCache()
    try:
        return COMMANDS[args.command](args, cfg, cache, out)
    except CeilingExceeded as exc:
        print(f"error: {exc} (use --force on the command line)", file=sys.stderr)
        return EXIT_CEILING
    except WitnessError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
