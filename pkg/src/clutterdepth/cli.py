"""Command-line front end.

    clutterdepth invariants FILE     Stanley depth/regularity, depth, projdim, reg
    clutterdepth bounds FILE         every bound and verdict per instance
    clutterdepth dual FILE           Alexander duals as instance lines
    clutterdepth verify [FILE]       bound suite with aggregated summary
    clutterdepth generate            seeded random instances

FILE is a JSON-lines instance file (``-`` for stdin).  Output is deterministic
for a fixed configuration unless ``--timing`` is given.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .bounds import SKIPPED, ReportOptions, bound_report
from .harness import csv_summary, verify_suite
from .homology import field_name, homological_invariants, parse_field
from .ideal import alexander_dual, cosize, edge_ideal, ideal_clutter, size
from .instances import (
    InstanceError,
    all_clutters_up_to,
    instance_line,
    parse_lines,
    random_ideal_pairs,
    random_instances,
)
from .sdepth import Mode, default_budget, stanley_depth, stanley_regularity


def _shared(p: argparse.ArgumentParser, max_n: int) -> None:
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--budget", type=int, default=None,
                   help="search node budget per Stanley depth call (default: $CLUTTERDEPTH_BUDGET, else unlimited)")
    p.add_argument("--field", default="q", help="coefficient field: q or p:<prime> (default q)")
    p.add_argument("--max-n", type=int, default=max_n, help=f"largest vertex count accepted (default {max_n})")
    p.add_argument("--emit", choices=("records", "csv", "both"), default="records")
    p.add_argument("--csv", dest="csv_path", default="report.csv",
                   help="CSV destination when --emit both (default report.csv)")
    p.add_argument("--witnesses", action="store_true", help="include witness partitions and collages")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to each record")
    p.add_argument("--strict", action="store_true", help="reject non-antichain edge lists instead of minimalizing")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clutterdepth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("invariants", help="Stanley depth/regularity and homological invariants")
    p.add_argument("input")
    _shared(p, 16)

    p = sub.add_parser("bounds", help="bound report per instance")
    p.add_argument("input")
    _shared(p, 10)

    p = sub.add_parser("dual", help="Alexander dual of each edge ideal")
    p.add_argument("input")
    _shared(p, 16)

    p = sub.add_parser("verify", help="run the bound suite and summarize")
    p.add_argument("input", nargs="?", help="instance file; omit to use --random/--exhaustive")
    p.add_argument("--random", type=int, default=0, help="number of seeded random clutters")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--exhaustive", type=int, default=0, help="all clutters on up to this many vertices")
    p.add_argument("--pairs", type=int, default=0, help="random ideal pairs for subadditivity")
    p.add_argument("--summary", default=None, help="write the JSON summary here instead of stderr")
    _shared(p, 10)

    p = sub.add_parser("generate", help="seeded random instances as JSON lines")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--mode", choices=("uniform", "mixed", "both"), default="both")
    _shared(p, 16)
    return parser


def _read(args) -> list:
    if args.input == "-":
        lines = sys.stdin.readlines()
    else:
        with open(args.input, encoding="utf-8") as fh:
            lines = fh.readlines()
    insts = parse_lines(lines, strict=args.strict)
    for inst in insts:
        for w in inst.warnings:
            print(f"warning: {inst.id}: {w}", file=sys.stderr)
    return insts


def _budget(args):
    return default_budget() if args.budget is None else args.budget


def _dump(rec: dict) -> str:
    return json.dumps(rec, separators=(", ", ": "))


def _flat_csv(records: list) -> str:
    cols: list = []
    for rec in records:
        for k in rec:
            if k not in cols and not isinstance(rec[k], (dict, list)):
                cols.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: "" if rec.get(k) is None else rec.get(k) for k in cols})
    return buf.getvalue()


def _emit(args, records: list, table: str) -> None:
    out = sys.stdout
    if args.emit in ("records", "both"):
        for rec in records:
            out.write(_dump(rec) + "\n")
    if args.emit == "csv":
        out.write(table)
    elif args.emit == "both":
        with open(args.csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(table)


def _too_big(inst, args) -> dict | None:
    if inst.clutter.n > args.max_n:
        return {"id": inst.id, "n": inst.clutter.n, "error": f"n exceeds --max-n {args.max_n}"}
    return None


def _invariants_record(inst, args, field: int) -> dict:
    C = inst.clutter
    I = edge_ideal(C)
    budget = _budget(args)
    start = time.perf_counter()
    rec = {"id": inst.id, "n": C.n, "edges": C.edge_lists(), "field": field_name(field)}
    hom = homological_invariants(I, field)
    rec.update(depth_quot=hom.depth, projdim_quot=hom.projdim, reg_quot=hom.reg)
    if I.is_zero:
        rec.update(sdepth_quot=C.n, sreg_quot=0)
    else:
        sd_q = stanley_depth(I, Mode.QUOTIENT, budget)
        sd_i = stanley_depth(I, Mode.IDEAL, budget)
        sr_q = stanley_regularity(I, Mode.QUOTIENT, budget)
        sr_i = stanley_regularity(I, Mode.IDEAL, budget)
        rec.update(sdepth_quot=sd_q.value, sdepth_ideal=sd_i.value,
                   sreg_quot=sr_q.value, sreg_ideal=sr_i.value,
                   size=size(I), cosize=cosize(I))
        statuses = {r.status.value for r in (sd_q, sd_i, sr_q, sr_i)}
        rec["status"] = "indeterminate" if "indeterminate" in statuses else "exact"
        if args.witnesses:
            rec["witnesses"] = {k: r.partition.interval_lists() for k, r in
                                (("sdepth_quot", sd_q), ("sdepth_ideal", sd_i)) if r.partition is not None}
    if args.timing:
        rec["seconds"] = round(time.perf_counter() - start, 6)
    return rec


def cmd_invariants(args) -> int:
    field = parse_field(args.field)
    records = []
    for inst in _read(args):
        records.append(_too_big(inst, args) or _invariants_record(inst, args, field))
    _emit(args, records, _flat_csv(records))
    return 0


def cmd_bounds(args) -> int:
    options = ReportOptions(_budget(args), parse_field(args.field), args.witnesses)
    records = []
    failed = False
    for inst in _read(args):
        bad = _too_big(inst, args)
        if bad:
            records.append(bad)
            continue
        start = time.perf_counter()
        rep = bound_report(inst.clutter, options, inst.id)
        rec = rep.to_record()
        if args.timing:
            rec["seconds"] = round(time.perf_counter() - start, 6)
        failed = failed or bool(rep.failures())
        records.append(rec)
    _emit(args, records, csv_summary(records))
    return 1 if failed else 0


def cmd_dual(args) -> int:
    status = 0
    for inst in _read(args):
        I = edge_ideal(inst.clutter)
        if I.is_zero:
            print(f"error: {inst.id}: the zero ideal has no Alexander dual here", file=sys.stderr)
            status = 2
            continue
        dual = ideal_clutter(alexander_dual(I))
        sys.stdout.write(instance_line(dual, f"{inst.id}-dual" if inst.id else "") + "\n")
    return status


def cmd_verify(args) -> int:
    options = ReportOptions(_budget(args), parse_field(args.field), args.witnesses)
    insts = _read(args) if args.input else []
    if args.exhaustive:
        insts += all_clutters_up_to(args.exhaustive)
    if args.random:
        insts += random_instances(args.seed, args.random, args.n_min, min(args.n_max, args.max_n))
    if not insts and not args.pairs:
        print("error: nothing to verify (give a file, --random or --exhaustive)", file=sys.stderr)
        return 2
    kept, records = [], []
    for inst in insts:
        bad = _too_big(inst, args)
        if bad:
            records.append(bad)
        else:
            kept.append(inst)
    pairs = random_ideal_pairs(args.seed, args.pairs, 2, min(args.max_n, 6)) if args.pairs else []
    result = verify_suite(kept, options, pairs, jobs=args.jobs, timing=args.timing)
    result.records = records + result.records
    _emit(args, result.records + result.pair_records, csv_summary(result.records))
    summary = json.dumps(result.summary(), indent=2)
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(summary + "\n")
    else:
        print(summary, file=sys.stderr)
    totals = result.status_totals()
    if totals[SKIPPED] or result.errors:
        print(f"warning: {totals[SKIPPED]} verdicts skipped, {result.errors} instances with errors",
              file=sys.stderr)
    return result.exit_status()


def cmd_generate(args) -> int:
    for inst in random_instances(args.seed, args.count, args.n_min, min(args.n_max, args.max_n), args.mode):
        sys.stdout.write(instance_line(inst.clutter, inst.id) + "\n")
    return 0


COMMANDS = {
    "invariants": cmd_invariants,
    "bounds": cmd_bounds,
    "dual": cmd_dual,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except (InstanceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
