"""Suite runner: bound reports over many instances, aggregation, CSV summary."""
from __future__ import annotations

import csv
import io
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .bounds import FAIL, INFORMATIVE, PASS, SKIPPED, ReportOptions, bound_report, subadditivity_report
from .clutter import Clutter
from .ideal import edge_ideal
from .instances import Instance

CSV_COLUMNS = [
    "id", "n", "edges", "sdepth_quot", "sdepth_ideal", "sreg_quot", "sreg_ideal",
    "depth_quot", "projdim_quot", "reg_quot", "size", "cosize", "domination_bound",
    "free_vertex_bound", "collage_weight", "cochord", "minimax_matching",
    "pass", "fail", "skipped", "informative", "error",
]


def _run_one(args) -> dict:
    inst, options, timing = args
    start = time.perf_counter()
    try:
        rec = bound_report(inst.clutter, options, inst.id).to_record()
    except Exception as exc:  # localized: one bad instance must not stop the run
        rec = {"id": inst.id, "n": inst.clutter.n, "edges": inst.clutter.edge_lists(),
               "error": f"{type(exc).__name__}: {exc}"}
    if inst.warnings:
        rec["warnings"] = list(inst.warnings)
    if timing:
        rec["seconds"] = round(time.perf_counter() - start, 6)
    return rec


def _run_pair(args) -> dict:
    ident, a, b, budget = args
    try:
        rep = subadditivity_report(edge_ideal(a), edge_ideal(b), budget)
    except Exception as exc:
        return {"id": ident, "error": f"{type(exc).__name__}: {exc}"}
    return {"id": ident, "n": a.n, "edges_1": a.edge_lists(), "edges_2": b.edge_lists(), **rep}


@dataclass
class SuiteResult:
    records: list
    pair_records: list = field(default_factory=list)

    def verdict_counts(self) -> dict:
        """``{verdict name: {status: count}}`` over instances and pairs."""
        out: dict = {}
        for rec in self.records + self.pair_records:
            for name, status in rec.get("verdicts", {}).items():
                out.setdefault(name, Counter())[status] += 1
        return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}

    def status_totals(self) -> Counter:
        tot = Counter()
        for per in self.verdict_counts().values():
            tot.update(per)
        return tot

    @property
    def failed(self) -> bool:
        return self.status_totals()[FAIL] > 0

    @property
    def errors(self) -> int:
        return sum(1 for r in self.records + self.pair_records if "error" in r)

    def gap_histograms(self) -> dict:
        """Conjecture gaps: value histograms plus the number of negative gaps."""
        out: dict = {}
        for rec in self.records:
            for name, gap in rec.get("gaps", {}).items():
                if gap is not None:
                    out.setdefault(name, Counter())[gap] += 1
        return {
            name: {"histogram": {str(k): hist[k] for k in sorted(hist)},
                   "violations": sum(c for k, c in hist.items() if k < 0)}
            for name, hist in sorted(out.items())
        }

    def summary(self) -> dict:
        totals = self.status_totals()
        return {
            "instances": len(self.records),
            "pairs": len(self.pair_records),
            "errors": self.errors,
            "totals": {k: totals[k] for k in (PASS, FAIL, SKIPPED, INFORMATIVE)},
            "verdicts": self.verdict_counts(),
            "conjecture_gaps": self.gap_histograms(),
        }

    def exit_status(self) -> int:
        """Nonzero exactly when a proved inequality failed."""
        return 1 if self.failed else 0


def verify_suite(instances: Sequence[Instance], options: ReportOptions = ReportOptions(),
                 pairs: Sequence[tuple[Clutter, Clutter]] = (), jobs: int = 1,
                 timing: bool = False) -> SuiteResult:
    """Bound reports for every instance (input order kept) plus subadditivity pairs."""
    work = [(inst, options, timing) for inst in instances]
    pair_work = [(f"pair{k}", a, b, options.budget) for k, (a, b) in enumerate(pairs)]
    if jobs > 1 and len(work) + len(pair_work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, work, chunksize=4))
            pair_records = list(pool.map(_run_pair, pair_work, chunksize=4))
    else:
        records = [_run_one(w) for w in work]
        pair_records = [_run_pair(w) for w in pair_work]
    return SuiteResult(records, pair_records)


def csv_summary(records: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        values = rec.get("values", {})
        statuses = Counter(rec.get("verdicts", {}).values())
        row = {"id": rec["id"], "n": rec.get("n"),
               "edges": " ".join("-".join(map(str, e)) for e in rec.get("edges", [])),
               "pass": statuses[PASS], "fail": statuses[FAIL],
               "skipped": statuses[SKIPPED], "informative": statuses[INFORMATIVE],
               "error": rec.get("error", "")}
        for col in CSV_COLUMNS:
            if col not in row:
                v = values.get(col)
                row[col] = "" if v is None else v
        writer.writerow(row)
    return buf.getvalue()
