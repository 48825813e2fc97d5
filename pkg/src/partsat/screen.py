"""Corpus screening: classify each CNF file by where its target total falls."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from .cnf import Formula, load
from .decider import BudgetExceeded, Partition, decide, target_total
from .sigma_analysis import sigma_extremes

AT_MIN, AT_MAX, OUT_OF_RANGE, BETWEEN = "AtMin", "AtMax", "OutOfRange", "Between"


@dataclass(frozen=True)
class PartitionSpec:
    """A partition request that is resolved per formula.

    ``mu`` is comma text where ``m`` stands for the clause count; ``l`` selects
    l-in-k (all clauses with exactly l true literals).
    """

    mu: Optional[str] = None
    l: Optional[int] = None

    def __post_init__(self):
        if (self.mu is None) == (self.l is None):
            raise ValueError("give exactly one of mu or l")

    def resolve(self, f: Formula) -> Partition:
        if self.l is not None:
            return Partition.l_in_k(f, self.l)
        p = Partition.parse(self.mu, f.m)
        return p.for_formula(f)

    def describe(self) -> str:
        return f"{self.l}-in-k" if self.l is not None else f"mu={self.mu}"


def applicability(target: int, sigma_min: int, sigma_max: int) -> str:
    if target == sigma_min:
        return AT_MIN
    if target == sigma_max:
        return AT_MAX
    if target < sigma_min or target > sigma_max:
        return OUT_OF_RANGE
    return BETWEEN


@dataclass
class ScreenRecord:
    path: str
    m: Optional[int] = None
    n: Optional[int] = None
    exact_k: Optional[int] = None
    read_p: Optional[int] = None
    completely_mixed: Optional[bool] = None
    square: Optional[bool] = None
    sigma_min: Optional[int] = None
    sigma_max: Optional[int] = None
    n_eq: Optional[int] = None
    target: Optional[int] = None
    applicability: Optional[str] = None
    verdict: Optional[str] = None
    candidates_checked: Optional[int] = None
    elapsed_ms: Optional[float] = None
    error: Optional[str] = None


FIELDS = [f.name for f in fields(ScreenRecord)]


def screen_file(path, spec: PartitionSpec, budget: Optional[int] = None, timing: bool = False) -> ScreenRecord:
    rec = ScreenRecord(path=str(path))
    t0 = time.perf_counter()
    try:
        f = load(path)
    except (OSError, ValueError) as exc:
        rec.error = f"parse: {exc}"
        return rec
    flags = f.flags
    ext = sigma_extremes(f)
    rec.m, rec.n = f.m, f.n
    rec.exact_k, rec.read_p = flags.exact_k, flags.read_p
    rec.completely_mixed, rec.square = flags.completely_mixed, flags.square
    rec.sigma_min, rec.sigma_max, rec.n_eq = ext.sigma_min, ext.sigma_max, ext.n_eq
    try:
        p = spec.resolve(f)
    except ValueError as exc:
        rec.error = f"partition: {exc}"
        return rec
    rec.target = target_total(p)
    rec.applicability = applicability(rec.target, ext.sigma_min, ext.sigma_max)
    try:
        d = decide(f, p, budget)
        rec.verdict = d.verdict
        rec.candidates_checked = d.candidates_checked
    except BudgetExceeded:
        rec.verdict = "budget_exceeded"
    if timing:
        rec.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return rec


def _screen_args(args):
    return screen_file(*args)


def screen_directory(directory, spec: PartitionSpec, jobs: int = 1, budget: Optional[int] = None,
                     timing: bool = False) -> list[ScreenRecord]:
    """One record per ``*.cnf`` / ``*.mat`` file, sorted by path."""
    directory = Path(directory)
    paths = sorted(p for p in directory.iterdir() if p.suffix in (".cnf", ".mat") and p.is_file())
    work = [(p, spec, budget, timing) for p in paths]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_screen_args, work, chunksize=max(1, len(work) // (4 * jobs))))
    return [screen_file(*w) for w in work]


def summary(records: list[ScreenRecord]) -> dict[str, int]:
    out = {AT_MIN: 0, AT_MAX: 0, OUT_OF_RANGE: 0, BETWEEN: 0, "error": 0}
    for r in records:
        if r.error:
            out["error"] += 1
        else:
            out[r.applicability] += 1
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def records_csv(records: list[ScreenRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([_cell(getattr(r, name)) for name in FIELDS])
    return buf.getvalue()


def records_json(records: list[ScreenRecord]) -> str:
    return json.dumps({"records": [asdict(r) for r in records], "summary": summary(records)}, indent=1)
