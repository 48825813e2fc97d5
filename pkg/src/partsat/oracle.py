"""Brute-force ground truth over all 2^n assignments.

Nothing here prunes or reasons about sigma; every query walks the full truth
table in index order (bit s-1 of the index is variable s, 1 = true) and
counts true literals per clause through incidence matrices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cnf import Formula

DEFAULT_LIMIT = 20
BLOCK = 1 << 15


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    witnesses: tuple[tuple[int, ...], ...]
    enumerated: int
    elapsed: float

    def as_dict(self) -> dict:
        return {
            "witnesses": [list(w) for w in self.witnesses],
            "enumerated": self.enumerated,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


def _incidence(f: Formula) -> tuple[np.ndarray, np.ndarray]:
    pos = np.zeros((f.n, f.m), dtype=np.int32)
    neg = np.zeros((f.n, f.m), dtype=np.int32)
    for j, clause in enumerate(f.clauses):
        for lit in clause:
            if lit > 0:
                pos[lit - 1, j] += 1
            else:
                neg[-lit - 1, j] += 1
    return pos, neg


def _blocks(f: Formula, limit: int):
    """Yield (start index, bits, per-clause true counts) over the truth table."""
    if f.n > limit:
        raise OracleLimitError(f"n={f.n} exceeds oracle limit {limit}")
    pos, neg = _incidence(f)
    neg_total = neg.sum(axis=0)
    shifts = np.arange(f.n, dtype=np.int64)
    total = 1 << f.n
    for start in range(0, total, BLOCK):
        idx = np.arange(start, min(start + BLOCK, total), dtype=np.int64)
        bits = ((idx[:, None] >> shifts) & 1).astype(np.int32)
        # true negatives = occurrences on false variables
        counts = bits @ pos + (neg_total - bits @ neg)
        yield start, bits, counts


def _to_assignment(row: np.ndarray) -> tuple[int, ...]:
    return tuple(int(2 * b - 1) for b in row)


def _search(f: Formula, limit: int, keep: Callable[[np.ndarray], np.ndarray]) -> OracleResult:
    t0 = time.perf_counter()
    found = []
    for _, bits, counts in _blocks(f, limit):
        mask = keep(counts)
        found.extend(_to_assignment(row) for row in bits[mask])
    return OracleResult(tuple(found), 1 << f.n, time.perf_counter() - t0)


def brute_partsat(f: Formula, mu: Sequence[int], limit: int = DEFAULT_LIMIT) -> OracleResult:
    """All assignments whose per-clause true-literal histogram equals ``mu``."""
    mu = tuple(getattr(mu, "mu", mu))
    width = max(len(mu), max(map(len, f.clauses), default=0) + 1)
    wanted = np.array(mu + (0,) * (width - len(mu)), dtype=np.int64)

    def keep(counts):
        hist = np.stack([(counts == a).sum(axis=1) for a in range(width)], axis=1)
        return (hist == wanted).all(axis=1)

    return _search(f, limit, keep)


def brute_nae(f: Formula, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """All assignments leaving every clause with one or two true literals."""
    if any(len(c) != 3 for c in f.clauses):
        raise ValueError("brute_nae needs an exact 3-CNF")
    return _search(f, limit, lambda counts: ((counts >= 1) & (counts <= 2)).all(axis=1))


def brute_sat(f: Formula, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Plain satisfiability: at least one true literal per clause."""
    return _search(f, limit, lambda counts: (counts >= 1).all(axis=1))


@dataclass(frozen=True)
class BruteExtremes:
    sigma_min: int
    sigma_max: int
    min_achievers: tuple[tuple[int, ...], ...]
    max_achievers: tuple[tuple[int, ...], ...]


def brute_extremes(f: Formula, limit: int = DEFAULT_LIMIT) -> BruteExtremes:
    lo, hi = None, None
    lo_rows: list = []
    hi_rows: list = []
    for _, bits, counts in _blocks(f, limit):
        totals = counts.sum(axis=1)
        bmin, bmax = int(totals.min()), int(totals.max())
        if lo is None or bmin < lo:
            lo, lo_rows = bmin, []
        if bmin == lo:
            lo_rows.extend(_to_assignment(r) for r in bits[totals == lo])
        if hi is None or bmax > hi:
            hi, hi_rows = bmax, []
        if bmax == hi:
            hi_rows.extend(_to_assignment(r) for r in bits[totals == hi])
    return BruteExtremes(lo, hi, tuple(lo_rows), tuple(hi_rows))


def brute_sigma_values(f: Formula, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """sigma for every assignment, in index order."""
    return np.concatenate([counts.sum(axis=1) for _, _, counts in _blocks(f, limit)])
