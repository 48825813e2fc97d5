"""Sum satisfiability: the number of true literals under an assignment.

Assignments are tuples of ``+1`` / ``-1`` (``+1`` means true), indexed by
variable ``1..n`` at positions ``0..n-1``. The integer encoding used for
ordering sets bit ``s-1`` when variable ``s`` is true.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterator, Literal as Which, Sequence

import numpy as np

from .cnf import Formula

Assignment = tuple[int, ...]

ENUMERATION_LIMIT = 20


class EnumerationLimitError(ValueError):
    pass


def check_assignment(f: Formula, x: Sequence[int]) -> Assignment:
    x = tuple(int(v) for v in x)
    if len(x) != f.n:
        raise ValueError(f"assignment has {len(x)} entries, formula has n={f.n}")
    if any(v not in (1, -1) for v in x):
        raise ValueError("assignment entries must be +1 or -1")
    return x


def encode(x: Sequence[int]) -> int:
    return sum(1 << i for i, v in enumerate(x) if v == 1)


def decode(index: int, n: int) -> Assignment:
    return tuple(1 if index >> i & 1 else -1 for i in range(n))


def _literal_true(lit: int, x: Assignment) -> bool:
    return (x[abs(lit) - 1] == 1) == (lit > 0)


def sigma_per_clause(f: Formula, x: Sequence[int]) -> list[int]:
    x = check_assignment(f, x)
    return [sum(_literal_true(lit, x) for lit in c) for c in f.clauses]


def sigma(f: Formula, x: Sequence[int]) -> int:
    """Total number of true literals, computed variable-wise from the counts."""
    x = check_assignment(f, x)
    st = f.stats
    total = sum(p if v == 1 else q for v, p, q in zip(x, st.pos, st.neg))
    if __debug__:
        assert total == sum(sigma_per_clause(f, x))
    return total


@dataclass(frozen=True)
class SigmaExtremes:
    sigma_min: int
    sigma_max: int
    x_min_base: Assignment
    x_max_base: Assignment
    degenerate_vars: frozenset[int]

    @property
    def n_eq(self) -> int:
        return len(self.degenerate_vars)

    def as_dict(self) -> dict:
        return {
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "x_min_base": list(self.x_min_base),
            "x_max_base": list(self.x_max_base),
            "degenerate_vars": sorted(self.degenerate_vars),
            "n_eq": self.n_eq,
        }


def sigma_extremes(f: Formula) -> SigmaExtremes:
    st = f.stats
    lo = hi = 0
    x_min = []
    x_max = []
    degenerate = []
    for s, (p, q) in enumerate(zip(st.pos, st.neg), start=1):
        if p > q:
            lo += q
            hi += p
            x_min.append(-1)
            x_max.append(1)
        elif p < q:
            lo += p
            hi += q
            x_min.append(1)
            x_max.append(-1)
        else:
            lo += p
            hi += p
            x_min.append(-1)
            x_max.append(-1)
            degenerate.append(s)
    return SigmaExtremes(lo, hi, tuple(x_min), tuple(x_max), frozenset(degenerate))


def achievers(f: Formula, which: Which["min", "max"] = "min",
              extremes: SigmaExtremes | None = None) -> Iterator[Assignment]:
    """Yield every assignment attaining the extreme, in encoding order.

    There are exactly ``2**n_eq`` of them: the base assignment with every sign
    combination on the degenerate variables.
    """
    if which not in ("min", "max"):
        raise ValueError("which must be 'min' or 'max'")
    ext = extremes or sigma_extremes(f)
    base = list(ext.x_min_base if which == "min" else ext.x_max_base)
    free = sorted(ext.degenerate_vars)
    for t in range(1 << len(free)):
        x = base[:]
        for i, s in enumerate(free):
            x[s - 1] = 1 if t >> i & 1 else -1
        yield tuple(x)


# --- characteristic function -----------------------------------------------------

def log_char_function(f: Formula, a: float) -> float:
    """log of 2^-n * prod_s (e^{a p+} + e^{a p-})."""
    st = f.stats
    pos = np.asarray(st.pos, dtype=float)
    neg = np.asarray(st.neg, dtype=float)
    return float(np.logaddexp(a * pos, a * neg).sum() - f.n * math.log(2.0))


def char_function(f: Formula, a: float) -> float:
    if not math.isfinite(a):
        raise ValueError("argument must be finite")
    log_value = log_char_function(f, a)
    if log_value > math.log(np.finfo(float).max):
        raise OverflowError(f"char_function overflows at a={a} (log value {log_value:.1f})")
    value = math.exp(log_value)
    if __debug__ and f.flags.exact_read_p == 3:
        simple = char_function_read3(f, a)
        assert math.isclose(value, simple, rel_tol=1e-9), (value, simple)
    return value


def char_function_read3(f: Formula, a: float) -> float:
    """Closed form for formulas where every variable has degree exactly 3.

    e^{a n} ((e^a + 1)/2)^n (2 cosh a - 1)^{n_pure}
    """
    if f.flags.exact_read_p != 3:
        raise ValueError("closed form needs every variable to have degree 3")
    n = f.n
    n_pure = f.stats.n_pure
    log_value = a * n + n * math.log((math.exp(a) + 1.0) / 2.0) + n_pure * math.log(2.0 * math.cosh(a) - 1.0)
    return math.exp(log_value)


def char_function_enumerated(f: Formula, a: float, limit: int = ENUMERATION_LIMIT) -> float:
    """Mean of e^{a sigma(x)} over all 2^n assignments, by enumeration."""
    hist = sigma_histogram(f, limit)
    total = sum(hist.values())
    shift = max(a * k for k in hist)
    acc = math.fsum(c * math.exp(a * k - shift) for k, c in hist.items())
    return math.exp(shift + math.log(acc / total))


# --- enumeration ---------------------------------------------------------------

def assignment_bits(n: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the truth table: bit ``s-1`` of the row index is variable ``s``."""
    idx = np.arange(start, stop, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.int8)


def sigma_histogram(f: Formula, limit: int = ENUMERATION_LIMIT, block: int = 1 << 16) -> dict[int, int]:
    """Count assignments per sigma value, enumerating all 2^n, literal by literal."""
    if f.n > limit:
        raise EnumerationLimitError(f"n={f.n} exceeds enumeration limit {limit}")
    total = 1 << f.n
    counts: dict[int, int] = {}
    for start in range(0, total, block):
        stop = min(start + block, total)
        bits = assignment_bits(f.n, start, stop)
        values = np.zeros(stop - start, dtype=np.int64)
        for clause in f.clauses:
            for lit in clause:
                col = bits[:, abs(lit) - 1]
                values += col if lit > 0 else 1 - col
        keys, freq = np.unique(values, return_counts=True)
        for k, c in zip(keys.tolist(), freq.tolist()):
            counts[k] = counts.get(k, 0) + c
    return dict(sorted(counts.items()))


def binomial_comparison(f: Formula, hist: dict[int, int]) -> list[tuple[int, int, int]]:
    """Rows (sigma, observed, expected) with expected C(n, sigma - n)."""
    n = f.n
    rows = []
    for k in range(n + 1):
        rows.append((n + k, hist.get(n + k, 0), math.comb(n, k)))
    extra = [v for v in hist if not n <= v <= 2 * n]
    for v in sorted(extra):
        rows.append((v, hist[v], 0))
    return sorted(rows)


def binomial_law_applies(f: Formula) -> bool:
    flags = f.flags
    return flags.exact_read_p == 3 and flags.completely_mixed


def histogram_csv(hist: dict[int, int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sigma", "count"])
    for k, c in sorted(hist.items()):
        w.writerow([k, c])
    return buf.getvalue()


def histogram_json(hist: dict[int, int]) -> str:
    return json.dumps({str(k): c for k, c in sorted(hist.items())})
