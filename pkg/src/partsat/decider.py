"""PART-SAT decisions on instances whose target total sits at a sigma extreme.

A partition ``mu`` asks for an assignment under which exactly ``mu[a]`` clauses
have ``a`` true literals. Any such assignment has sigma equal to
``sum(a * mu[a])``. When that total is the minimum or maximum of sigma, only
the ``2**n_eq`` extremal assignments can qualify, so checking them decides the
instance.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cnf import Formula
from .sigma_analysis import Assignment, achievers, sigma_extremes, sigma_per_clause

DEFAULT_BUDGET = 1 << 20

YES, NO, INAPPLICABLE = "yes", "no", "inapplicable"
TARGET_BELOW_MIN = "TargetBelowMin"
TARGET_ABOVE_MAX = "TargetAboveMax"
ALL_CANDIDATES_FAIL = "AllCandidatesFail"


class BudgetExceeded(RuntimeError):
    """The degeneracy factor 2**n_eq is larger than the candidate budget."""

    def __init__(self, n_eq: int, budget: int):
        super().__init__(f"2**{n_eq} candidates exceed budget {budget}")
        self.n_eq = n_eq
        self.budget = budget


def default_budget() -> int:
    value = os.environ.get("PARTSAT_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


@dataclass(frozen=True)
class Partition:
    mu: tuple[int, ...]

    def __post_init__(self):
        mu = tuple(int(v) for v in self.mu)
        if not mu or any(v < 0 for v in mu):
            raise ValueError(f"partition entries must be nonnegative, got {self.mu}")
        object.__setattr__(self, "mu", mu)

    @property
    def m(self) -> int:
        return sum(self.mu)

    def padded(self, length: int) -> tuple[int, ...]:
        if len(self.mu) >= length:
            return self.mu
        return self.mu + (0,) * (length - len(self.mu))

    def for_formula(self, f: Formula) -> "Partition":
        """Zero-pad to ``max_width + 1`` entries and check the sum against m."""
        if self.m != f.m:
            raise ValueError(f"partition sums to {self.m}, formula has m={f.m}")
        length = f.max_width + 1
        mu = self.padded(length)
        if any(mu[length:]):
            raise ValueError(f"partition asks for clauses with more than {f.max_width} true literals")
        return Partition(mu)

    @classmethod
    def parse(cls, text: str, m: int) -> "Partition":
        """Comma-separated counts; the symbol ``m`` stands for the clause count."""
        values = []
        for tok in text.split(","):
            tok = tok.strip()
            values.append(m if tok == "m" else int(tok))
        return cls(tuple(values))

    @classmethod
    def l_in_k(cls, f: Formula, l: int) -> "Partition":
        if l < 0 or l > f.max_width and f.m:
            raise ValueError(f"l={l} outside 0..{f.max_width}")
        narrow = [w for w in f.stats.widths if w < l]
        if narrow:
            raise ValueError(f"l={l} exceeds the width of {len(narrow)} clause(s)")
        mu = [0] * (max(f.max_width, l) + 1)
        mu[l] = f.m
        return cls(tuple(mu))


def target_total(p: Partition) -> int:
    return sum(a * c for a, c in enumerate(p.mu))


@dataclass(frozen=True)
class ClauseProfile:
    nu: tuple[int, ...]

    def matches(self, p: Partition) -> bool:
        length = max(len(self.nu), len(p.mu))
        return _pad(self.nu, length) == _pad(p.mu, length)


def _pad(values: tuple[int, ...], length: int) -> tuple[int, ...]:
    return values + (0,) * (length - len(values))


def clause_profile(f: Formula, x: Sequence[int]) -> ClauseProfile:
    counts = sigma_per_clause(f, x)
    nu = [0] * (f.max_width + 1)
    for c in counts:
        nu[c] += 1
    return ClauseProfile(tuple(nu))


@dataclass(frozen=True)
class Decision:
    verdict: str
    target: int
    sigma_min: int
    sigma_max: int
    n_eq: int
    reason: Optional[str] = None
    witnesses: tuple[Assignment, ...] = ()
    candidates_checked: int = 0
    failures: tuple[tuple[Assignment, tuple[int, ...]], ...] = field(default=(), compare=False)

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.reason is not None:
            out["reason"] = self.reason
        out.update(
            target=self.target,
            sigma_min=self.sigma_min,
            sigma_max=self.sigma_max,
            n_eq=self.n_eq,
            witnesses=[list(w) for w in self.witnesses],
            candidates_checked=self.candidates_checked,
        )
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def decide(f: Formula, p: Partition, budget: Optional[int] = None) -> Decision:
    """Decide ``p``-SAT for ``f`` when the target total is at or beyond a sigma extreme.

    Returns an ``inapplicable`` decision when the target lies strictly between
    the extremes. Raises :class:`BudgetExceeded` when the extremal candidate
    set is larger than ``budget``.
    """
    if budget is None:
        budget = default_budget()
    if budget < 1:
        raise ValueError("budget must be at least 1")
    p = p.for_formula(f)
    ext = sigma_extremes(f)
    target = target_total(p)
    common = dict(target=target, sigma_min=ext.sigma_min, sigma_max=ext.sigma_max, n_eq=ext.n_eq)

    if target < ext.sigma_min:
        return Decision(NO, reason=TARGET_BELOW_MIN, **common)
    if target > ext.sigma_max:
        return Decision(NO, reason=TARGET_ABOVE_MAX, **common)
    if ext.sigma_min < target < ext.sigma_max:
        return Decision(INAPPLICABLE, **common)

    if 1 << ext.n_eq > budget:
        raise BudgetExceeded(ext.n_eq, budget)

    which = "min" if target == ext.sigma_min else "max"
    witnesses = []
    failures = []
    checked = 0
    for x in achievers(f, which, ext):
        checked += 1
        profile = clause_profile(f, x)
        if profile.matches(p):
            witnesses.append(x)
        else:
            failures.append((x, failing_clauses(f, x, p)))
    assert checked == 1 << ext.n_eq

    if witnesses:
        return Decision(YES, witnesses=tuple(witnesses), candidates_checked=checked,
                        failures=tuple(failures), **common)
    return Decision(NO, reason=ALL_CANDIDATES_FAIL, candidates_checked=checked,
                    failures=tuple(failures), **common)


def failing_clauses(f: Formula, x: Assignment, p: Partition) -> tuple[int, ...]:
    """0-based indices of clauses left over once ``p``'s buckets are filled in clause order."""
    remaining = list(p.mu)
    bad = []
    for j, c in enumerate(sigma_per_clause(f, x)):
        if c < len(remaining) and remaining[c] > 0:
            remaining[c] -= 1
        else:
            bad.append(j)
    return tuple(bad)


def decide_l_in_k(f: Formula, l: int, budget: Optional[int] = None) -> Decision:
    return decide(f, Partition.l_in_k(f, l), budget)


@dataclass(frozen=True)
class NaeSweepEntry:
    mu: int
    target: int
    decision: Optional[Decision]
    budget_exceeded: bool = False

    @property
    def definitive(self) -> bool:
        return self.decision is not None and self.decision.verdict in (YES, NO)


@dataclass(frozen=True)
class NaeSweep:
    entries: tuple[NaeSweepEntry, ...]

    @property
    def any_yes(self) -> bool:
        return any(e.decision is not None and e.decision.verdict == YES for e in self.entries)

    @property
    def nae_decided(self) -> bool:
        return self.any_yes or all(e.definitive for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "nae_decided": self.nae_decided,
            "nae_satisfiable": True if self.any_yes else (False if self.nae_decided else None),
            "entries": [
                {
                    "mu": e.mu,
                    "target": e.target,
                    "budget_exceeded": e.budget_exceeded,
                    "decision": e.decision.as_dict() if e.decision else None,
                }
                for e in self.entries
            ],
        }


def nae_sweep(f: Formula, budget: Optional[int] = None) -> NaeSweep:
    """Run ``{0, mu, m - mu, 0}``-SAT for every mu on an exact 3-CNF."""
    if f.m and f.flags.exact_k != 3:
        raise ValueError("nae_sweep needs an exact 3-CNF")
    m = f.m
    entries = []
    for mu in range(m + 1):
        p = Partition((0, mu, m - mu, 0))
        try:
            d = decide(f, p, budget)
            entries.append(NaeSweepEntry(mu, target_total(p), d))
        except BudgetExceeded:
            entries.append(NaeSweepEntry(mu, target_total(p), None, budget_exceeded=True))
    return NaeSweep(tuple(entries))
