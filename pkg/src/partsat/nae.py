"""Not-all-equal necessary condition for exact 3-CNF.

With clause entries f[j][s] in {+1, -1, 0}, an assignment x leaves every
clause with one or two true literals exactly when

    m + sum_{s < s'} mu[s][s'] x_s x_s' = 0,   mu[s][s'] = sum_j f[j][s] f[j][s'],

which is the same statement as 3*sigma(x) - sum_j sigma_j(x)**2 = 2m.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np

from .cnf import Formula
from .sigma_analysis import Assignment, check_assignment, sigma_per_clause


def _require_simple(f: Formula) -> None:
    for j, c in enumerate(f.clauses):
        if len({abs(lit) for lit in c}) != len(c):
            raise ValueError(f"clause {j + 1} mentions a variable twice: {c}")


def _require_3cnf(f: Formula) -> None:
    if f.m and f.flags.exact_k != 3:
        raise ValueError("NAE condition needs an exact 3-CNF")
    _require_simple(f)


def adjacency(f: Formula) -> np.ndarray:
    """m x n matrix of +1 / -1 / 0 literal signs."""
    _require_simple(f)
    a = np.zeros((f.m, f.n), dtype=np.int64)
    for j, c in enumerate(f.clauses):
        for lit in c:
            a[j, abs(lit) - 1] = 1 if lit > 0 else -1
    return a


def mu_matrix(f: Formula) -> np.ndarray:
    """Symmetric n x n matrix of sum_j f[j][s] f[j][s'], zero on the diagonal."""
    a = adjacency(f)
    mu = a.T @ a
    np.fill_diagonal(mu, 0)
    return mu


def quadratic_form(f: Formula, x: Sequence[int], mu: np.ndarray | None = None) -> int:
    """m + sum over unordered pairs s < s' of mu[s][s'] x_s x_s'."""
    x = np.asarray(check_assignment(f, x), dtype=np.int64)
    if mu is None:
        mu = mu_matrix(f)
    # full symmetric sum counts every unordered pair twice
    return f.m + int(x @ mu @ x) // 2


def sum_of_squares_form(f: Formula, x: Sequence[int]) -> int:
    """3 sigma(x) - sum_j sigma_j(x)**2; equals 2m on NAE assignments."""
    per = sigma_per_clause(f, x)
    return 3 * sum(per) - sum(c * c for c in per)


def nae_condition(f: Formula, x: Sequence[int], mu: np.ndarray | None = None) -> bool:
    _require_3cnf(f)
    holds = quadratic_form(f, x, mu) == 0
    if __debug__:
        assert holds == (sum_of_squares_form(f, x) == 2 * f.m)
    return holds


def nae_filter_candidates(f: Formula, xs: Iterable[Sequence[int]]) -> list[Assignment]:
    _require_3cnf(f)
    mu = mu_matrix(f)
    return [tuple(x) for x in xs if nae_condition(f, x, mu)]


def mu_matrix_csv(f: Formula) -> str:
    """Upper triangle as ``s,t,mu`` rows (1-based, s < t), zeros included."""
    mu = mu_matrix(f)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "t", "mu"])
    for s in range(f.n):
        for t in range(s + 1, f.n):
            w.writerow([s + 1, t + 1, int(mu[s, t])])
    return buf.getvalue()
