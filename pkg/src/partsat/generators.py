"""Fixture formulas and seeded random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cnf import Formula, parse_matrix

RETRY_BOUND = 1000


class GenerationError(RuntimeError):
    pass


# Grids: one row per clause, one column per variable (a, b, c, ... left to right).
FIXTURES = {
    # (a,c)(a,b,~c,e)(~a,~b,e)(~b,~d,e)(~b,d,~e)(b,d)
    "example6": """
        + 0 + 0 0
        + + - 0 +
        - - 0 0 +
        0 - 0 - +
        0 - 0 + -
        0 + 0 + 0
    """,
    "F1": """
        + 0 + 0 0
        + 0 - + +
        - - - + 0
        0 - 0 - -
        0 + 0 0 +
    """,
    "F2": """
        + 0 0 - + 0 0 0
        + 0 0 0 + 0 0 +
        - + 0 0 - 0 0 0
        0 + 0 0 0 + 0 -
        0 - + 0 0 + 0 0
        0 0 + 0 0 - + 0
        0 0 - + 0 0 + 0
        0 0 0 + 0 0 - +
    """,
    "F3": """
        + 0 - 0 0 + 0 0
        + 0 0 + 0 - 0 0
        - 0 0 + 0 0 + 0
        0 + 0 - 0 0 + 0
        0 + 0 0 + 0 - 0
        0 - 0 0 + 0 0 +
        0 0 + 0 - 0 0 +
        0 0 + 0 0 + 0 -
    """,
    "lopsided5x4": """
        + - 0 -
        + + 0 -
        0 - + +
        - 0 - +
        0 - + -
    """,
    # The two 2/2/4 grids below are copied as printed; they do not match the
    # described {4,<=4} square class and are kept for reference only.
    "two_two_four_a": """
        + 0 + +
        + + + 0
        + + 0 +
        0 + + +
    """,
    "two_two_four_b": """
        - 0 + -
        + 0 - +
        + - 0 +
        0 + + 0
    """,
    # m = n = 5, width 4, every variable 2+/2-; its 2-in-4 solutions are
    # exactly (-1,1,1,1,1) and (1,-1,-1,-1,-1).
    "two_two_four_reconstructed": """
        - 0 - - +
        0 + + - -
        + + 0 + -
        - - - 0 +
        + - + + 0
    """,
}

UNRELIABLE_FIXTURES = frozenset({"two_two_four_a", "two_two_four_b"})


def fixture(name: str) -> Formula:
    try:
        grid = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
    return parse_matrix(grid)


def fixture_text(name: str) -> str:
    fixture(name)
    return "\n".join(line.strip() for line in FIXTURES[name].strip().splitlines()) + "\n"


def _regular_incidence(m: int, k: int, n: int, p: int, rng: random.Random) -> list[list[int]]:
    """Configuration model: m clauses of width k over n variables of degree p.

    Clauses are filled one stub at a time from the pool of unused variable
    stubs; a draw that repeats a variable inside the clause is redrawn, and a
    clause that cannot be completed restarts the whole construction.
    """
    if m * k != n * p:
        raise ValueError(f"stub counts differ: {m}*{k} != {n}*{p}")
    for _ in range(RETRY_BOUND):
        pool = [s for s in range(1, n + 1) for _ in range(p)]
        rows = []
        for _ in range(m):
            row: list[int] = []
            while len(row) < k:
                usable = [i for i, s in enumerate(pool) if s not in row]
                if not usable:
                    break
                row.append(pool.pop(rng.choice(usable)))
            if len(row) < k:
                break
            rows.append(row)
        else:
            return rows
    raise GenerationError(f"no simple {k}-regular/{p}-regular incidence after {RETRY_BOUND} restarts")


def _apply_polarities(rows: list[list[int]], n: int, n_positive, rng: random.Random) -> Formula:
    """Sign each variable's occurrences; ``n_positive(s, degree)`` picks the positive count."""
    occurrences: dict[int, list[tuple[int, int]]] = {s: [] for s in range(1, n + 1)}
    for j, row in enumerate(rows):
        for i, s in enumerate(row):
            occurrences[s].append((j, i))
    signed = [list(row) for row in rows]
    for s, occ in occurrences.items():
        positive = set(rng.sample(range(len(occ)), n_positive(s, len(occ))))
        for t, (j, i) in enumerate(occ):
            signed[j][i] = s if t in positive else -s
    return Formula.from_lists(n, signed)


def gen_square_mixed_read3(n: int, seed: int) -> Formula:
    """n clauses of width 3 over n variables of degree 3, each split 1/2 or 2/1."""
    if n < 4:
        raise ValueError("need n >= 4")
    rng = random.Random(seed)
    rows = _regular_incidence(n, 3, n, 3, rng)
    return _apply_polarities(rows, n, lambda s, d: rng.choice((1, 2)), rng)


def gen_balanced_regular(n: int, k: int, seed: int) -> Formula:
    """Square formula, width k, every variable of degree k split k/2 positive, k/2 negative.

    Every variable is degenerate, so sigma is pinned at n*k/2 for all assignments.
    """
    if k % 2 or k < 2 or n < k:
        raise ValueError("need even k >= 2 and n >= k")
    rng = random.Random(seed)
    rows = _regular_incidence(n, k, n, k, rng)
    return _apply_polarities(rows, n, lambda s, d: d // 2, rng)


def gen_random_cnf(m: int, n: int, k: int, seed: int) -> Formula:
    """m clauses, each over k distinct variables with fair-coin polarities."""
    if not 1 <= k <= n or m < 0:
        raise ValueError(f"bad parameters m={m} n={n} k={k}")
    rng = random.Random(seed)
    clauses = []
    variables = range(1, n + 1)
    for _ in range(m):
        clauses.append(tuple(s if rng.random() < 0.5 else -s for s in rng.sample(variables, k)))
    return Formula(n, tuple(clauses))


def gen_random_class(m: int, n: int, k_max: int, p_max: int, seed: int) -> Formula:
    """Random clauses of width 1..k_max with every variable degree <= p_max.

    Widths are drawn first, then variables are picked among those with spare
    degree. Unused variables are allowed.
    """
    if k_max < 1 or p_max < 1 or m < 0 or n < 1:
        raise ValueError("bad parameters")
    if m > n * p_max:
        raise ValueError(f"{m} clauses cannot fit under degree bound {p_max} with n={n}")
    rng = random.Random(seed)
    for _ in range(RETRY_BOUND):
        spare = {s: p_max for s in range(1, n + 1)}
        clauses = []
        for _ in range(m):
            free = [s for s, c in spare.items() if c > 0]
            if not free:
                break
            width = rng.randint(1, min(k_max, len(free)))
            chosen = rng.sample(free, width)
            for s in chosen:
                spare[s] -= 1
            clauses.append(tuple(s if rng.random() < 0.5 else -s for s in chosen))
        else:
            return Formula(n, tuple(clauses))
    raise GenerationError(f"could not place {m} clauses under degree bound {p_max}")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> Formula:
        return generate(self)


_KINDS = {
    "square_mixed_read3": lambda p, seed: gen_square_mixed_read3(p["n"], seed),
    "balanced_regular": lambda p, seed: gen_balanced_regular(p["n"], p.get("k", 4), seed),
    "random_cnf": lambda p, seed: gen_random_cnf(p["m"], p["n"], p["k"], seed),
    "random_class": lambda p, seed: gen_random_class(p["m"], p["n"], p["k_max"], p["p_max"], seed),
}


def generate(spec: GenSpec) -> Formula:
    if spec.kind == "fixture":
        return fixture(spec.params["name"])
    try:
        build = _KINDS[spec.kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {spec.kind!r}") from None
    return build(spec.params, spec.seed)
