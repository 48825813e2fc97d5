"""CNF formulas, DIMACS / matrix-grid I/O, occurrence statistics and class flags.

Clauses are stored as tuples of signed DIMACS integers (``3`` is the positive
literal of variable 3, ``-3`` its negation). Variables are 1-based.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

import numpy as np


class ParseError(ValueError):
    """Raised for malformed DIMACS or matrix-grid input."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Literal(NamedTuple):
    variable: int
    positive: bool

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def to_int(self) -> int:
        return self.variable if self.positive else -self.variable


def make_clause(literals: Iterable[int], n: int, allow_duplicates: bool = False) -> tuple[int, ...]:
    """Validate one clause and return it as a tuple of signed ints."""
    clause = tuple(int(lit) for lit in literals)
    if not clause:
        raise ValueError("empty clause")
    for lit in clause:
        if lit == 0 or abs(lit) > n:
            raise ValueError(f"literal {lit} out of range for n={n}")
    if not allow_duplicates and len(set(clause)) != len(clause):
        dup = next(lit for lit, c in Counter(clause).items() if c > 1)
        raise ValueError(f"duplicate literal {dup} in clause {clause}")
    return clause


@dataclass(frozen=True)
class OccurrenceStats:
    m: int
    n: int
    pos: tuple[int, ...]
    neg: tuple[int, ...]
    widths: tuple[int, ...]
    N: int
    N_plus: int
    N_minus: int
    m_alpha: dict[int, int]
    n_beta: dict[int, int]
    n_pure: int
    n_eq: int

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p + q for p, q in zip(self.pos, self.neg))

    def check_relations(self) -> None:
        """Assert the counting identities tying N to clause widths and degrees."""
        assert self.N == self.N_plus + self.N_minus
        assert self.N == sum(self.pos) + sum(self.neg)
        assert self.N == sum(self.widths)
        assert self.N == sum(a * c for a, c in self.m_alpha.items())
        assert self.N == sum(b * c for b, c in self.n_beta.items())
        assert sum(self.m_alpha.values()) == self.m
        assert sum(self.n_beta.values()) == self.n

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "N": self.N,
            "N_plus": self.N_plus,
            "N_minus": self.N_minus,
            "pos": list(self.pos),
            "neg": list(self.neg),
            "widths": list(self.widths),
            "m_alpha": {str(k): v for k, v in sorted(self.m_alpha.items())},
            "n_beta": {str(k): v for k, v in sorted(self.n_beta.items())},
            "n_pure": self.n_pure,
            "n_eq": self.n_eq,
        }


@dataclass(frozen=True)
class ClassFlags:
    exact_k: Optional[int]
    read_p: int
    exact_read_p: Optional[int]
    completely_mixed: bool
    square: bool
    trivially_satisfiable_r_le_r: bool
    has_tautological_clause: bool
    has_duplicate_literal: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class Formula:
    """A CNF formula over variables ``1..n``.

    ``clauses`` holds signed-int tuples. Construction validates every clause;
    pass ``allow_duplicates=True`` to keep repeated identical literals (they are
    then counted literally everywhere).
    """

    n: int
    clauses: tuple[tuple[int, ...], ...]
    allow_duplicates: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative variable count")
        clauses = tuple(make_clause(c, self.n, self.allow_duplicates) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def from_lists(cls, n: int, clauses: Iterable[Iterable[int]], allow_duplicates: bool = False) -> "Formula":
        return cls(n, tuple(tuple(c) for c in clauses), allow_duplicates)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @cached_property
    def stats(self) -> OccurrenceStats:
        return compute_stats(self)

    @cached_property
    def flags(self) -> ClassFlags:
        return classify(self)

    def literals(self, j: int) -> list[Literal]:
        return [Literal.from_int(lit) for lit in self.clauses[j]]

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Clauses with literals sorted; equality of this ignores literal order."""
        return tuple(tuple(sorted(c, key=lambda lit: (abs(lit), lit < 0))) for c in self.clauses)

    def same_as(self, other: "Formula") -> bool:
        return self.n == other.n and self.canonical() == other.canonical()

    @property
    def max_width(self) -> int:
        return max(map(len, self.clauses), default=0)


def compute_stats(f: Formula) -> OccurrenceStats:
    """One linear pass over all literals."""
    n, m = f.n, len(f.clauses)
    widths = np.fromiter(map(len, f.clauses), dtype=np.int64, count=m)
    total = int(widths.sum())
    flat = np.fromiter(itertools.chain.from_iterable(f.clauses), dtype=np.int64, count=total)
    positive = flat > 0
    pos = np.bincount(flat[positive], minlength=n + 1)[1:]
    neg = np.bincount(-flat[~positive], minlength=n + 1)[1:]
    deg = pos + neg

    m_alpha = {int(a): int(c) for a, c in enumerate(np.bincount(widths)) if c}
    n_beta = {int(b): int(c) for b, c in enumerate(np.bincount(deg)) if c}
    n_plus = int(pos.sum())

    return OccurrenceStats(
        m=m,
        n=n,
        pos=tuple(pos.tolist()),
        neg=tuple(neg.tolist()),
        widths=tuple(widths.tolist()),
        N=total,
        N_plus=n_plus,
        N_minus=total - n_plus,
        m_alpha=m_alpha,
        n_beta=n_beta,
        n_pure=int(np.count_nonzero((pos * neg == 0) & (deg > 0))),
        n_eq=int(np.count_nonzero(pos == neg)),
    )


def stats(f: Formula) -> OccurrenceStats:
    return f.stats


def classify(f: Formula) -> ClassFlags:
    st = f.stats
    widths = set(st.widths)
    degrees = st.degrees
    exact_k = widths.pop() if len(widths) == 1 else None
    read_p = max(degrees, default=0)
    exact_read_p = degrees[0] if degrees and degrees[0] > 0 and all(d == degrees[0] for d in degrees) else None
    mixed = all(p * q != 0 for p, q in zip(st.pos, st.neg) if p + q > 0)
    tautology = any(-lit in c for c in f.clauses for lit in c)
    duplicate = any(len(set(c)) != len(c) for c in f.clauses)
    r_le_r = exact_k is not None and exact_k >= 1 and read_p <= exact_k and not duplicate
    return ClassFlags(
        exact_k=exact_k,
        read_p=read_p,
        exact_read_p=exact_read_p,
        completely_mixed=mixed,
        square=st.m == st.n,
        trivially_satisfiable_r_le_r=r_le_r,
        has_tautological_clause=tautology,
        has_duplicate_literal=duplicate,
    )


# --- DIMACS -----------------------------------------------------------------

def parse_dimacs(data: bytes | str, allow_duplicates: bool = False) -> Formula:
    """Parse DIMACS CNF. Clauses may span lines; ``%`` ends the clause section."""
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="strict")

    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = 0

    for lineno, line in enumerate(data.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break
        if stripped.startswith("p"):
            if header is not None:
                raise ParseError("second problem line", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {stripped!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {stripped!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative counts in header", lineno)
            header = (n, m)
            continue
        if header is None:
            raise ParseError("clause data before problem line", lineno)
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("zero-length clause", lineno)
                try:
                    clauses.append(make_clause(current, header[0], allow_duplicates))
                except ValueError as exc:
                    raise ParseError(str(exc), current_line) from None
                current = []
            else:
                if not current:
                    current_line = lineno
                current.append(lit)

    if header is None:
        raise ParseError("missing problem line 'p cnf n m'")
    if current:
        raise ParseError("unterminated clause at end of input", current_line)
    n, m = header
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses, found {len(clauses)}")
    return Formula(n, tuple(clauses), allow_duplicates)


def write_dimacs(f: Formula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.n} {f.m}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


# --- matrix grid --------------------------------------------------------------

_CELLS = {"+": 1, "-": -1, "0": 0}


def parse_matrix(text: str) -> Formula:
    """Parse a clause-by-variable grid of ``+``, ``-`` and ``0`` cells.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cells = stripped.split()
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"ragged row: expected {width} cells, got {len(cells)}", lineno)
        row = []
        for s, cell in enumerate(cells, start=1):
            if cell not in _CELLS:
                raise ParseError(f"invalid cell {cell!r}", lineno)
            if _CELLS[cell]:
                row.append(s * _CELLS[cell])
        if not row:
            raise ParseError("row with no literals (zero-length clause)", lineno)
        rows.append(tuple(row))
    return Formula(width or 0, tuple(rows))


def write_matrix(f: Formula) -> str:
    out = []
    for c in f.clauses:
        cells = ["0"] * f.n
        for lit in c:
            s = abs(lit) - 1
            if cells[s] != "0":
                raise ValueError(f"clause {c} repeats variable {abs(lit)}; not representable as a grid")
            cells[s] = "+" if lit > 0 else "-"
        out.append(" ".join(cells))
    return "\n".join(out) + ("\n" if out else "")


def load(path, fmt: Optional[str] = None, allow_duplicates: bool = False) -> Formula:
    """Read a formula from ``path``; format from extension (.mat = grid) unless given."""
    path = str(path)
    if fmt is None:
        fmt = "matrix" if path.endswith(".mat") else "dimacs"
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "matrix":
        return parse_matrix(data.decode("ascii"))
    if fmt == "dimacs":
        return parse_dimacs(data, allow_duplicates=allow_duplicates)
    raise ValueError(f"unknown format {fmt!r}")
