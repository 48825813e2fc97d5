import json
import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import all_assignments, formulas, random_formula
from partsat.cnf import Formula
from partsat.generators import fixture, gen_balanced_regular, gen_square_mixed_read3
from partsat.oracle import brute_extremes
from partsat.sigma_analysis import (EnumerationLimitError, achievers, binomial_comparison, char_function,
                                    char_function_enumerated, char_function_read3, decode, encode,
                                    histogram_csv, histogram_json, log_char_function, sigma, sigma_extremes,
                                    sigma_histogram, sigma_per_clause)


def literal_count(f, x):
    """Direct recount: walk every literal."""
    total = 0
    for clause in f.clauses:
        for lit in clause:
            value = x[abs(lit) - 1]
            total += (value == 1) if lit > 0 else (value == -1)
    return total


def with_one_pure(f: Formula) -> Formula:
    """Make every occurrence of variable 1 positive."""
    return Formula(f.n, tuple(tuple(abs(l) if abs(l) == 1 else l for l in c) for c in f.clauses))


# --- sigma ----------------------------------------------------------------------

def test_sigma_f1_minimum():
    assert sigma(fixture("F1"), (-1, 1, 1, -1, -1)) == 5


@pytest.mark.parametrize("name", ["example6", "F1", "F2", "F3", "lopsided5x4"])
def test_sigma_all_true_is_positive_literal_count(name):
    f = fixture(name)
    assert sigma(f, (1,) * f.n) == f.stats.N_plus


@pytest.mark.parametrize("seed", range(10))
def test_sigma_random_matches_recount(seed):
    rng = random.Random(seed)
    f = random_formula(rng, n_max=8, m_max=14)
    for _ in range(20):
        x = tuple(rng.choice((1, -1)) for _ in range(f.n))
        assert sigma(f, x) == literal_count(f, x)


@given(formulas(n_max=6))
def test_separability_all_assignments(f):
    for x in all_assignments(f.n):
        expected = literal_count(f, x)
        assert sigma(f, x) == expected
        assert sum(sigma_per_clause(f, x)) == expected


def test_sigma_per_clause_f3():
    f = fixture("F3")
    assert sigma_per_clause(f, (-1,) * 8) == [1] * 8
    assert sigma_per_clause(f, (1,) * 8) == [2] * 8


def test_sigma_per_clause_single():
    assert sigma_per_clause(Formula(2, ((1, -2),)), (1, 1)) == [1]


@pytest.mark.parametrize("x", [(1,), (1, 1, 1), (1, 0), (1, 2)])
def test_assignment_validation(x):
    with pytest.raises(ValueError):
        sigma(Formula(2, ((1, -2),)), x)


def test_encode_decode():
    assert encode((1, -1, 1)) == 5
    assert decode(5, 3) == (1, -1, 1)
    assert [decode(i, 2) for i in range(4)] == [(-1, -1), (1, -1), (-1, 1), (1, 1)]


# --- extremes -------------------------------------------------------------------

def test_extremes_example6(example6):
    ext = sigma_extremes(example6)
    assert ext.sigma_min == 6
    assert ext.degenerate_vars == {3}
    assert ext.x_min_base == (-1, 1, -1, -1, -1)


def test_extremes_f1():
    ext = sigma_extremes(fixture("F1"))
    assert (ext.sigma_min, ext.sigma_max) == (5, 10)
    assert ext.degenerate_vars == frozenset()
    assert ext.x_min_base == (-1, 1, 1, -1, -1)
    assert ext.x_max_base == (1, -1, -1, 1, 1)


def test_extremes_all_degenerate():
    f = gen_balanced_regular(6, 4, seed=2)
    ext = sigma_extremes(f)
    assert ext.degenerate_vars == set(range(1, 7))
    assert ext.sigma_min == ext.sigma_max == f.stats.N // 2


@given(formulas(n_max=10))
def test_extremes_identities(f):
    ext = sigma_extremes(f)
    st_ = f.stats
    spread = sum(abs(p - q) for p, q in zip(st_.pos, st_.neg))
    assert ext.sigma_min <= ext.sigma_max
    assert ext.sigma_min + ext.sigma_max == st_.N
    assert 2 * ext.sigma_min == st_.N - spread
    assert 2 * ext.sigma_max == st_.N + spread
    assert sigma(f, ext.x_min_base) == ext.sigma_min
    assert sigma(f, ext.x_max_base) == ext.sigma_max


@given(formulas(n_max=10), st.data())
def test_flip_monotonicity(f, data):
    ext = sigma_extremes(f)
    movable = [s for s in range(1, f.n + 1) if s not in ext.degenerate_vars]
    if not movable:
        return
    s = data.draw(st.sampled_from(movable))
    x = list(ext.x_min_base)
    x[s - 1] = -x[s - 1]
    gap = abs(f.stats.pos[s - 1] - f.stats.neg[s - 1])
    assert gap >= 1
    assert sigma(f, x) == ext.sigma_min + gap


# --- achievers ------------------------------------------------------------------

def test_achievers_example6(example6):
    assert list(achievers(example6, "min")) == [(-1, 1, -1, -1, -1), (-1, 1, 1, -1, -1)]


def test_achievers_f2():
    assert list(achievers(fixture("F2"), "min")) == [(-1,) * 8]


def test_achievers_bad_which(example6):
    with pytest.raises(ValueError):
        list(achievers(example6, "median"))


@pytest.mark.parametrize("seed", range(25))
def test_achievers_equal_brute_force(seed):
    f = random_formula(random.Random(seed), n_max=12, m_max=12)
    brute = brute_extremes(f)
    mins = list(achievers(f, "min"))
    maxs = list(achievers(f, "max"))
    assert len(mins) == len(maxs) == 2 ** f.stats.n_eq
    assert mins == sorted(mins, key=encode)
    assert set(mins) == set(brute.min_achievers)
    assert set(maxs) == set(brute.max_achievers)


# --- characteristic function ---------------------------------------------------

@given(formulas(n_max=10))
def test_char_function_at_zero(f):
    assert char_function(f, 0.0) == pytest.approx(1.0, rel=1e-12)


def test_char_function_read3_matches_enumeration():
    f = gen_square_mixed_read3(6, seed=4)
    assert char_function(f, 0.3) == pytest.approx(char_function_enumerated(f, 0.3), rel=1e-9)


def test_char_function_closed_form_with_pure_variable():
    f = with_one_pure(gen_square_mixed_read3(8, seed=5))
    assert f.flags.exact_read_p == 3 and f.stats.n_pure == 1
    assert char_function(f, 0.2) == pytest.approx(char_function_read3(f, 0.2), rel=1e-12)
    assert char_function(f, 0.2) == pytest.approx(char_function_enumerated(f, 0.2), rel=1e-9)


def test_char_function_closed_form_needs_read3():
    with pytest.raises(ValueError):
        char_function_read3(fixture("example6"), 0.1)


def test_char_function_overflow_and_log_space():
    f = gen_square_mixed_read3(400, seed=1)
    assert math.isfinite(log_char_function(f, 5.0))
    with pytest.raises(OverflowError):
        char_function(f, 5.0)
    with pytest.raises(ValueError):
        char_function(f, float("nan"))


# --- histogram ------------------------------------------------------------------

def test_histogram_n5_binomial():
    f = gen_square_mixed_read3(5, seed=0)
    hist = sigma_histogram(f)
    assert [hist[5 + k] for k in range(6)] == [1, 5, 10, 10, 5, 1]


def test_histogram_single_clause():
    assert sigma_histogram(Formula(1, ((1,),))) == {0: 1, 1: 1}


def test_histogram_f1():
    hist = sigma_histogram(fixture("F1"))
    assert min(hist) == 5 and max(hist) == 10
    assert sum(hist.values()) == 32


@pytest.mark.parametrize("seed", range(8))
def test_histogram_matches_direct_enumeration(seed):
    f = random_formula(random.Random(seed), n_max=8)
    expected = {}
    for x in all_assignments(f.n):
        v = literal_count(f, x)
        expected[v] = expected.get(v, 0) + 1
    assert sigma_histogram(f, block=16) == expected


def test_histogram_limit():
    with pytest.raises(EnumerationLimitError):
        sigma_histogram(Formula(21, ((1,),)))
    assert sum(sigma_histogram(Formula(3, ((1,),)), limit=3).values()) == 8


def test_binomial_comparison_rows():
    f = gen_square_mixed_read3(6, seed=3)
    rows = binomial_comparison(f, sigma_histogram(f))
    assert len(rows) == 7
    assert all(obs == exp for _, obs, exp in rows)


def test_histogram_exports():
    hist = {0: 1, 1: 1}
    assert histogram_csv(hist) == "sigma,count\n0,1\n1,1\n"
    assert json.loads(histogram_json(hist)) == {"0": 1, "1": 1}
