import random

import pytest
from hypothesis import settings, strategies as st

from partsat.cnf import Formula
from partsat.generators import FIXTURES, fixture

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


_criteria = {}


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None or report.when == "teardown":
        return
    title, ok = _criteria.get(number, (report.criterion_title, True))
    _criteria[number] = (title, ok and report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]
        report.criterion_title = marker.args[1]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(params=sorted(FIXTURES))
def any_fixture(request):
    return fixture(request.param)


@pytest.fixture
def example6():
    return fixture("example6")


def random_formula(rng: random.Random, n_max: int = 10, k_max: int = 4, m_max: int = 12,
                   allow_tautology: bool = False) -> Formula:
    """Arbitrary small formula: mixed widths, unused variables possible."""
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, min(k_max, n))
        variables = rng.sample(range(1, n + 1), width)
        clause = [v if rng.random() < 0.5 else -v for v in variables]
        if allow_tautology and rng.random() < 0.1:
            clause.append(-clause[0])
        clauses.append(tuple(clause))
    return Formula(n, tuple(clauses))


@st.composite
def formulas(draw, n_max=8, k_max=4, m_max=10, min_m=0):
    n = draw(st.integers(1, n_max))
    m = draw(st.integers(min_m, m_max))
    clauses = []
    for _ in range(m):
        variables = draw(st.lists(st.integers(1, n), min_size=1, max_size=min(k_max, n), unique=True))
        signs = draw(st.lists(st.booleans(), min_size=len(variables), max_size=len(variables)))
        clauses.append(tuple(v if s else -v for v, s in zip(variables, signs)))
    return Formula(n, tuple(clauses))


@st.composite
def exact3(draw, n_min=3, n_max=8, m_max=10):
    n = draw(st.integers(n_min, n_max))
    m = draw(st.integers(1, m_max))
    clauses = []
    for _ in range(m):
        variables = draw(st.lists(st.integers(1, n), min_size=3, max_size=3, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=3, max_size=3))
        clauses.append(tuple(v if s else -v for v, s in zip(variables, signs)))
    return Formula(n, tuple(clauses))


def all_assignments(n):
    for index in range(1 << n):
        yield tuple(1 if index >> i & 1 else -1 for i in range(n))
