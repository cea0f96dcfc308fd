from fractions import Fraction

from hypothesis import strategies as st

from extplane.algebra import Expr, Gen
from extplane.laurent import Laurent

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
exponents = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
laurents = st.dictionaries(exponents, fractions, max_size=4).map(Laurent)
units = st.builds(lambda c, e: Laurent.monomial(c, *e), fractions.filter(bool), exponents)


def words(alphabet=tuple(Gen), max_len=4):
    return st.lists(st.sampled_from(alphabet), max_size=max_len).map(tuple)


def exprs(alphabet=tuple(Gen), max_len=4, max_terms=4):
    return st.lists(st.tuples(laurents, words(alphabet, max_len)), max_size=max_terms).map(Expr.from_terms)


# nonzero points away from the unit circle, so that evaluation is well conditioned
points = st.tuples(st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0),
                   st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0))


# -- acceptance verdict lines ------------------------------------------------------

import contextlib

import pytest

_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """``with criterion(n, title):`` records PASS if the block completes, FAIL otherwise."""
    lines = request.config.stash.setdefault(_VERDICTS, [])

    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException:
            line = f"criterion {number:2d}: FAIL  {title}"
            lines.append(line)
            print(line)
            raise
        line = f"criterion {number:2d}: PASS  {title}"
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
