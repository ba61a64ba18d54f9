import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from sympseries import Polynomial, TruncatedSeries

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=7))


@st.composite
def series(draw, min_trunc=0, max_trunc=12, valuation=0):
    N = draw(st.integers(min_value=max(min_trunc, valuation), max_value=max_trunc))
    body = draw(st.lists(rationals, min_size=N + 1 - valuation, max_size=N + 1 - valuation))
    return TruncatedSeries([0] * valuation + body, N)


@st.composite
def polynomials(draw, max_degree=5):
    return Polynomial(draw(st.lists(rationals, max_size=max_degree + 1)))


def nonzero_lambda():
    return rationals.filter(lambda q: q not in (0, 1, -1))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
