from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from lfed.endo import Case4
from lfed.field import Coeff, FieldSpec
from lfed.poly import BiPoly

settings.register_profile(
    "lfed", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("lfed")

Q = FieldSpec(1)
Q3 = FieldSpec(3)
Q4 = FieldSpec(4)

# the three case-4 parameter sets used throughout
CASE4_PARAMS = [
    (2, 1, "-1", "y + 1", 1),
    (3, 0, "z", "y + 1", 3),
    (2, 2, "-1", "y^2 + 2*y + 2", 1),
]


def case4(r, s, b, p, conductor) -> Case4:
    from lfed.parse import parse_coeff, parse_poly

    F = FieldSpec(conductor)
    return Case4(r, s, parse_coeff(b, F), parse_poly(p, F))


@pytest.fixture(params=CASE4_PARAMS, ids=lambda t: f"r{t[0]}s{t[1]}p[{t[3]}]")
def case4_nf(request):
    return case4(*request.param)


def P(text, field=Q):
    from lfed.parse import parse_poly

    return parse_poly(text, field)


small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def coeffs(field: FieldSpec):
    if field.degree == 1:
        return small_fractions.map(field)
    return st.lists(st.integers(-4, 4), min_size=field.degree, max_size=field.degree).map(
        lambda cs: Coeff.from_poly(field, cs)
    )


def polys(field: FieldSpec = Q, max_deg: int = 4, max_terms: int = 6):
    monos = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)).filter(
        lambda m: m[0] + m[1] <= max_deg
    )
    return st.dictionaries(monos, coeffs(field), max_size=max_terms).map(lambda d: BiPoly(field, d))


def nonzero_polys(field: FieldSpec = Q, **kw):
    return polys(field, **kw).filter(bool)


# -- acceptance lines -----------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
