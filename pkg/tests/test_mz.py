import random

import pytest

from lfed.mz import (
    MembershipOracle, ProbePreconditionError, first_power_outside, mz_falsifier_probe,
    project_oracle, weak_radical_probe, wr_transfer_check,
)
from lfed.poly import BiPoly
from lfed.quotient import crt_decompose
from lfed.sampling import random_poly
from lfed.subspace import MonomialPattern

from conftest import P, Q

M = MembershipOracle.c_plus_ideal(2, 1, P("y + 1"))


def test_weak_radical_examples():
    assert first_power_outside(P("y"), M, 12) == 2
    assert not weak_radical_probe(P("y"), M, 12)
    assert weak_radical_probe(BiPoly.zero(Q), M, 12)
    assert weak_radical_probe(P("y^3 + y"), M, 30)


def test_window_must_be_positive():
    with pytest.raises(ValueError):
        first_power_outside(P("y"), M, 0)


def test_transfer_examples():
    dec = crt_decompose(1, [(Q(-1), 1)], 2, P("y + 1"))
    y_part = dec.components[0]
    assert y_part.project(P("y^3 + y")).is_zero()
    for comp in dec.components:
        assert wr_transfer_check([P("y^3 + y"), BiPoly.zero(Q)], M, comp, 12).passed


def test_transfer_on_seeded_samples():
    dec = crt_decompose(1, [(Q(-1), 1)], 2, P("y + 1"))
    rng = random.Random(23)
    samples = [random_poly(rng, Q, max_deg=4, max_terms=4) for _ in range(50)]
    samples += [random_poly(rng, Q, max_deg=2) * M.c_plus.modulus for _ in range(10)]
    for comp in dec.components:
        report = wr_transfer_check(samples, M, comp, 12)
        assert report.samples == 60
        assert report.in_weak_radical >= 10
        assert report.passed


def test_projected_oracle():
    dec = crt_decompose(1, [(Q(-1), 1)], 2, P("y + 1"))
    image = project_oracle(M, dec.components[1])
    assert image.contains(P("y^2 + 1"))
    with pytest.raises(ValueError):
        project_oracle(MembershipOracle.from_pattern(MonomialPattern.full_ideal_xy()), dec.components[1])


def test_falsifier_on_ideal_element():
    report = mz_falsifier_probe(P("y^3 + y"), M, 3, (1, 12))
    assert report.passed
    assert len(report.multipliers) == 10
    assert all(r.threshold == 0 for r in report.multipliers)


def test_falsifier_refuses_outside_window():
    with pytest.raises(ProbePreconditionError, match="f\\^2"):
        mz_falsifier_probe(P("x"), M, 3, (1, 12))


def test_falsifier_on_maximal_ideal():
    xy = MembershipOracle.from_pattern(MonomialPattern.full_ideal_xy(), "<x,y>")
    report = mz_falsifier_probe(P("x"), xy, 3, (1, 12))
    assert all(r.threshold == 0 for r in report.multipliers)


def test_falsifier_on_pattern_oracles():
    yc = MembershipOracle.from_pattern(MonomialPattern.y_ideal_plus_cprime(2))
    assert mz_falsifier_probe(P("x*y"), yc, 2, (1, 6)).passed
    odd = MembershipOracle("odd degree", lambda f: all((i + j) % 2 for i, j in f.support))
    with pytest.raises(ProbePreconditionError):
        mz_falsifier_probe(P("x"), odd, 2, (1, 6))


def test_persistent_violation_is_reported():
    # every power of x lies in K[x], but no x^m y does
    kx = MembershipOracle("K[x]", lambda f: all(j == 0 for _, j in f.support))
    report = mz_falsifier_probe(P("x"), kx, 1, (1, 5))
    assert not report.passed
    assert [r.g for r in report.violations] == ["y"]
    assert report.violations[0].failing == [1, 2, 3, 4, 5]


def test_bad_exponent_range():
    with pytest.raises(ValueError):
        mz_falsifier_probe(P("y^3 + y"), M, 1, (3, 2))
