import random

import pytest
from hypothesis import given, strategies as st

from lfed.endo import Case1, Case6, EDerivation, Endomorphism, build_normal_form
from lfed.linalg import TruncatedSpace
from lfed.poly import BiPoly, monomials_up_to
from lfed.sampling import random_poly
from lfed.subspace import (
    CPlusIdeal, MonomialPattern, PreimageError, eta_window, expected_image_for_case,
    membership_c_plus_ideal, monomial_map, support_membership, triangular_preimage_solve,
    truncated_image, verify_image_identity, x_weight,
)

from conftest import CASE4_PARAMS, P, Q, case4, polys

NF4 = case4(2, 1, "-1", "y + 1", 1)
DELTA4 = EDerivation(build_normal_form(NF4))


def test_pattern_examples():
    C = MonomialPattern.C(2, 1)
    assert not C.contains((1, 1))
    assert C.contains((1, 0))
    assert not MonomialPattern.B1(2, 1).contains((0, 2))
    assert MonomialPattern.Cprime(3).contains((2, 0))
    assert not MonomialPattern.Cprime(3).contains((3, 0))


def test_support_membership_examples():
    C = MonomialPattern.C(2, 1)
    assert support_membership(P("x + x^2*y"), C)
    assert support_membership(BiPoly.zero(Q), C)
    assert support_membership(BiPoly.zero(Q), MonomialPattern.B1(3, 2))
    assert not support_membership(P("x*y"), C)


@pytest.mark.parametrize("r, s", [(1, 0), (2, 1), (3, 0), (3, 2), (4, 1), (6, 5)])
def test_c_and_b_partition_monomials(r, s):
    C, B = MonomialPattern.C(r, s), MonomialPattern.B(r, s)
    for m in monomials_up_to(20):
        assert C.contains(m) != B.contains(m)


def test_solver_examples():
    C = MonomialPattern.C(2, 1)
    image = monomial_map(DELTA4)
    h = triangular_preimage_solve(image, C, P("x"), 24)
    assert h == P("1/2*x + 1/4*y^3 + 1/4*y")
    assert DELTA4(h) == P("x")
    assert triangular_preimage_solve(image, C, P("y"), 24) == P("1/2*y")
    with pytest.raises(PreimageError) as info:
        triangular_preimage_solve(image, C, P("x*y"), 24)
    assert info.value.monomial == (1, 1)


def test_solver_respects_degree_bound():
    with pytest.raises(PreimageError, match="degree bound"):
        triangular_preimage_solve(monomial_map(DELTA4), MonomialPattern.C(2, 1), P("x^7"), 8)


@pytest.mark.parametrize("params", CASE4_PARAMS, ids=str)
def test_solver_soundness_on_c_monomials(params):
    nf = case4(*params)
    delta = EDerivation(build_normal_form(nf))
    image = monomial_map(delta)
    C = MonomialPattern.C(nf.r, nf.s)
    bound = x_weight(nf) * 6
    for m in C.monomials(6):
        target = BiPoly.monomial(nf.field, *m)
        h = triangular_preimage_solve(image, C, target, bound)
        assert support_membership(h, C)
        assert delta(h) == target


@given(st.lists(st.sampled_from(MonomialPattern.C(2, 1).monomials(5)), min_size=1, max_size=4),
       st.lists(st.integers(-5, 5).filter(bool), min_size=4, max_size=4))
def test_solver_soundness_on_combinations(monos, cs):
    target = BiPoly(Q, {m: Q(c) for m, c in zip(monos, cs)})
    h = triangular_preimage_solve(monomial_map(DELTA4), MonomialPattern.C(2, 1), target, 30)
    assert DELTA4(h) == target


def test_truncated_image_examples():
    delta = EDerivation(build_normal_form(Case1(Q(2), Q(3))))
    window = truncated_image(delta, 2, 2)
    assert window.equals(TruncatedSpace.span(Q, [BiPoly.monomial(Q, *m) for m in monomials_up_to(2) if m != (0, 0)]))
    assert len(truncated_image(Endomorphism.identity(Q).delta(), 4, 4)) == 0


def test_truncated_image_reaches_x_through_a_combination():
    # delta(x) and delta(y^3) both have degree 3, so x needs an output bound of 3
    assert P("x") not in truncated_image(DELTA4, 3, 1)
    window = truncated_image(DELTA4, 3, 3)
    assert P("x") in window
    h = triangular_preimage_solve(monomial_map(DELTA4), MonomialPattern.C(2, 1), P("x"), 3)
    assert h.degree <= 3


@pytest.mark.parametrize("d_out", [3, 5, None])
def test_truncated_image_is_monotone(d_out):
    prev = truncated_image(DELTA4, 1, d_out)
    for d in range(2, 7):
        cur = truncated_image(DELTA4, d, d_out)
        assert prev.issubspace(cur)
        prev = cur


def test_membership_examples():
    p = P("y + 1")
    assert membership_c_plus_ideal(P("y^4 + y^2"), 2, 1, p)
    assert membership_c_plus_ideal(P("x"), 2, 1, p)
    assert not membership_c_plus_ideal(P("x^2"), 2, 1, p)


def test_degenerate_ideal_is_everything():
    oracle = CPlusIdeal(3, 0, P("1"))
    assert oracle.trivial
    assert oracle.contains(P("x^3*y^3 + 1"))


def test_oracle_validation():
    with pytest.raises(ValueError):
        CPlusIdeal(2, 1, P("2*y + 1"))
    with pytest.raises(ValueError):
        CPlusIdeal(2, 1, P("y^2 + y"))
    with pytest.raises(ValueError):
        CPlusIdeal(0, 1, P("y + 1"))


def brute_force_c_plus_ideal(r, s, p, bound):
    """Echelon span of C-monomials and ideal multiples x^a y^b h, all of degree <= bound."""
    h = CPlusIdeal(r, s, p).modulus
    gens = [BiPoly.monomial(Q, *m) for m in MonomialPattern.C(r, s).monomials(bound)]
    gens += [h.shift(a, b) for a, b in monomials_up_to(bound - h.degree)]
    return TruncatedSpace.span(Q, gens)


@pytest.mark.parametrize("r, s, p", [(2, 1, "y + 1"), (3, 1, "y^2 - y + 1"), (2, 0, "y - 2")])
def test_membership_agrees_with_brute_force(r, s, p):
    p = P(p)
    oracle = CPlusIdeal(r, s, p)
    brute = brute_force_c_plus_ideal(r, s, p, 16)
    rng = random.Random(5)
    samples = [BiPoly.monomial(Q, *m) for m in monomials_up_to(6)]
    samples += [random_poly(rng, Q, max_deg=6, max_terms=4) for _ in range(40)]
    samples += [random_poly(rng, Q, max_deg=3) * oracle.modulus + random_poly(rng, Q, max_deg=3) for _ in range(20)]
    for f in samples:
        assert oracle.contains(f) == brute.contains(f), f


@given(polys(max_deg=4), polys(max_deg=3))
def test_membership_is_closed_under_adding_ideal_multiples(f, g):
    oracle = CPlusIdeal(2, 1, P("y + 1"))
    assert oracle.contains(f) == oracle.contains(f + g * oracle.modulus)


def test_image_identity_windows():
    assert verify_image_identity(NF4, 8, 6).passed
    assert verify_image_identity(case4(3, 0, "z", "y + 1", 3), 6, 6).passed


def test_corrupted_delta_is_caught():
    bad = Endomorphism(build_normal_form(NF4).image_x, BiPoly.y(Q)).delta()
    report = verify_image_identity(NF4, 4, 4, delta=bad)
    assert not report.passed
    failed = [c for c in report.checks if not c.passed]
    assert failed and all(c.witness for c in failed)
    ids = {c.id for c in failed}
    assert "C-in-image" in ids


@pytest.mark.parametrize("params", CASE4_PARAMS, ids=str)
def test_eta_window(params):
    assert eta_window(case4(*params), 8).passed


def test_expected_images():
    all_deg_2 = [m for m in monomials_up_to(2) if m != (0, 0)]
    got = expected_image_for_case(Case1(Q(2), Q(3)), 2)
    assert got.equals(TruncatedSpace.span(Q, [BiPoly.monomial(Q, *m) for m in all_deg_2]))
    half = expected_image_for_case(Case1(Q(P("1/2").coeff(0, 0)), Q(2)), 2)
    assert P("x*y") not in half and P("x^2") in half
    six = expected_image_for_case(Case6(Q(-1), P("x")), 3)
    want = [P("x"), P("x^3")] + [BiPoly.monomial(Q, i, j) for i, j in monomials_up_to(3) if j > 0]
    assert six.equals(TruncatedSpace.span(Q, want))
