import itertools
import random

import pytest
from hypothesis import given

from lfed.field import FieldMismatch, FieldSpec
from lfed.poly import BiPoly
from lfed.quotient import (
    FiniteAlgebra, PrincipalQuotient, crt_decompose, divide_by_y_poly, forward_dft,
    idempotent_search_cprime, inverse_dft, is_nilpotent_in_quotient, nilpotent_by_powers,
    reduce_mod, split_linear, squarefree_part,
)
from lfed.sampling import random_poly

from conftest import P, Q, Q3, Q4, polys

MODULI = ["y^2", "y^3 + y", "(y^2 - 1)^2"]


def test_reduce_examples():
    assert reduce_mod(P("y^4 + y^2"), P("y^3 + y")).is_zero()
    assert reduce_mod(P("x^2"), P("y^3 + y")) == P("x^2")
    assert reduce_mod(P("y^2"), P("y^2")).is_zero()


@given(polys(max_deg=6), polys(max_deg=6), polys(max_deg=2).filter(lambda f: f.is_univariate_y() or f.is_zero()))
def test_reduce_is_idempotent_and_k_x_linear(f, g, a):
    h = P("y^3 - 2*y + 1")
    once = reduce_mod(f, h)
    assert reduce_mod(once, h) == once
    ax = a.substitute(BiPoly.x(Q), BiPoly.x(Q))  # a(x), a polynomial in x
    assert reduce_mod(ax * f + g, h) == ax * once + reduce_mod(g, h)


def test_division_reassembles():
    f = P("x^2*y^5 - 3*x*y^2 + y + 4")
    h = P("y^2 + y + 1")
    q, r = divide_by_y_poly(f, h)
    assert q * h + r == f
    assert r.y_degree < 2


def test_modulus_must_be_monic_in_y():
    with pytest.raises(ValueError):
        reduce_mod(P("y"), P("2*y"))
    with pytest.raises(ValueError):
        reduce_mod(P("y"), P("x*y"))


def test_squarefree_part():
    assert squarefree_part(P("(y^2 - 1)^2")) == P("y^2 - 1")
    assert squarefree_part(P("y^3 + y")) == P("y^3 + y")
    assert squarefree_part(P("y^5")) == P("y")


def test_nilpotency_examples():
    assert is_nilpotent_in_quotient(P("x*y"), P("y^2"))
    assert not is_nilpotent_in_quotient(P("x"), P("y^2"))
    assert is_nilpotent_in_quotient(P("y*(y^2 - 1)"), P("(y^2 - 1)^2"))


@pytest.mark.parametrize("modulus", MODULI)
def test_nilpotency_agrees_with_power_iteration(modulus):
    h = P(modulus)
    sq = squarefree_part(h)
    rng = random.Random(17)
    for k in range(50):
        f = random_poly(rng, Q, max_deg=4, max_terms=4)
        if k % 2:
            f = f * sq  # make sure both verdicts occur
        assert is_nilpotent_in_quotient(f, h) == nilpotent_by_powers(f, h)


def test_principal_quotient():
    A = PrincipalQuotient(P("y^3 + y"))
    assert A(P("y^3")) == P("-y")
    assert A.pow(P("y"), 5) == A(P("y^5"))
    assert A.mul(P("x*y"), P("y^2")) == A(P("x*y^3"))
    assert A.is_normal(P("x^9*y^2")) and not A.is_normal(P("y^3"))
    assert A.is_nilpotent(P("x*y^3 + x*y"))


def test_crt_examples():
    dec = crt_decompose(1, [(Q(-1), 1)], 2, P("y + 1"))
    assert [c.modulus for c in dec.components] == [P("y"), P("y^2 + 1")]
    assert dec.source == P("y^3 + y")
    single = crt_decompose(2, [], 2, P("1"))
    assert [c.modulus for c in single.components] == [P("y^2")]
    sq = crt_decompose(0, [(Q(1), 2)], 1, P("(y - 1)^2"))
    assert [c.modulus for c in sq.components] == [P("(y - 1)^2")]


def test_crt_rejects_bad_input():
    with pytest.raises(ValueError):
        crt_decompose(1, [(Q(0), 1)], 2)
    with pytest.raises(ValueError):
        crt_decompose(1, [(Q(2), 1), (Q(2), 1)], 2)
    with pytest.raises(ValueError):
        crt_decompose(1, [(Q(2), 1)], 2, P("y + 1"))


@pytest.mark.parametrize(
    "s, factors, r, field",
    [
        (1, [(-1, 1)], 2, Q),
        (2, [(1, 2), (-2, 1)], 2, Q),
        (0, [(1, 1), (-1, 1)], 3, Q),
        (1, [("z", 1), ("-1", 2)], 2, Q3),
    ],
)
def test_crt_is_injective_on_normal_forms(s, factors, r, field):
    from lfed.parse import parse_coeff

    fs = [(parse_coeff(str(a), field), n) for a, n in factors]
    dec = crt_decompose(s, fs, r, field=field)
    assert dec.injective() and dec.coprime()
    rng = random.Random(3)
    for _ in range(30):
        f = reduce_mod(random_poly(rng, field, max_deg=5, max_terms=5), dec.source)
        g = reduce_mod(random_poly(rng, field, max_deg=5, max_terms=5), dec.source)
        if f != g:
            assert dec.project(f) != dec.project(g)
        # the projections respect multiplication
        prod = dec.project(f * g)
        assert prod == tuple(c.project(a * b) for c, a, b in zip(dec.components, dec.project(f), dec.project(g)))


def test_split_linear():
    assert split_linear(P("(y + 1)^2*(y - 3)")) == [(Q(-1), 2), (Q(3), 1)]
    assert split_linear(P("y^2 + 1")) is None
    roots = split_linear(P("y^2 + 1", Q4))
    assert sorted(str(a) for a, _ in roots) == ["-z", "z"]


def test_inverse_dft_examples():
    assert inverse_dft([Q3(1)] * 3, Q3) == [Q3(1), Q3(0), Q3(0)]
    assert inverse_dft([Q(0)] * 2, Q) == [Q(0), Q(0)]
    half = P("1/2").coeff(0, 0)
    assert inverse_dft([Q(0), Q(1)], Q) == [half, -half]


@pytest.mark.parametrize("r, conductor", [(2, 1), (3, 3), (4, 4), (6, 6)])
def test_dft_roundtrip(r, conductor):
    F = FieldSpec(conductor)
    rng = random.Random(r)
    from lfed.sampling import random_coeff

    for _ in range(50):
        values = [random_coeff(rng, F) for _ in range(r)]
        assert forward_dft(inverse_dft(values, F), F) == values


@pytest.mark.parametrize("r, conductor", [(1, 1), (2, 1), (3, 3), (4, 4), (5, 5), (6, 6)])
def test_only_zero_idempotent_in_c_prime(r, conductor):
    res = idempotent_search_cprime(r, FieldSpec(conductor))
    assert res.only_zero
    assert res.candidates == res.idempotents_checked == 2**r


def test_idempotent_search_needs_roots_of_unity():
    with pytest.raises(FieldMismatch):
        idempotent_search_cprime(3, Q)


def test_idempotents_by_exhaustion_small_r():
    # independent check for r = 2 over Q: solve u^2 = u coefficientwise over a grid
    R = FiniteAlgebra(Q, 2)
    grid = [Q(k) / 2 for k in range(-2, 3)]
    found = {tuple(u) for u in itertools.product(grid, repeat=2) if R.is_idempotent(list(u))}
    half = Q(1) / 2
    assert found == {(Q(0), Q(0)), (Q(1), Q(0)), (half, half), (half, -half)}
    assert [u for u in found if u[0] == 0] == [(Q(0), Q(0))]
