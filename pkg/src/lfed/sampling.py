"""Seeded random polynomials for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .field import Coeff, FieldSpec
from .poly import BiPoly, monomials_up_to


def random_coeff(rng: random.Random, field: FieldSpec, bound: int = 5, rational: bool = False) -> Coeff:
    if rational or field.degree == 1:
        return field(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))
    return Coeff.from_poly(field, [rng.randint(-bound, bound) for _ in range(field.degree)])


def random_poly(
    rng: random.Random,
    field: FieldSpec,
    max_deg: int = 4,
    max_terms: int = 5,
    bound: int = 5,
    y_only: bool = False,
) -> BiPoly:
    """Random polynomial with at most ``max_terms`` terms of degree <= max_deg."""
    monos = [m for m in monomials_up_to(max_deg) if not (y_only and m.i)]
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = rng.sample(monos, k)
    return BiPoly(field, {m: random_coeff(rng, field, bound) for m in chosen})


def random_nonzero_poly(rng: random.Random, field: FieldSpec, **kw) -> BiPoly:
    while True:
        f = random_poly(rng, field, **kw)
        if f:
            return f
