"""Quotients K[x, y]/<h(y)>, their CRT splitting, and the finite algebra
R = K[y]/<y^r - 1> with its discrete Fourier transform."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import upoly
from .field import Coeff, FieldMismatch, FieldSpec
from .linalg import TruncatedSpace
from .poly import BiPoly, substitute_y_power


def _modulus_coeffs(h: BiPoly) -> list:
    if h.is_zero() or not h.is_univariate_y():
        raise ValueError(f"modulus must be a nonzero polynomial in y, got {h}")
    coeffs = h.y_coeffs()
    if coeffs[-1] != 1:
        raise ValueError(f"modulus must be monic in y, got {h}")
    return coeffs


def reduce_mod(f: BiPoly, h: BiPoly) -> BiPoly:
    """Remainder of ``f`` on division by ``h`` in the variable y, over K[x]."""
    hc = _modulus_coeffs(h)
    if f.field != h.field:
        raise FieldMismatch("polynomial and modulus over different fields")
    d = len(hc) - 1
    if d == 0:
        return BiPoly.zero(f.field)
    if f.y_degree < d:
        return f
    slices = f.x_slices()
    return BiPoly.from_x_slices(f.field, {i: upoly.divmod_(row, hc)[1] for i, row in slices.items()})


def divide_by_y_poly(f: BiPoly, h: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Quotient and remainder of ``f`` by a monic polynomial ``h`` in y, slice by slice."""
    hc = _modulus_coeffs(h)
    qs, rs = {}, {}
    for i, row in f.x_slices().items():
        qs[i], rs[i] = upoly.divmod_(row, hc)
    return BiPoly.from_x_slices(f.field, qs), BiPoly.from_x_slices(f.field, rs)


def squarefree_part(h: BiPoly) -> BiPoly:
    """Monic squarefree part ``h / gcd(h, h')`` of a polynomial in y."""
    hc = _modulus_coeffs(h)
    g = upoly.gcd(hc, upoly.derivative(hc))
    q, rem = upoly.divmod_(hc, g)
    assert not rem
    return BiPoly.from_y_coeffs(h.field, upoly.monic(q))


def is_nilpotent_in_quotient(f: BiPoly, h: BiPoly) -> bool:
    """Exact test: f is nilpotent mod h iff the squarefree part of h divides f."""
    return reduce_mod(f, squarefree_part(h)).is_zero()


def nilpotent_by_powers(f: BiPoly, h: BiPoly) -> bool:
    """Reference test: compute f^k mod h for k up to deg h."""
    d = len(_modulus_coeffs(h)) - 1
    g = reduce_mod(f, h)
    acc = g
    for _ in range(max(d, 1) - 1):
        if acc.is_zero():
            return True
        acc = reduce_mod(acc * g, h)
    return acc.is_zero()


class PrincipalQuotient:
    """The algebra K[x, y]/<h(y)> with elements kept in normal form."""

    def __init__(self, modulus: BiPoly):
        _modulus_coeffs(modulus)
        self.modulus = modulus
        self.field = modulus.field

    @cached_property
    def squarefree(self) -> BiPoly:
        return squarefree_part(self.modulus)

    @property
    def y_rank(self) -> int:
        return self.modulus.y_degree

    def __call__(self, f: BiPoly) -> BiPoly:
        return reduce_mod(f, self.modulus)

    reduce = __call__

    def mul(self, f: BiPoly, g: BiPoly) -> BiPoly:
        return self(self(f) * self(g))

    def pow(self, f: BiPoly, e: int) -> BiPoly:
        result = self(BiPoly.one(self.field))
        base = self(f)
        while e:
            if e & 1:
                result = self(result * base)
            e >>= 1
            if e:
                base = self(base * base)
        return result

    def is_normal(self, f: BiPoly) -> bool:
        return f.y_degree < self.y_rank

    def is_nilpotent(self, f: BiPoly) -> bool:
        return reduce_mod(f, self.squarefree).is_zero()

    def __repr__(self) -> str:
        return f"PrincipalQuotient(<{self.modulus}>)"


# -- CRT ----------------------------------------------------------------------------


@dataclass
class CRTComponent:
    """One factor A_i = K[x, y]/<modulus>.

    ``root`` is None for the y^s factor, otherwise the element a with modulus
    (y^r - a)^mult.
    """

    label: str
    modulus: BiPoly
    root: Optional[Coeff]
    mult: int

    @property
    def quotient(self) -> PrincipalQuotient:
        return PrincipalQuotient(self.modulus)

    def project(self, f: BiPoly) -> BiPoly:
        return reduce_mod(f, self.modulus)


@dataclass
class CRTDecomposition:
    source: BiPoly
    components: list = dc_field(default_factory=list)

    def project(self, f: BiPoly) -> tuple:
        return tuple(c.project(f) for c in self.components)

    def coprime(self) -> bool:
        for a, b in itertools.combinations(self.components, 2):
            if upoly.gcd(a.modulus.y_coeffs(), b.modulus.y_coeffs()) != [a.modulus.field.one()]:
                return False
        return True

    def injective(self) -> bool:
        """Rank test on the y-basis of the source normal forms.

        Reduction preserves x-degree, so injectivity on K[y]/<h> suffices.
        """
        F = self.source.field
        d = self.source.y_degree
        # stack the component normal forms side by side, offsetting x-exponents
        width = [c.modulus.y_degree for c in self.components]
        space = TruncatedSpace(F)
        for j in range(d):
            mono = BiPoly.monomial(F, 0, j)
            row = BiPoly.zero(F)
            for k, c in enumerate(self.components):
                row = row + c.project(mono).shift(k, 0)
            space.insert(row)
        return len(space) == d == sum(width)


def _y_minus(field: FieldSpec, r: int, a: Coeff) -> BiPoly:
    return BiPoly.monomial(field, 0, r) - a


def crt_decompose(s: int, factored: Sequence[tuple], r: int, p: Optional[BiPoly] = None,
                  field: Optional[FieldSpec] = None) -> CRTDecomposition:
    """Split K[x, y]/<y^s p(y^r)> along p = prod (y - a_i)^{n_i}.

    ``factored`` lists ``(a_i, n_i)``; when ``p`` is supplied the factorisation
    must reassemble to it exactly.
    """
    if field is None:
        if p is not None:
            field = p.field
        elif factored:
            field = factored[0][0].field
        else:
            field = FieldSpec(1)
    roots = [field(a) for a, _ in factored]
    for a, n in zip(roots, (n for _, n in factored)):
        if not a:
            raise ValueError("CRT factor with a_i = 0; zero roots belong in y^s")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"multiplicity must be a positive integer, got {n!r}")
    if len(set(roots)) != len(roots):
        raise ValueError("repeated a_i in factorisation")
    y = BiPoly.y(field)
    rebuilt = BiPoly.one(field)
    for a, (_, n) in zip(roots, factored):
        rebuilt = rebuilt * (y - a) ** n
    if p is not None and rebuilt != p:
        raise ValueError(f"factorisation reassembles to {rebuilt}, not p = {p}")
    source = substitute_y_power(rebuilt, r).shift(0, s)
    comps = []
    if s > 0:
        comps.append(CRTComponent(f"y^{s}" if s > 1 else "y", BiPoly.monomial(field, 0, s), None, 0))
    for a, (_, n) in zip(roots, factored):
        mod = _y_minus(field, r, a) ** n
        base = f"({_y_minus(field, r, a)})"
        comps.append(CRTComponent(base if n == 1 else f"{base}^{n}", mod, a, n))
    dec = CRTDecomposition(source, comps)
    if not dec.coprime():
        raise ValueError("CRT moduli are not pairwise coprime")
    if not dec.injective():
        raise ValueError("CRT map is not injective")
    return dec


def split_linear(p: BiPoly) -> Optional[list]:
    """Factor a monic polynomial in y into linear factors over the session field.

    Candidate roots are the roots of unity of the field and, for rational p,
    the rational roots. Returns ``[(a_i, n_i), ...]`` or None if p does not
    split this way.
    """
    F = p.field
    coeffs = p.y_coeffs()
    candidates = []
    z = F.gen()
    for k in range(F.conductor):
        for sign in (1, -1):
            candidates.append(z**k * sign)
    if all(c.is_rational() for c in coeffs):
        fr = [c.to_fraction() for c in coeffs]
        den = 1
        for q in fr:
            den = den * q.denominator // math.gcd(den, q.denominator)
        ints = [int(q * den) for q in fr]
        lo = next(k for k, v in enumerate(ints) if v)
        a0, an = abs(ints[lo]), abs(ints[-1])
        if lo > 0:
            candidates.append(F(0))
        for u in _positive_divisors(a0):
            for v in _positive_divisors(an):
                candidates.append(F(Fraction(u, v)))
                candidates.append(F(Fraction(-u, v)))
    out = []
    rest = coeffs
    seen = []
    for a in candidates:
        if a in seen:
            continue
        seen.append(a)
        n = 0
        while len(rest) > 1 and not upoly.evaluate(rest, a):
            rest, _ = upoly.divmod_(rest, [-a, F.one()])
            n += 1
        if n:
            out.append((a, n))
    if len(rest) != 1:
        return None
    return out


def _positive_divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0] if n else [1]


# -- the finite algebra R and the DFT ---------------------------------------------


class FiniteAlgebra:
    """R = K[y]/<y^r - 1>; elements are length-r coefficient lists in ybar."""

    def __init__(self, field: FieldSpec, r: int):
        if r < 1:
            raise ValueError("r must be positive")
        self.field = field
        self.r = r

    @property
    def dimension(self) -> int:
        return self.r

    def element(self, coeffs) -> list:
        out = [self.field.zero()] * self.r
        for k, c in enumerate(coeffs):
            out[k % self.r] = out[k % self.r] + self.field(c)
        return out

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = [self.field.zero()] * self.r
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out[(i + j) % self.r] = out[(i + j) % self.r] + a * b
        return out

    def is_idempotent(self, u: Sequence) -> bool:
        return self.mul(u, u) == list(u)

    def to_poly(self, u: Sequence) -> BiPoly:
        return BiPoly.from_y_coeffs(self.field, u)


def inverse_dft(values: Sequence, field: FieldSpec, omega: Optional[Coeff] = None) -> list:
    """Coefficients b_j = (1/r) sum_i values_i omega^(-ij) of the polynomial
    of degree < r taking ``values[i]`` at omega^i."""
    r = len(values)
    if omega is None:
        omega = field.root_of_unity(r)
    vals = [field(v) for v in values]
    inv = omega.inverse()
    out = []
    for j in range(r):
        acc = field.zero()
        step = inv**j
        w = field.one()
        for v in vals:
            acc = acc + v * w
            w = w * step
        out.append(acc / r)
    return out


def forward_dft(coeffs: Sequence, field: FieldSpec, omega: Optional[Coeff] = None) -> list:
    """Values f(omega^j), j = 0..r-1, of f = sum coeffs_i y^i."""
    r = len(coeffs)
    if omega is None:
        omega = field.root_of_unity(r)
    cs = [field(c) for c in coeffs]
    return [upoly.evaluate(cs, omega**j) for j in range(r)]


@dataclass
class IdempotentSearch:
    r: int
    field: FieldSpec
    candidates: int
    idempotents_checked: int
    survivors: list

    @property
    def only_zero(self) -> bool:
        return len(self.survivors) == 1 and not any(self.survivors[0])


def idempotent_search_cprime(r: int, field: FieldSpec) -> IdempotentSearch:
    """Idempotents of R lying in span{ybar, ..., ybar^(r-1)}.

    Idempotents correspond to {0,1}-valued functions on the r-th roots of
    unity; each of the 2^r value vectors is inverted by the DFT, confirmed
    idempotent in R, and kept iff its constant coefficient vanishes.
    """
    try:
        omega = field.root_of_unity(r)
    except ValueError as exc:
        raise FieldMismatch(str(exc)) from None
    R = FiniteAlgebra(field, r)
    survivors = []
    checked = 0
    for bits in itertools.product((0, 1), repeat=r):
        b = inverse_dft(bits, field, omega)
        if not R.is_idempotent(b):
            raise AssertionError(f"inverse DFT of {bits} is not idempotent")
        checked += 1
        if not b[0]:
            survivors.append(b)
    return IdempotentSearch(r, field, 2**r, checked, survivors)
