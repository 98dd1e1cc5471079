"""Monomial-spanned subspaces and finite windows onto images of E-derivations.

For a case-4 normal form with ``h = y^s p(y^r)`` the image of
``delta = id - phi`` is ``C + <h>``, where ``C`` is spanned by the monomials
``x^i y^j`` with ``r`` not dividing ``i*s + j``. Everything here checks that
identity, or pieces of it, on finite windows with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .endo import Case1, Case3, Case4, Case6, EDerivation, Endomorphism, NormalForm, apply_delta, build_normal_form
from .field import FieldSpec
from .linalg import TruncatedSpace
from .poly import BiPoly, Monomial, monomials_up_to, substitute_y_power
from .quotient import divide_by_y_poly, reduce_mod
from .report import Check, CheckReport


# -- patterns ---------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialPattern:
    """Subspace spanned by the monomials satisfying an arithmetic condition.

    kinds: ``C`` (r does not divide i*s + j), ``B`` (r divides it), ``B1``
    (as B with i > 0), ``Cprime`` (pure powers x^m with r not dividing m),
    ``FullIdealXY`` (every nonconstant monomial), ``YIdealPlusCprime``
    (monomials divisible by y, plus Cprime) and ``Custom`` (explicit table of
    admitted monomials up to ``degree_bound``).
    """

    kind: str
    r: int = 1
    s: int = 0
    table: Optional[frozenset] = None
    degree_bound: Optional[int] = None

    @classmethod
    def C(cls, r: int, s: int) -> "MonomialPattern":
        return cls("C", r, s)

    @classmethod
    def B(cls, r: int, s: int) -> "MonomialPattern":
        return cls("B", r, s)

    @classmethod
    def B1(cls, r: int, s: int) -> "MonomialPattern":
        return cls("B1", r, s)

    @classmethod
    def Cprime(cls, r: int) -> "MonomialPattern":
        return cls("Cprime", r)

    @classmethod
    def full_ideal_xy(cls) -> "MonomialPattern":
        return cls("FullIdealXY")

    @classmethod
    def y_ideal_plus_cprime(cls, r: int) -> "MonomialPattern":
        return cls("YIdealPlusCprime", r)

    @classmethod
    def custom(cls, monomials: Iterable, degree_bound: int) -> "MonomialPattern":
        return cls("Custom", table=frozenset(Monomial(*m) for m in monomials), degree_bound=degree_bound)

    def contains(self, m) -> bool:
        i, j = m
        k = self.kind
        if k == "C":
            return (i * self.s + j) % self.r != 0
        if k == "B":
            return (i * self.s + j) % self.r == 0
        if k == "B1":
            return i > 0 and (i * self.s + j) % self.r == 0
        if k == "Cprime":
            return j == 0 and i % self.r != 0
        if k == "FullIdealXY":
            return i + j > 0
        if k == "YIdealPlusCprime":
            return j > 0 or i % self.r != 0
        if k == "Custom":
            if i + j > self.degree_bound:
                raise ValueError(f"{Monomial(i, j)} lies beyond the table bound {self.degree_bound}")
            return (i, j) in self.table
        raise ValueError(f"unknown pattern kind {k!r}")

    __contains__ = contains

    def monomials(self, degree: int) -> list[Monomial]:
        return [m for m in monomials_up_to(degree) if self.contains(m)]

    def span(self, field: FieldSpec, degree: int) -> TruncatedSpace:
        return TruncatedSpace.span(
            field, (BiPoly.monomial(field, *m) for m in self.monomials(degree)), degree
        )


def pattern_contains(pattern: MonomialPattern, m) -> bool:
    return pattern.contains(m)


def support_membership(f: BiPoly, pattern: MonomialPattern) -> bool:
    """f lies in a monomial-spanned subspace iff its support does."""
    return all(pattern.contains(m) for m in f.support)


# -- the triangular solver ----------------------------------------------------------


class PreimageError(ValueError):
    """The triangular solver could not proceed; ``monomial`` names the culprit."""

    def __init__(self, message: str, monomial: Optional[Monomial] = None):
        super().__init__(message)
        self.monomial = monomial


def monomial_map(delta: EDerivation | Endomorphism) -> Callable[[Monomial], BiPoly]:
    """Cached ``u -> delta(u)`` on monomials."""
    F = delta.field

    @lru_cache(maxsize=None)
    def image(m: Monomial) -> BiPoly:
        return apply_delta(delta, BiPoly.monomial(F, *m))

    return image


def triangular_preimage_solve(
    delta_apply: Callable[[Monomial], BiPoly],
    pattern: MonomialPattern,
    target: BiPoly,
    degree_bound: int,
) -> BiPoly:
    """Find h spanned by pattern monomials with delta(h) = target.

    Works down the lex order: the leading monomial u of the residual must be
    the leading monomial of delta(u), so one coefficient clears it and only
    lex-smaller monomials remain. Lex is a well-order, so this terminates.
    """
    F = target.field
    for m in target.support:
        if not pattern.contains(m):
            raise PreimageError(f"target monomial {m} lies outside the pattern", m)
    residual = target
    solution: dict = {}
    while residual:
        u, c = residual.leading_term()
        if not pattern.contains(u):
            raise PreimageError(f"residual monomial {u} escaped the pattern", u)
        if u.degree > degree_bound:
            raise PreimageError(f"preimage needs {u}, beyond degree bound {degree_bound}", u)
        img = delta_apply(u)
        if img.is_zero():
            raise PreimageError(f"delta({u}) vanishes", u)
        lead, cu = img.leading_term()
        if lead != u:
            raise PreimageError(f"leading term of delta({u}) is at {lead}, not {u}", u)
        k = c / cu
        solution[u] = k
        residual = residual - img.scale(k)
    return BiPoly(F, solution)


# -- truncated images ---------------------------------------------------------------


def generator_monomials(d_in: int, x_weight: int = 1) -> list[Monomial]:
    """Monomials x^m y^n with x_weight*m + n <= d_in."""
    return [Monomial(m, n) for m in range(d_in // x_weight + 1) for n in range(d_in - x_weight * m + 1)]


def truncated_image(
    delta: EDerivation | Endomorphism,
    d_in: int,
    d_out: Optional[int] = None,
    x_weight: int = 1,
) -> TruncatedSpace:
    """Span of the generator images delta(x^m y^n), x_weight*m + n <= d_in,
    keeping only images of total degree <= d_out (all when d_out is None).

    Every basis vector is a combination of genuine images, so the window
    never overstates the image.
    """
    image = monomial_map(delta)
    space = TruncatedSpace(delta.field)
    for mono in generator_monomials(d_in, x_weight):
        v = image(mono)
        if d_out is None or v.degree <= d_out:
            space.insert(v)
    return space


# -- membership in C + <y^s p(y^r)> ------------------------------------------------


class CPlusIdeal:
    """Membership oracle for C(r, s) + <h>, by default h = y^s p(y^r).

    Reduction modulo h preserves x-degree and C is monomial, so the test
    splits into x-slices. For slice i the admissible powers y^j (r not
    dividing i*s + j) fall into residue classes t mod r, and the normal forms
    of y^(t + r k) form the Krylov sequence of y^t under multiplication by
    y^r in K[y]/<h>. The accumulated span stays invariant under that
    multiplication, so a class is complete as soon as its next vector is
    dependent, and slice membership is decided exactly.
    """

    def __init__(self, r: int, s: int, p: Optional[BiPoly] = None, modulus: Optional[BiPoly] = None):
        if r < 1 or s < 0:
            raise ValueError("need r >= 1 and s >= 0")
        if (p is None) == (modulus is None):
            raise ValueError("give exactly one of p and modulus")
        if p is not None:
            if p.is_zero() or not p.is_univariate_y() or p.coeff(0, p.y_degree) != 1:
                raise ValueError(f"p must be a monic polynomial in y, got {p}")
            if not p.coeff(0, 0):
                raise ValueError(f"p(0) must be nonzero, got p = {p}")
            modulus = substitute_y_power(p, r).shift(0, s)
        elif modulus.is_zero() or not modulus.is_univariate_y() or modulus.coeff(0, modulus.y_degree) != 1:
            raise ValueError(f"modulus must be a monic polynomial in y, got {modulus}")
        self.r, self.s, self.p = r, s, p
        self.field = modulus.field
        self.modulus = modulus
        self.pattern = MonomialPattern.C(r, s)
        self._slice_spaces: dict[int, TruncatedSpace] = {}

    def with_modulus(self, modulus: BiPoly) -> "CPlusIdeal":
        """Same C, different ideal; e.g. the image of this subspace in a CRT factor."""
        return CPlusIdeal(self.r, self.s, modulus=modulus)

    @property
    def trivial(self) -> bool:
        """A constant modulus (s = 0, p = 1) makes the ideal the whole ring."""
        return self.modulus.y_degree == 0

    def reduce(self, f: BiPoly) -> BiPoly:
        return reduce_mod(f, self.modulus)

    def slice_space(self, i: int) -> TruncatedSpace:
        key = (i * self.s) % self.r
        if key not in self._slice_spaces:
            F = self.field
            space = TruncatedSpace(F)
            step = BiPoly.monomial(F, 0, self.r)
            for t in range(self.r):
                if (key + t) % self.r == 0:
                    continue
                v = self.reduce(BiPoly.monomial(F, 0, t))
                while space.insert(v):
                    v = self.reduce(v * step)
            self._slice_spaces[key] = space
        return self._slice_spaces[key]

    def contains(self, f: BiPoly) -> bool:
        if self.trivial:
            return True
        g = self.reduce(f)
        for i, row in g.x_slices().items():
            if not self.slice_space(i).contains(BiPoly.from_y_coeffs(self.field, row)):
                return False
        return True

    __contains__ = contains
    __call__ = contains

    def __repr__(self) -> str:
        return f"C({self.r},{self.s}) + <{self.modulus}>"


def membership_c_plus_ideal(f: BiPoly, r: int, s: int, p: BiPoly) -> bool:
    return CPlusIdeal(r, s, p).contains(f)


# -- image identity for case 4 ------------------------------------------------------


def x_weight(nf: Case4) -> int:
    """Weight of x under which delta never raises degree: s + r * deg p."""
    return nf.s + nf.r * nf.p.y_degree


def verify_image_identity(nf: Case4, D: int, margin: int, delta: Optional[EDerivation] = None) -> CheckReport:
    """Check Im delta = C + <y^s p(y^r)> in degree <= D, both inclusions.

    ``delta`` overrides the derivation built from ``nf`` (used to confirm
    that corrupted maps are caught). The reverse inclusion is tested inside
    the span of generator images of weighted degree <= q*D + margin, where
    q = s + r deg p is the x-weight; the weight grading is what bounds the
    preimages of degree-D targets.
    """
    if not isinstance(nf, Case4):
        raise TypeError("image identity applies to case 4")
    nf.require_p0_nonzero()
    F = nf.field
    delta = delta or EDerivation(build_normal_form(nf))
    oracle = CPlusIdeal(nf.r, nf.s, nf.p)
    image = monomial_map(delta)
    report = CheckReport()

    bad = next((m for m in monomials_up_to(D) if not oracle.contains(image(m))), None)
    report.add(Check(
        "image-in-C-plus-ideal",
        "pass" if bad is None else "fail",
        f"delta(x^m y^n) in {oracle} for m+n <= {D}" if bad is None else f"delta({bad}) not in {oracle}",
        None if bad is None else str(image(bad)),
    ))

    q = x_weight(nf)
    window = truncated_image(delta, q * D + margin, None, x_weight=q)

    bad = next((m for m in MonomialPattern.C(nf.r, nf.s).monomials(D)
                if not window.contains(BiPoly.monomial(F, *m))), None)
    report.add(Check(
        "C-in-image",
        "pass" if bad is None else "fail",
        f"C-monomials of degree <= {D} in truncated image (dim {len(window)})"
        if bad is None else f"{bad} not reached by the truncated image",
        None if bad is None else str(bad),
    ))

    bad = None
    h = nf.modulus
    for m, n in monomials_up_to(D):
        target = h.shift(m, n)
        if target.degree > D:
            continue
        if not window.contains(target):
            bad = target
            break
    report.add(Check(
        "ideal-in-image",
        "pass" if bad is None else "fail",
        f"x^m y^n h of degree <= {D} in truncated image" if bad is None else "ideal multiple not reached",
        None if bad is None else str(bad),
    ))
    return report


def eta_window(nf: Case4, D: int) -> CheckReport:
    """For B1-monomials u of degree <= D: x*delta(u) is divisible by
    y^s p(y^r), the quotient is supported on B1, and its leading term is
    -m b^(-s) u."""
    nf.require_p0_nonzero()
    image = monomial_map(EDerivation(build_normal_form(nf)))
    b1 = MonomialPattern.B1(nf.r, nf.s)
    report = CheckReport()
    for u in b1.monomials(D):
        quotient, rem = divide_by_y_poly(image(u).shift(1, 0), nf.modulus)
        ok = rem.is_zero() and support_membership(quotient, b1)
        if ok:
            lead, c = quotient.leading_term()
            ok = lead == u and c == -u.i * nf.b ** (-nf.s)
        report.add(Check(f"eta:{u}", "pass" if ok else "fail", "", None if ok else str(quotient)))
    return report


# -- expected images of the other cases ---------------------------------------------


def expected_image_pattern(nf: NormalForm, D: int) -> MonomialPattern:
    if isinstance(nf, Case1):
        keep = [m for m in monomials_up_to(D) if nf.b ** m.i * nf.a ** m.j != 1]
        return MonomialPattern.custom(keep, D)
    if isinstance(nf, Case3):
        return MonomialPattern.full_ideal_xy()
    if isinstance(nf, Case6):
        order = nf.lam.multiplicative_order()
        if order is None:
            return MonomialPattern.full_ideal_xy()
        return MonomialPattern.y_ideal_plus_cprime(order)
    raise ValueError(f"no closed-form image for case {getattr(nf, 'case', '?')}")


def expected_image_for_case(nf: NormalForm, D: int) -> TruncatedSpace:
    """Degree-<= D truncation of the closed-form image for cases 1, 3 and 6."""
    return expected_image_pattern(nf, D).span(nf.field, D)
