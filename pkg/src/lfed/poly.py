"""Sparse bivariate polynomials over a cyclotomic field.

Monomials are ordered lexicographically with ``x > y``; since a monomial is a
tuple ``(i, j)`` of exponents this is plain tuple comparison.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from .field import Coeff, FieldMismatch, FieldSpec

Scalar = Union[int, Fraction, Coeff]


class Monomial(NamedTuple):
    """``x**i * y**j``."""

    i: int
    j: int

    @property
    def degree(self) -> int:
        return self.i + self.j

    def __str__(self) -> str:
        return _format_monomial(self.i, self.j) or "1"


def monomials_up_to(degree: int) -> Iterator[Monomial]:
    """All monomials of total degree <= ``degree``, by degree then descending lex."""
    for d in range(degree + 1):
        for i in range(d, -1, -1):
            yield Monomial(i, d - i)


class BiPoly:
    """Immutable element of K[x, y].

    ``terms`` maps exponent pairs to nonzero coefficients. Construct through
    the class methods or arithmetic rather than by hand.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: FieldSpec, terms: Optional[Mapping] = None):
        self.field = field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field(c)
                if c:
                    clean[Monomial(*m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, terms: dict) -> "BiPoly":
        # terms must already hold nonzero Coeffs of ``field``
        obj = cls.__new__(cls)
        obj.field = field
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec) -> "BiPoly":
        return cls._raw(field, {})

    @classmethod
    def constant(cls, field: FieldSpec, c: Scalar) -> "BiPoly":
        return cls(field, {(0, 0): c})

    @classmethod
    def one(cls, field: FieldSpec) -> "BiPoly":
        return cls.constant(field, 1)

    @classmethod
    def monomial(cls, field: FieldSpec, i: int, j: int, c: Scalar = 1) -> "BiPoly":
        if i < 0 or j < 0:
            raise ValueError("exponents must be nonnegative")
        return cls(field, {(i, j): c})

    @classmethod
    def x(cls, field: FieldSpec) -> "BiPoly":
        return cls.monomial(field, 1, 0)

    @classmethod
    def y(cls, field: FieldSpec) -> "BiPoly":
        return cls.monomial(field, 0, 1)

    @classmethod
    def from_y_coeffs(cls, field: FieldSpec, coeffs: Iterable[Scalar]) -> "BiPoly":
        """Univariate polynomial in ``y`` from coefficients, lowest degree first."""
        return cls(field, {(0, j): c for j, c in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(monomial, coefficient) pairs in descending lex order."""
        return sorted(self._terms.items(), reverse=True)

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coeff(self, i: int, j: int) -> Coeff:
        return self._terms.get((i, j), self.field.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    @property
    def x_degree(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def y_degree(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def is_univariate_y(self) -> bool:
        return all(i == 0 for i, _ in self._terms)

    def leading_term(self) -> tuple[Monomial, Coeff]:
        """Lex-greatest monomial of the support together with its coefficient."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self._terms)
        return Monomial(*m), self._terms[m]

    def y_coeffs(self) -> list:
        """Coefficients in ``y`` (lowest first) of a polynomial free of ``x``."""
        if not self.is_univariate_y():
            raise ValueError(f"{self} involves x")
        out = [self.field.zero()] * (self.y_degree + 1)
        for (_, j), c in self._terms.items():
            out[j] = c
        return out

    def x_slices(self) -> dict[int, list]:
        """Map x-exponent to the dense y-coefficient list of that slice."""
        slices: dict[int, dict] = {}
        for (i, j), c in self._terms.items():
            slices.setdefault(i, {})[j] = c
        out = {}
        for i, row in slices.items():
            dense = [self.field.zero()] * (max(row) + 1)
            for j, c in row.items():
                dense[j] = c
            out[i] = dense
        return out

    @classmethod
    def from_x_slices(cls, field: FieldSpec, slices: Mapping[int, Iterable]) -> "BiPoly":
        terms = {}
        for i, row in slices.items():
            for j, c in enumerate(row):
                if c:
                    terms[(i, j)] = c
        return cls._raw(field, terms)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Optional["BiPoly"]:
        if isinstance(other, BiPoly):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine polynomials over {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Rational, Coeff)):
            return BiPoly.constant(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in o._terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return BiPoly._raw(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw(self.field, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def scale(self, c: Scalar) -> "BiPoly":
        c = self.field(c)
        if not c:
            return BiPoly.zero(self.field)
        return BiPoly._raw(self.field, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Coeff)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in o._terms.items():
                key = (i1 + i2, j1 + j2)
                prev = terms.get(key)
                terms[key] = c1 * c2 if prev is None else prev + c1 * c2
        return BiPoly._raw(self.field, {Monomial(*m): c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = BiPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by ``x**di * y**dj``."""
        return BiPoly._raw(self.field, {Monomial(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def filter(self, keep: Callable[[Monomial], bool]) -> "BiPoly":
        return BiPoly._raw(self.field, {m: c for m, c in self._terms.items() if keep(m)})

    # -- calculus and composition ------------------------------------------
    def partial_x(self) -> "BiPoly":
        return BiPoly._raw(
            self.field, {Monomial(i - 1, j): c * i for (i, j), c in self._terms.items() if i}
        )

    def partial_y(self) -> "BiPoly":
        return BiPoly._raw(
            self.field, {Monomial(i, j - 1): c * j for (i, j), c in self._terms.items() if j}
        )

    def substitute(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """``self(px, py)``, computed with cached powers of the images."""
        px, py = self._coerce(px), self._coerce(py)
        xp = _PowerCache(px)
        yp = _PowerCache(py)
        acc: dict = {}
        for (i, j), c in self.items():
            for m, v in (xp[i] * yp[j])._terms.items():
                prev = acc.get(m)
                acc[m] = v * c if prev is None else prev + v * c
        return BiPoly._raw(self.field, {m: v for m, v in acc.items() if v})

    def __call__(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        return self.substitute(px, py)

    # -- comparison and printing -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, (int, Rational, Coeff)):
            try:
                return self == BiPoly.constant(self.field, other)
            except FieldMismatch:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r}, {self.field})"

    def __str__(self) -> str:
        return format_poly(self)


def substitute_y_power(p: BiPoly, r: int) -> BiPoly:
    """``p(y**r)``; any x-exponents are left alone."""
    return BiPoly._raw(p.field, {Monomial(i, j * r): c for (i, j), c in p._terms.items()})


class _PowerCache:
    """Powers of one polynomial; consecutive exponents reuse the previous power,
    isolated large ones fall back to repeated squaring."""

    def __init__(self, base: BiPoly):
        self.base = base
        self.powers = {0: BiPoly.one(base.field), 1: base}

    def __getitem__(self, k: int) -> BiPoly:
        got = self.powers.get(k)
        if got is None:
            prev = self.powers.get(k - 1)
            got = prev * self.base if prev is not None else self.base**k
            self.powers[k] = got
        return got


def binomial(m: int, i: int) -> int:
    return comb(m, i)


def _format_monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(f: BiPoly) -> str:
    """Canonical text: terms in descending lex order, e.g. ``2*x - y^3 - y``.

    Rational coefficients are written inline with their sign folded into the
    separator; irrational coefficients are parenthesised polynomials in ``z``.
    """
    pieces = []
    for (i, j), c in f.items():
        mono = _format_monomial(i, j)
        if c.is_rational():
            q = c.c[0]
            negative = q < 0
            mag = abs(q)
            if not mono:
                body = _format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_format_rational(mag)}*{mono}"
        else:
            negative = False
            body = f"({c})" + (f"*{mono}" if mono else "")
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces) if pieces else "0"
