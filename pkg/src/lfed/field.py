"""Exact arithmetic in the cyclotomic fields Q(zeta_r).

An element is stored as its residue modulo the r-th cyclotomic polynomial,
i.e. a tuple of ``Fraction`` coefficients in powers of the fixed generator
``zeta_r``. Conductor 1 gives the rationals.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

from . import upoly


class FieldMismatch(ValueError):
    """Raised when values over different coefficient fields are combined."""


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in divisors(n):
        if d < n:
            num, rem = upoly.divmod_(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not rem
    return tuple(int(c) for c in num)


@dataclass(frozen=True)
class FieldSpec:
    """The field Q(zeta_r); ``conductor == 1`` means Q."""

    conductor: int = 1

    def __post_init__(self):
        if not isinstance(self.conductor, int) or self.conductor < 1:
            raise ValueError(f"conductor must be a positive integer, got {self.conductor!r}")

    @property
    def modulus(self) -> tuple[int, ...]:
        return cyclotomic_polynomial(self.conductor)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def has_generator(self) -> bool:
        """Whether the parser accepts the symbol ``z``."""
        return self.conductor > 1

    def __str__(self) -> str:
        return "Q" if self.conductor == 1 else f"Q(zeta_{self.conductor})"

    def zero(self) -> "Coeff":
        return Coeff(self, (Fraction(0),) * self.degree)

    def one(self) -> "Coeff":
        return self(1)

    def gen(self) -> "Coeff":
        """The fixed primitive root ``zeta_r`` (equal to 1 when r = 1, -1 when r = 2)."""
        return Coeff.from_poly(self, [Fraction(0), Fraction(1)])

    def __call__(self, value: Union[int, Fraction, "Coeff"]) -> "Coeff":
        if isinstance(value, Coeff):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, (int, Rational)):
            return Coeff(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def root_of_unity(self, order: int) -> "Coeff":
        """An element of exact multiplicative order ``order``.

        The torsion of Q(zeta_r)* is the group of +-zeta_r^k, so the search is
        finite. Raises ``ValueError`` if the field has no such element.
        """
        z = self.gen()
        n = self.conductor
        for k in range(n):
            for sign in (1, -1):
                w = z**k * sign
                if w.multiplicative_order() == order:
                    return w
        raise ValueError(f"{self} contains no primitive {order}-th root of unity")


def _reduce(field: FieldSpec, coeffs: list) -> tuple:
    mod = field.modulus
    deg = len(mod) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            shift = k - deg
            for t in range(deg):
                if mod[t]:
                    coeffs[shift + t] -= c * mod[t]
        coeffs[k] = 0
    out = coeffs[:deg] + [Fraction(0)] * (deg - len(coeffs))
    return tuple(Fraction(c) for c in out)


class Coeff:
    """Immutable element of a cyclotomic field."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldSpec, c: tuple):
        self.field = field
        self.c = c

    @classmethod
    def from_poly(cls, field: FieldSpec, coeffs) -> "Coeff":
        """Reduce an arbitrary polynomial in zeta (lowest degree first)."""
        return cls(field, _reduce(field, [Fraction(v) for v in coeffs]))

    def _other(self, other) -> Optional["Coeff"]:
        if isinstance(other, Coeff):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Rational)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Coeff(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Coeff(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Coeff(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if len(self.c) == 1:
            return Coeff(self.field, (self.c[0] * o.c[0],))
        a, b = self.c, o.c
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        return Coeff(self.field, _reduce(self.field, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Coeff":
        if not self:
            raise ZeroDivisionError("inverse of zero in " + str(self.field))
        if len(self.c) == 1:
            return Coeff(self.field, (1 / self.c[0],))
        mod = [Fraction(v) for v in self.field.modulus]
        g, u, _ = upoly.xgcd(upoly.trim(self.c), mod, Fraction(1))
        # Phi_r is irreducible, so any nonzero residue is coprime to it.
        assert g == [Fraction(1)]
        return Coeff.from_poly(self.field, u)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "Coeff":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Coeff):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.field, self.c))

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def multiplicative_order(self) -> Optional[int]:
        """Exact order if this is a root of unity, else ``None``.

        Torsion units of Q(zeta_r) are +-zeta_r^k, whose orders all divide
        2r, so it suffices to try the divisors of 2r in increasing order.
        """
        if not self:
            raise ValueError("zero is not a unit")
        for t in divisors(2 * self.field.conductor):
            if self**t == 1:
                return t
        return None

    def __repr__(self) -> str:
        return f"Coeff({self}, {self.field})"

    def __str__(self) -> str:
        return format_zeta_poly(self.c)


def is_root_of_unity(c: Coeff) -> Optional[int]:
    """Multiplicative order of ``c`` when it is a root of unity, else ``None``."""
    return c.multiplicative_order()


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_zeta_poly(coeffs) -> str:
    """Render a residue as a polynomial in ``z`` with descending powers."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        q = coeffs[k]
        if not q:
            continue
        mag = abs(q)
        if k == 0:
            body = _format_rational(mag)
        else:
            zpow = "z" if k == 1 else f"z^{k}"
            body = zpow if mag == 1 else f"{_format_rational(mag)}*{zpow}"
        if not parts:
            parts.append(("-" if q < 0 else "") + body)
        else:
            parts.append((" - " if q < 0 else " + ") + body)
    return "".join(parts) if parts else "0"
