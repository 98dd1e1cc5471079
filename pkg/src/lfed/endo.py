"""Endomorphisms and E-derivations of K[x, y].

An endomorphism is determined by the images of ``x`` and ``y``; the attached
E-derivation is ``delta = id - phi``. The seven normal-form shapes of locally
finite endomorphisms are provided as small dataclasses with validated
parameters, together with a purely syntactic recognizer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Optional, Union

from .field import Coeff, FieldMismatch, FieldSpec
from .linalg import TruncatedSpace
from .parse import parse_poly
from .poly import BiPoly, binomial, substitute_y_power


class NormalFormError(ValueError):
    """Normal-form parameters violate the constraints of their case."""


@dataclass(frozen=True)
class Endomorphism:
    image_x: BiPoly
    image_y: BiPoly

    def __post_init__(self):
        if self.image_x.field != self.image_y.field:
            raise FieldMismatch("images of x and y live over different fields")

    @property
    def field(self) -> FieldSpec:
        return self.image_x.field

    @classmethod
    def identity(cls, field: FieldSpec) -> "Endomorphism":
        return cls(BiPoly.x(field), BiPoly.y(field))

    def __call__(self, f: BiPoly) -> BiPoly:
        return apply_endo(self, f)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """``self o other``: apply ``other`` first."""
        return Endomorphism(self(other.image_x), self(other.image_y))

    def iterate(self, k: int) -> "Endomorphism":
        result = Endomorphism.identity(self.field)
        for _ in range(k):
            result = self.compose(result)
        return result

    def delta(self) -> "EDerivation":
        return EDerivation(self)

    def __str__(self) -> str:
        return f"x -> {self.image_x}, y -> {self.image_y}"


@dataclass(frozen=True)
class EDerivation:
    """``delta(f) = f - phi(f)``."""

    phi: Endomorphism

    @property
    def field(self) -> FieldSpec:
        return self.phi.field

    def __call__(self, f: BiPoly) -> BiPoly:
        return apply_delta(self, f)


def apply_endo(phi: Endomorphism, f: BiPoly) -> BiPoly:
    if f.field != phi.field:
        raise FieldMismatch(f"polynomial over {f.field}, endomorphism over {phi.field}")
    return f.substitute(phi.image_x, phi.image_y)


def apply_delta(delta: Union[EDerivation, Endomorphism], f: BiPoly) -> BiPoly:
    phi = delta.phi if isinstance(delta, EDerivation) else delta
    return f - apply_endo(phi, f)


def parse_endomorphism(text: str, field: FieldSpec) -> Endomorphism:
    """Parse ``"x -> <poly>, y -> <poly>"`` (either order)."""
    images = {}
    for part in text.split(","):
        m = re.fullmatch(r"\s*([xy])\s*->\s*(.+?)\s*", part)
        if not m:
            raise ValueError(f"expected 'x -> ...' or 'y -> ...', got {part.strip()!r}")
        if m.group(1) in images:
            raise ValueError(f"image of {m.group(1)} given twice")
        images[m.group(1)] = parse_poly(m.group(2), field)
    missing = {"x", "y"} - set(images)
    if missing:
        raise ValueError(f"missing image for {', '.join(sorted(missing))}")
    return Endomorphism(images["x"], images["y"])


# -- normal forms -------------------------------------------------------------


def _same_field(*values) -> FieldSpec:
    fields = {v.field for v in values}
    if len(fields) != 1:
        raise FieldMismatch("normal-form parameters over different fields")
    return fields.pop()


def _monic_in_y(p: BiPoly) -> bool:
    if p.is_zero() or not p.is_univariate_y():
        return False
    return p.coeff(0, p.y_degree) == 1


@dataclass(frozen=True)
class Case1:
    """phi(x) = b x, phi(y) = a y."""

    a: Coeff
    b: Coeff
    case = 1

    def __post_init__(self):
        _same_field(self.a, self.b)
        if not self.a or not self.b:
            raise NormalFormError("case 1 needs a and b nonzero")

    @property
    def field(self):
        return self.a.field


@dataclass(frozen=True)
class Case2:
    """phi(x) = b x, phi(y) = y + 1."""

    b: Coeff
    case = 2

    def __post_init__(self):
        if not self.b:
            raise NormalFormError("case 2 needs b nonzero")

    @property
    def field(self):
        return self.b.field


@dataclass(frozen=True)
class Case3:
    """phi(x) = b^s x + a y^s, phi(y) = b y with b not a root of unity."""

    s: int
    a: Coeff
    b: Coeff
    case = 3

    def __post_init__(self):
        _same_field(self.a, self.b)
        if not isinstance(self.s, int) or self.s < 1:
            raise NormalFormError("case 3 needs s a positive integer")
        if not self.b:
            raise NormalFormError("case 3 needs b nonzero")
        if self.b.multiplicative_order() is not None:
            raise NormalFormError(f"case 3 needs b not a root of unity, but b = {self.b} is a root of unity")

    @property
    def field(self):
        return self.b.field


@dataclass(frozen=True)
class Case4:
    """phi(x) = b^s x + y^s p(y^r), phi(y) = b y; b primitive r-th root, p monic."""

    r: int
    s: int
    b: Coeff
    p: BiPoly
    case = 4

    def __post_init__(self):
        _same_field(self.b, self.p)
        if not isinstance(self.r, int) or self.r < 1:
            raise NormalFormError("case 4 needs r a positive integer")
        if not isinstance(self.s, int) or self.s < 0:
            raise NormalFormError("case 4 needs s a nonnegative integer")
        if not self.b or self.b.multiplicative_order() != self.r:
            raise NormalFormError(f"case 4 needs b of multiplicative order exactly {self.r}, got b = {self.b}")
        if not _monic_in_y(self.p):
            raise NormalFormError(f"case 4 needs p a monic polynomial in y, got p = {self.p}")

    @property
    def field(self):
        return self.b.field

    @property
    def modulus(self) -> BiPoly:
        """The generator ``y^s p(y^r)`` of the ideal part of the image."""
        return substitute_y_power(self.p, self.r).shift(0, self.s)

    def require_p0_nonzero(self):
        if not self.p.coeff(0, 0):
            raise NormalFormError(f"image machinery needs p(0) != 0, got p = {self.p}")


@dataclass(frozen=True)
class Case5:
    """Marker: phi^2 = phi^3. No canonical images exist for this class."""

    case = 5


@dataclass(frozen=True)
class Case6:
    """phi(x) = lam x + y g, phi(y) = 0."""

    lam: Coeff
    g: BiPoly
    case = 6

    def __post_init__(self):
        _same_field(self.lam, self.g)
        if not self.lam:
            raise NormalFormError("case 6 needs lambda nonzero")

    @property
    def field(self):
        return self.lam.field


@dataclass(frozen=True)
class Case7:
    """phi(x) = x + lam + y g, phi(y) = 0."""

    lam: Coeff
    g: BiPoly
    case = 7

    def __post_init__(self):
        _same_field(self.lam, self.g)
        if not self.lam:
            raise NormalFormError("case 7 needs lambda nonzero")

    @property
    def field(self):
        return self.lam.field


NormalForm = Union[Case1, Case2, Case3, Case4, Case5, Case6, Case7]


def build_normal_form(nf: NormalForm) -> Endomorphism:
    F = getattr(nf, "field", None)
    x = BiPoly.x(F) if F else None
    y = BiPoly.y(F) if F else None
    if isinstance(nf, Case1):
        return Endomorphism(x * nf.b, y * nf.a)
    if isinstance(nf, Case2):
        return Endomorphism(x * nf.b, y + 1)
    if isinstance(nf, Case3):
        return Endomorphism(x * nf.b**nf.s + (y**nf.s) * nf.a, y * nf.b)
    if isinstance(nf, Case4):
        return Endomorphism(x * nf.b**nf.s + nf.modulus, y * nf.b)
    if isinstance(nf, Case6):
        return Endomorphism(x * nf.lam + y * nf.g, BiPoly.zero(F))
    if isinstance(nf, Case7):
        return Endomorphism(x + nf.lam + y * nf.g, BiPoly.zero(F))
    if isinstance(nf, Case5):
        raise NormalFormError("case 5 is the relation phi^2 = phi^3 and has no canonical images")
    raise TypeError(f"not a normal form: {nf!r}")


def recognize_normal_form(phi: Endomorphism) -> Optional[NormalForm]:
    """Match ``phi`` syntactically against the normal-form shapes.

    Shapes with explicit images are tried first; the relation phi^2 = phi^3 is
    the fallback. ``None`` only means ``phi`` is not written in normal form.
    """
    F = phi.field
    fx, fy = phi.image_x, phi.image_y
    x, y = BiPoly.x(F), BiPoly.y(F)

    if fy.is_zero():
        free = fx.filter(lambda m: m.j == 0)
        rest = fx - free
        if free.x_degree <= 1:
            lam, const = free.coeff(1, 0), free.coeff(0, 0)
            g = BiPoly._raw(F, {(i, j - 1): c for (i, j), c in rest._terms.items()})
            if lam and not const:
                return Case6(lam, g)
            if lam == 1 and const:
                return Case7(const, g)
    elif fy.support == {(0, 1)} or fy == y + 1:
        b_y = fy.coeff(0, 1)
        lin = fx.coeff(1, 0)
        tail = fx - x * lin
        if lin and fy == y + 1:
            if tail.is_zero():
                return Case2(lin)
        elif lin and tail.is_zero():
            return Case1(b_y, lin)
        elif lin and tail.is_univariate_y():
            b = b_y
            s = min(j for _, j in tail.support)
            order = b.multiplicative_order()
            if order is None:
                if len(tail) == 1 and s >= 1 and lin == b**s:
                    return Case3(s, tail.coeff(0, s), b)
            elif lin == b**s and all((j - s) % order == 0 for _, j in tail.support):
                p = BiPoly._raw(F, {(0, (j - s) // order): c for (_, j), c in tail._terms.items()})
                if _monic_in_y(p):
                    return Case4(order, s, b, p)
    if check_idempotent_cube(phi):
        return Case5()
    return None


_NF_HEAD = re.compile(r"\s*case\s*([1-7])\s*(?:\{(.*)\})?\s*", re.S)
_NF_ITEM = re.compile(r'\s*(\w+)\s*=\s*(?:"([^"]*)"|([^,"]+?))\s*(?:,|$)')
_NF_KEYS = {
    1: ("a", "b"),
    2: ("b",),
    3: ("s", "a", "b"),
    4: ("r", "s", "b", "p"),
    5: (),
    6: ("lambda", "g"),
    7: ("lambda", "g"),
}
_INT_KEYS = {"r", "s"}
_POLY_KEYS = {"p", "g"}


def parse_normal_form_params(text: str) -> tuple[int, dict]:
    """Split ``case4 { r = 2, s = 1, b = "-1", p = "y+1" }`` into (4, {...})."""
    m = _NF_HEAD.fullmatch(text)
    if not m:
        raise NormalFormError(f"expected 'caseN {{ key = value, ... }}', got {text!r}")
    case, body = int(m.group(1)), (m.group(2) or "").strip()
    params, pos = {}, 0
    while pos < len(body):
        item = _NF_ITEM.match(body, pos)
        if not item or item.end() == pos:
            raise NormalFormError(f"cannot read parameters at {body[pos:]!r}")
        key = "lambda" if item.group(1) == "lam" else item.group(1)
        if key in params:
            raise NormalFormError(f"parameter {key} given twice")
        params[key] = item.group(2) if item.group(2) is not None else item.group(3)
        pos = item.end()
    allowed = _NF_KEYS[case]
    unknown = set(params) - set(allowed)
    if unknown:
        raise NormalFormError(f"case {case} takes {', '.join(allowed) or 'no parameters'}; "
                              f"unexpected {', '.join(sorted(unknown))}")
    missing = [k for k in allowed if k not in params]
    if missing:
        raise NormalFormError(f"case {case} is missing {', '.join(missing)}")
    return case, params


def parse_normal_form(text: str, field: FieldSpec) -> NormalForm:
    """Build a validated normal form from its text description."""
    case, raw = parse_normal_form_params(text)
    values = {}
    for key, val in raw.items():
        if key in _INT_KEYS:
            try:
                values[key] = int(val)
            except ValueError:
                raise NormalFormError(f"{key} must be an integer, got {val!r}") from None
        elif key in _POLY_KEYS:
            values[key] = parse_poly(val, field)
        else:
            c = parse_poly(val, field)
            if not c.is_constant():
                raise NormalFormError(f"{key} must be a constant, got {val!r}")
            values[key] = c.coeff(0, 0)
    if "lambda" in values:
        values["lam"] = values.pop("lambda")
    cls = {1: Case1, 2: Case2, 3: Case3, 4: Case4, 5: Case5, 6: Case6, 7: Case7}[case]
    return cls(**values)


def format_normal_form(nf: NormalForm) -> str:
    """Inverse of :func:`parse_normal_form`."""
    parts = []
    for key in _NF_KEYS[nf.case]:
        val = getattr(nf, "lam" if key == "lambda" else key)
        parts.append(f"{key} = {val}" if key in _INT_KEYS else f'{key} = "{val}"')
    return f"case{nf.case} {{ {', '.join(parts)} }}" if parts else f"case{nf.case}"


# -- closed forms ---------------------------------------------------------------


def delta_monomial_closed_form(m: int, n: int, nf: Case4) -> BiPoly:
    """delta(x^m y^n) for a case-4 normal form, by the binomial expansion of phi(x)^m."""
    if not isinstance(nf, Case4):
        raise NormalFormError("closed form applies to case 4 only")
    F, b, s = nf.field, nf.b, nf.s
    pr = substitute_y_power(nf.p, nf.r)
    out = BiPoly.monomial(F, m, n, 1 - b ** (m * s + n))
    pr_pow = BiPoly.one(F)
    for i in range(1, m + 1):
        pr_pow = pr_pow * pr
        coef = b ** ((m - i) * s + n) * binomial(m, i)
        out = out - pr_pow.shift(m - i, i * s + n).scale(coef)
    return out


def delta_case3_closed_form(m: int, n: int, nf: Case3) -> BiPoly:
    F, a, b, s = nf.field, nf.a, nf.b, nf.s
    out = BiPoly.monomial(F, m, n, 1 - b ** (m * s + n))
    for i in range(1, m + 1):
        coef = a**i * b ** ((m - i) * s + n) * binomial(m, i)
        out = out - BiPoly.monomial(F, m - i, i * s + n, coef)
    return out


def delta_case6_closed_form(m: int, n: int, nf: Case6) -> BiPoly:
    """delta(x^m y^n) for case 6: the monomial itself when n > 0,
    otherwise (1 - lam^m) x^m + y f_m with f_m found by expansion."""
    if not isinstance(nf, Case6):
        raise NormalFormError("closed form applies to case 6 only")
    if (m, n) == (0, 0):
        raise ValueError("delta vanishes on constants; (0, 0) is excluded")
    F = nf.field
    if n > 0:
        return BiPoly.monomial(F, m, n)
    image = BiPoly.monomial(F, m, 0) - (BiPoly.x(F) * nf.lam + BiPoly.y(F) * nf.g) ** m
    y_free = image.filter(lambda mono: mono.j == 0)
    assert y_free == BiPoly.monomial(F, m, 0, 1 - nf.lam**m), "unexpected shape of delta(x^m)"
    return image


def jacobian_determinant(phi: Endomorphism) -> BiPoly:
    fx, fy = phi.image_x, phi.image_y
    return fx.partial_x() * fy.partial_y() - fx.partial_y() * fy.partial_x()


def check_idempotent_cube(phi: Endomorphism) -> bool:
    """Whether phi^2 = phi^3, tested on the generators."""
    sq = phi.compose(phi)
    cube = phi.compose(sq)
    return sq.image_x == cube.image_x and sq.image_y == cube.image_y


# -- local finiteness -------------------------------------------------------------


@dataclass
class LFEntry:
    """Outcome of probing span{f, phi f, phi^2 f, ...}.

    ``finite`` is definitive when true; otherwise the probe hit a cutoff,
    named in ``reason``, and ``trajectory`` records the dimension after each
    iterate.
    """

    finite: bool
    dimension: Optional[int]
    trajectory: list = dc_field(default_factory=list)
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "finite" if self.finite else "inconclusive"


def local_finite_probe(
    phi: Endomorphism, f: BiPoly, max_dim: int = 50, max_iter: int = 100, max_terms: int = 64
) -> LFEntry:
    """Iterate phi on f until the iterates become dependent or a cutoff hits.

    ``max_terms`` caps the size of a single iterate; maps whose iterates
    blow up term-wise would otherwise exhaust memory long before max_dim.
    """
    if max_dim < 1 or max_iter < 1 or max_terms < 1:
        raise ValueError("max_dim, max_iter and max_terms must be at least 1")
    space = TruncatedSpace(phi.field)
    trajectory = []
    v = f
    for _ in range(max_iter):
        grew = space.insert(v)
        trajectory.append(len(space))
        if not grew:
            return LFEntry(True, len(space), trajectory)
        if len(space) > max_dim:
            return LFEntry(False, None, trajectory, f"dimension exceeded {max_dim}")
        v = phi(v)
        if len(v) > max_terms:
            return LFEntry(False, None, trajectory, f"iterate exceeded {max_terms} terms")
    return LFEntry(False, None, trajectory, f"no stabilization within {max_iter} iterates")


def local_finite_report(phi: Endomorphism, max_dim: int = 50, max_iter: int = 100) -> dict[str, LFEntry]:
    """Probe both generators; local finiteness of phi reduces to these two orbits."""
    F = phi.field
    return {
        "x": local_finite_probe(phi, BiPoly.x(F), max_dim, max_iter),
        "y": local_finite_probe(phi, BiPoly.y(F), max_dim, max_iter),
    }
