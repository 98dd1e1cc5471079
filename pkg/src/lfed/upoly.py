"""Dense univariate polynomial helpers.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). The routines are generic over
any exact field element type supporting ``+ - * /`` and truthiness, so they
serve both the rational cyclotomic moduli and polynomials in ``y`` over the
session field.
"""

from __future__ import annotations

from typing import Any, Sequence

Poly = list


def trim(p: Sequence[Any]) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence[Any]) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(trim(p)) - 1


def add(a: Sequence[Any], b: Sequence[Any]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return trim(out)


def neg(a: Sequence[Any]) -> list:
    return [-c for c in a]


def sub(a: Sequence[Any], b: Sequence[Any]) -> list:
    return add(a, neg(b))


def mul(a: Sequence[Any], b: Sequence[Any]) -> list:
    if not a or not b:
        return []
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return trim(out)


def divmod_(a: Sequence[Any], b: Sequence[Any]) -> tuple[list, list]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    lead = b[-1]
    zero = lead * 0
    q = [zero] * (len(r) - len(b) + 1)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for k, cb in enumerate(b):
            r[shift + k] = r[shift + k] - c * cb
        r.pop()
        r = trim(r)
    return trim(q), r


def monic(a: Sequence[Any]) -> list:
    a = trim(a)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def gcd(a: Sequence[Any], b: Sequence[Any]) -> list:
    """Monic greatest common divisor (``[]`` if both inputs vanish)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def xgcd(a: Sequence[Any], b: Sequence[Any], one: Any) -> tuple[list, list, list]:
    """Return ``(g, u, v)`` with ``u*a + v*b = g`` and ``g`` monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return monic(r0), [c / lead for c in s0], [c / lead for c in t0]


def derivative(a: Sequence[Any]) -> list:
    return trim([k * c for k, c in enumerate(a)][1:])


def evaluate(a: Sequence[Any], point: Any) -> Any:
    acc = point * 0
    for c in reversed(a):
        acc = acc * point + c
    return acc


def power(a: Sequence[Any], e: int, one: Any) -> list:
    result = [one]
    base = trim(a)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result
