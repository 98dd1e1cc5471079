"""Finite-window probes of the Mathieu-Zhao property.

A subspace M of A is an MZ-subspace when every f whose powers all lie in M
(the weak radical) satisfies f^m g in M for all large m, for every g. The
probes below evaluate these quantifiers on finite windows of exponents and
multipliers; a pass is evidence, a recorded violation is a counterexample
candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Optional

from .poly import BiPoly, monomials_up_to
from .quotient import CRTComponent
from .subspace import CPlusIdeal, MonomialPattern, support_membership


@dataclass(frozen=True)
class MembershipOracle:
    """A named membership predicate for a subspace M.

    ``reduce``, when given, is a ring normal form whose kernel lies inside M;
    probes use it to keep powers small without changing any verdict.
    """

    name: str
    contains: Callable[[BiPoly], bool]
    reduce: Optional[Callable[[BiPoly], BiPoly]] = None
    c_plus: Optional[CPlusIdeal] = None

    def __call__(self, f: BiPoly) -> bool:
        return self.contains(f)

    def normal(self, f: BiPoly) -> BiPoly:
        return self.reduce(f) if self.reduce else f

    @classmethod
    def c_plus_ideal(cls, r: int, s: int, p: BiPoly) -> "MembershipOracle":
        return cls.from_c_plus(CPlusIdeal(r, s, p))

    @classmethod
    def from_c_plus(cls, oracle: CPlusIdeal) -> "MembershipOracle":
        return cls(repr(oracle), oracle.contains, oracle.reduce, oracle)

    @classmethod
    def from_pattern(cls, pattern: MonomialPattern, name: Optional[str] = None) -> "MembershipOracle":
        return cls(name or f"span<{pattern.kind}>", lambda f: support_membership(f, pattern))


def project_oracle(oracle: MembershipOracle, component: CRTComponent) -> MembershipOracle:
    """Oracle for pi(M) inside the factor A_i = K[x, y]/<h_i>.

    For M = C + <h> with h_i dividing h, pi(M) corresponds to C + <h_i>.
    """
    if oracle.c_plus is None:
        raise ValueError("projection is only available for C + <h> oracles")
    return MembershipOracle.from_c_plus(oracle.c_plus.with_modulus(component.modulus))


def first_power_outside(f: BiPoly, M: MembershipOracle, N: int) -> Optional[int]:
    """Least m in 1..N with f^m not in M, or None."""
    if N < 1:
        raise ValueError("N must be at least 1")
    base = M.normal(f)
    acc = base
    for m in range(1, N + 1):
        if m > 1:
            acc = M.normal(acc * base)
        if not M(acc):
            return m
    return None


def weak_radical_probe(f: BiPoly, M: MembershipOracle, N: int) -> bool:
    """Whether f^m lies in M for every 1 <= m <= N."""
    return first_power_outside(f, M, N) is None


@dataclass
class TransferViolation:
    sample: str
    failing_power: int


@dataclass
class TransferReport:
    component: str
    samples: int
    in_weak_radical: int
    violations: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def wr_transfer_check(
    samples: Iterable[BiPoly], M: MembershipOracle, component: CRTComponent, N: int
) -> TransferReport:
    """Every sample in the weak-radical window of M must project into the
    weak-radical window of pi(M) with the same N."""
    image = project_oracle(M, component)
    report = TransferReport(component.label, 0, 0)
    for f in samples:
        report.samples += 1
        if not weak_radical_probe(f, M, N):
            continue
        report.in_weak_radical += 1
        bad = first_power_outside(component.project(f), image, N)
        if bad is not None:
            report.violations.append(TransferViolation(str(f), bad))
    return report


class ProbePreconditionError(ValueError):
    """The probed element is not in the weak-radical window."""


@dataclass
class MultiplierResult:
    """``threshold`` is the least n with f^m g in M for n < m <= hi."""

    g: str
    threshold: int
    failing: list
    hi: int

    @property
    def violation(self) -> bool:
        return self.threshold >= self.hi


@dataclass
class MZReport:
    f: str
    oracle: str
    m_range: tuple
    gen_deg: int
    multipliers: list = dc_field(default_factory=list)

    @property
    def violations(self) -> list:
        return [r for r in self.multipliers if r.violation]

    @property
    def passed(self) -> bool:
        return not self.violations


def mz_falsifier_probe(f: BiPoly, M: MembershipOracle, gen_deg: int, m_range: tuple = (1, 12)) -> MZReport:
    """For each monomial g of degree <= gen_deg find the least n >= lo - 1
    with f^m g in M for all n < m <= hi. A multiplier that still fails at
    m = hi is reported as a candidate violation."""
    lo, hi = m_range
    if not 1 <= lo <= hi:
        raise ValueError(f"bad exponent range {m_range}")
    bad = first_power_outside(f, M, hi)
    if bad is not None:
        raise ProbePreconditionError(f"f^{bad} is not in {M.name}; f is outside the weak-radical window")
    F = f.field
    report = MZReport(str(f), M.name, (lo, hi), gen_deg)
    base = M.normal(f)
    powers = [None, base]
    for _ in range(2, hi + 1):
        powers.append(M.normal(powers[-1] * base))
    for mono in monomials_up_to(gen_deg):
        g = BiPoly.monomial(F, *mono)
        failing = [m for m in range(lo, hi + 1) if not M(M.normal(powers[m] * g))]
        threshold = max(failing) if failing else lo - 1
        report.multipliers.append(MultiplierResult(str(g), threshold, failing, hi))
    return report
