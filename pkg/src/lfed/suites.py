"""Desk-scale verification suites, one per normal-form case.

Each suite returns a :class:`CheckReport`; the command line only serializes
it. Windows are finite, so a pass is evidence within the stated bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .endo import (
    Case1, Case2, Case3, Case4, Case5, Case6, Case7,
    EDerivation, Endomorphism, NormalForm, apply_delta, build_normal_form,
    check_idempotent_cube, delta_monomial_closed_form, format_normal_form, local_finite_report,
    recognize_normal_form,
)
from .field import FieldSpec
from .mz import (
    MembershipOracle, first_power_outside,
    mz_falsifier_probe, wr_transfer_check,
)
from .poly import BiPoly, monomials_up_to
from .quotient import crt_decompose, split_linear
from .report import FAIL, INCONCLUSIVE, PASS, Check, CheckReport, verdict
from .sampling import random_poly
from .subspace import (
    MonomialPattern, eta_window, expected_image_for_case, expected_image_pattern,
    generator_monomials, monomial_map, support_membership, truncated_image,
    verify_image_identity,
)
from .linalg import TruncatedSpace


@dataclass(frozen=True)
class Bounds:
    """Window sizes shared by the suites and probes."""

    D: int = 8
    margin: int = 6
    max_dim: int = 50
    max_iter: int = 100
    N: int = 12
    m_range: tuple = (1, 12)
    gen_deg: int = 3
    seed: int = 0
    samples: int = 12

    def __post_init__(self):
        for name in ("D", "margin", "max_dim", "max_iter", "N", "gen_deg", "samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        lo, hi = self.m_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad exponent range {self.m_range}")


def default_normal_form(case: int, field: FieldSpec) -> NormalForm:
    """Representative parameters used when a suite is run without overrides."""
    F = field
    y = BiPoly.y(F)
    x = BiPoly.x(F)
    if case == 1:
        return Case1(F(2), F(-1))
    if case == 2:
        return Case2(F(5))
    if case == 3:
        return Case3(1, F(1), F(2))
    if case == 4:
        return Case4(2, 1, F(-1), y + 1)
    if case == 5:
        return Case5()
    if case == 6:
        return Case6(F(-1), x)
    if case == 7:
        return Case7(F(2), x)
    raise ValueError(f"case must be in 1..7, got {case}")


def default_case5_map(field: FieldSpec) -> Endomorphism:
    y = BiPoly.y(field)
    return Endomorphism(y, y)


# -- shared pieces --------------------------------------------------------------------


def lf_checks(phi: Endomorphism, bounds: Bounds) -> CheckReport:
    report = CheckReport()
    for name, entry in local_finite_report(phi, bounds.max_dim, bounds.max_iter).items():
        if entry.finite:
            report.add(Check(f"lf:{name}", PASS, f"orbit spans dimension {entry.dimension}"))
        else:
            report.add(Check(f"lf:{name}", INCONCLUSIVE,
                             f"cutoff: {entry.reason}; dimensions {entry.trajectory}"))
    return report


def _recognize_check(phi: Endomorphism, nf: NormalForm) -> Check:
    back = recognize_normal_form(phi)
    ok = back == nf
    return Check("recognize", verdict(ok), f"recognized as {format_normal_form(back) if back else 'nothing'}")


def explicit_preimage_check(delta: EDerivation, preimage: BiPoly, target: BiPoly, cid: str) -> Check:
    got = apply_delta(delta, preimage)
    ok = got == target
    detail = f"delta({preimage}) = {got}"
    return Check(cid, verdict(ok), detail, str(preimage))


def window_checks(delta: EDerivation, pattern: MonomialPattern, D: int, d_in: int,
                  x_weight: int = 1) -> CheckReport:
    """Both inclusions of Im delta against a monomial pattern.

    Soundness: every generator image in the window is supported on the
    pattern. Completeness: every pattern monomial of degree <= D lies in the
    span of those generator images.
    """
    report = CheckReport()
    image = monomial_map(delta)
    F = delta.field
    bad = None
    space = TruncatedSpace(F)
    for gen in generator_monomials(d_in, x_weight):
        v = image(gen)
        if bad is None and not support_membership(v, pattern):
            bad = (gen, v)
        space.insert(v)
    report.add(Check(
        "image-in-pattern", verdict(bad is None),
        f"generator images with weighted degree <= {d_in} lie in span<{pattern.kind}>"
        if bad is None else f"delta({bad[0]}) leaves the pattern",
        None if bad is None else str(bad[1]),
    ))
    missing = next((m for m in pattern.monomials(D) if not space.contains(BiPoly.monomial(F, *m))), None)
    report.add(Check(
        "pattern-in-image", verdict(missing is None),
        f"pattern monomials of degree <= {D} reached (window dim {len(space)})"
        if missing is None else f"{missing} not reached",
        None if missing is None else str(BiPoly.monomial(F, *missing)),
    ))
    return report


# -- case 4 -------------------------------------------------------------------------


def closed_form_checks(nf: Case4, D: int) -> Check:
    delta = EDerivation(build_normal_form(nf))
    F = nf.field
    for m, n in monomials_up_to(D):
        direct = apply_delta(delta, BiPoly.monomial(F, m, n))
        closed = delta_monomial_closed_form(m, n, nf)
        if direct != closed:
            return Check("closed-form", FAIL, f"disagreement at x^{m}*y^{n}", str(direct - closed))
    return Check("closed-form", PASS, f"closed form equals delta on all m+n <= {D}")


def mz_sample(nf: Case4, count: int, seed: int) -> list[BiPoly]:
    """Seeded elements: random ones, ideal multiples, and C-plus-ideal sums."""
    rng = random.Random(seed)
    F = nf.field
    h = nf.modulus
    out = [h, BiPoly.y(F) * h]
    while len(out) < count:
        kind = rng.randrange(3)
        g = random_poly(rng, F, max_deg=2, max_terms=3, bound=3)
        if kind == 0:
            out.append(g)
        elif kind == 1:
            out.append(g * h)
        else:
            c = BiPoly(F, {m: F(1) for m in MonomialPattern.C(nf.r, nf.s).monomials(2)[:1]})
            out.append(c + g * h)
    return out


def mz_checks(nf: Case4, bounds: Bounds) -> CheckReport:
    report = CheckReport()
    M = MembershipOracle.c_plus_ideal(nf.r, nf.s, nf.p)
    samples = mz_sample(nf, bounds.samples, bounds.seed)
    in_wr = 0
    violations = []
    for f in samples:
        if first_power_outside(f, M, bounds.N) is not None:
            continue
        in_wr += 1
        res = mz_falsifier_probe(f, M, bounds.gen_deg, bounds.m_range)
        violations.extend((str(f), v.g) for v in res.violations)
    if violations:
        f, g = violations[0]
        report.add(Check("mz-falsifier", FAIL, f"persistent failure for multiplier {g}", f))
    else:
        report.add(Check("mz-falsifier", PASS,
                         f"{in_wr}/{len(samples)} samples in the weak-radical window; no persistent violations"))

    factors = split_linear(nf.p)
    if factors is None or any(not a for a, _ in factors):
        report.add(Check("wr-transfer", INCONCLUSIVE, f"p = {nf.p} does not split over {nf.field}"))
        return report
    dec = crt_decompose(nf.s, factors, nf.r, nf.p)
    for comp in dec.components:
        tr = wr_transfer_check(samples, M, comp, bounds.N)
        if tr.passed:
            report.add(Check(f"wr-transfer:{comp.label}", PASS,
                             f"{tr.in_weak_radical} window elements project into the window"))
        else:
            v = tr.violations[0]
            report.add(Check(f"wr-transfer:{comp.label}", FAIL,
                             f"projection leaves the window at power {v.failing_power}", v.sample))
    return report


def case4_image_report(nf: Case4, bounds: Bounds) -> CheckReport:
    report = CheckReport()
    report.extend(verify_image_identity(nf, bounds.D, bounds.margin))
    eta = eta_window(nf, bounds.D)
    bad = next((c for c in eta.checks if not c.passed), None)
    report.add(Check(
        "eta-B1", verdict(bad is None),
        f"{len(eta.checks)} B1-monomials divide with quotient in B1" if bad is None else f"{bad.id} failed",
        None if bad is None else bad.witness,
    ))
    return report


# -- per-case suites ------------------------------------------------------------------


def verify_case(case: int, nf: Optional[NormalForm], bounds: Bounds, field: FieldSpec,
                phi: Optional[Endomorphism] = None) -> CheckReport:
    """Run the verification suite for ``case``; ``nf`` defaults to a representative."""
    if nf is None and not (case == 5 and phi is not None):
        nf = default_normal_form(case, field)
    if nf is not None and nf.case != case:
        raise ValueError(f"normal form is case {nf.case}, suite is case {case}")
    report = CheckReport()
    prefix = f"case{case}:"

    if case == 5:
        phi = phi or default_case5_map(field)
        ok = check_idempotent_cube(phi)
        report.add(Check(prefix + "idempotent-cube", verdict(ok), f"phi^2 = phi^3 for {phi}"))
        return report

    phi = build_normal_form(nf)
    delta = EDerivation(phi)
    F = nf.field
    one = BiPoly.one(F)
    x, y = BiPoly.x(F), BiPoly.y(F)
    sub = CheckReport()
    sub.extend(lf_checks(phi, bounds))
    sub.add(_recognize_check(phi, nf))

    if case == 1:
        got = truncated_image(delta, bounds.D, bounds.D)
        want = expected_image_for_case(nf, bounds.D)
        sub.add(Check("image-diagonal", verdict(got.equals(want)),
                      f"truncated image (dim {len(got)}) vs diagonal pattern (dim {len(want)})"))
    elif case == 2:
        sub.add(explicit_preimage_check(delta, -y, one, "one-in-image"))
    elif case == 3:
        sub.extend(window_checks(delta, expected_image_pattern(nf, bounds.D), bounds.D,
                                 nf.s * bounds.D + bounds.margin, x_weight=nf.s))
    elif case == 4:
        sub.add(closed_form_checks(nf, bounds.D))
        sub.extend(case4_image_report(nf, bounds))
        sub.extend(mz_checks(nf, bounds))
    elif case == 6:
        spread = max(1, phi.image_x.degree)
        sub.extend(window_checks(delta, expected_image_pattern(nf, bounds.D), bounds.D,
                                 spread * bounds.D + bounds.margin))
    elif case == 7:
        pre = (x + y * nf.g).scale(-nf.lam.inverse())
        sub.add(explicit_preimage_check(delta, pre, one, "one-in-image"))
    report.extend(sub, prefix)
    return report
