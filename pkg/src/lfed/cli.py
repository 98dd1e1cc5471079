"""Command-line front end: ``lfed <command> [options]``.

Every command builds a JSON report (schema ``lfed.report/v1``); ``--text``
prints a summary derived from that JSON instead. Exit codes: 0 all checks
pass, 1 a check failed, 2 usage or parse error, 3 only inconclusive checks
kept the run from passing.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import asdict, dataclass, fields
from typing import Optional

from .endo import (
    Case4, EDerivation, NormalFormError, apply_delta, build_normal_form,
    delta_monomial_closed_form, format_normal_form, jacobian_determinant, local_finite_report,
    parse_endomorphism, parse_normal_form, parse_normal_form_params,
    recognize_normal_form,
)
from .field import FieldMismatch, FieldSpec
from .mz import MembershipOracle, ProbePreconditionError, first_power_outside, mz_falsifier_probe
from .newton import minkowski_sum, polygon_of, vertex_power_check
from .parse import PolySyntaxError, parse_poly
from .poly import BiPoly
from .quotient import idempotent_search_cprime, is_nilpotent_in_quotient, nilpotent_by_powers
from .report import FAIL, INCONCLUSIVE, PASS, Check, CheckReport, render_text, verdict
from .sampling import random_nonzero_poly
from .subspace import CPlusIdeal, PreimageError
from .suites import Bounds, case4_image_report, lf_checks, verify_case

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class UsageError(Exception):
    """Bad invocation or configuration; maps to exit code 2."""


@dataclass(frozen=True)
class SessionConfig:
    field: Optional[int] = None
    D: int = 8
    margin: int = 6
    max_dim: int = 50
    max_iter: int = 100
    N: int = 12
    m_range: tuple = (1, 12)
    gen_deg: int = 3
    seed: int = 0
    samples: int = 12
    trials: int = 100
    max_power: int = 5
    out: Optional[str] = None

    def bounds(self) -> Bounds:
        return Bounds(self.D, self.margin, self.max_dim, self.max_iter, self.N,
                      tuple(self.m_range), self.gen_deg, self.seed, self.samples)

    def validate(self) -> "SessionConfig":
        for name in ("trials", "max_power"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        try:
            self.bounds()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if self.field is not None and self.field < 1:
            raise UsageError("field conductor must be positive")
        return self

    def echo(self, field: FieldSpec) -> dict:
        out = asdict(self)
        out.pop("out")
        out["field"] = str(field)
        out["m_range"] = list(self.m_range)
        return out


CONFIG_KEYS = {f.name for f in fields(SessionConfig)}


def parse_field(value) -> int:
    """Accept a conductor (3), ``"Q"`` or ``"Q(zeta_3)"``."""
    if isinstance(value, int):
        return value
    text = str(value).strip()
    if text == "Q":
        return 1
    m = re.fullmatch(r"Q\(zeta_?(\d+)\)", text)
    if m:
        return int(m.group(1))
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"cannot read field {value!r}; use a conductor, 'Q' or 'Q(zeta_r)'") from None


def parse_m_range(value) -> tuple:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return int(value[0]), int(value[1])
    m = re.fullmatch(r"\s*(\d+)\s*[,:]\s*(\d+)\s*", str(value))
    if not m:
        raise UsageError(f"m-range must look like '1,12', got {value!r}")
    return int(m.group(1)), int(m.group(2))


def load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"bad config {path}: {exc}") from None
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def session_config(args: argparse.Namespace) -> SessionConfig:
    """Defaults, then the config file, then flags."""
    values = load_config(getattr(args, "config", None))
    for key in CONFIG_KEYS:
        if hasattr(args, key):
            values[key] = getattr(args, key)
    if "field" in values:
        values["field"] = parse_field(values["field"])
    if "m_range" in values:
        values["m_range"] = parse_m_range(values["m_range"])
    for key, val in values.items():
        if key not in ("field", "m_range", "out") and not isinstance(val, int):
            raise UsageError(f"{key} must be an integer, got {val!r}")
    return SessionConfig(**values).validate()


# -- argument parsing ---------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    g = p.add_argument_group("session")
    g.add_argument("--config", help="TOML file with session keys; flags override it")
    g.add_argument("--field", default=S, help="conductor r for Q(zeta_r), or 'Q'")
    g.add_argument("--D", dest="D", type=int, default=S, help="degree bound (default 8)")
    g.add_argument("--margin", type=int, default=S, help="extra generator degree (default 6)")
    g.add_argument("--max-dim", dest="max_dim", type=int, default=S)
    g.add_argument("--max-iter", dest="max_iter", type=int, default=S)
    g.add_argument("--N", dest="N", type=int, default=S, help="weak-radical power window")
    g.add_argument("--m-range", dest="m_range", default=S, help="exponent range lo,hi")
    g.add_argument("--gen-deg", dest="gen_deg", type=int, default=S)
    g.add_argument("--seed", type=int, default=S)
    g.add_argument("--samples", type=int, default=S)
    g.add_argument("--trials", type=int, default=S)
    g.add_argument("--max-power", dest="max_power", type=int, default=S)
    g.add_argument("--out", default=S, help="write the JSON report here")
    g.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null")
    g.add_argument("--text", action="store_true", help="print a text summary instead of JSON")
    return p


PROBES = ("lf", "wr", "mz", "idempotent", "nilpotent", "newton")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="lfed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", parents=[common], help="apply delta = id - phi to a polynomial")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--nf", help='normal form, e.g. case4 { r = 2, s = 1, b = "-1", p = "y+1" }')
    src.add_argument("--endo", help='raw images, e.g. "x -> x + y, y -> y"')
    p.add_argument("f", help="polynomial text")

    p = sub.add_parser("verify", parents=[common], help="run a per-case verification suite")
    p.add_argument("--case", type=int, required=True, choices=range(1, 8), metavar="N")
    p.add_argument("--nf", help="override the representative normal form")
    p.add_argument("--endo", help="map to test for case 5")

    p = sub.add_parser("probe", parents=[common], help="run one probe")
    p.add_argument("kind", choices=PROBES)
    p.add_argument("--nf")
    p.add_argument("--endo")
    p.add_argument("--f", help="element to probe")
    p.add_argument("--h", help="modulus in y for the nilpotency probe")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--p", help="polynomial p(y) of C + <y^s p(y^r)>")

    p = sub.add_parser("image-check", parents=[common], help="check Im delta = C + <y^s p(y^r)>")
    p.add_argument("--nf", required=True)

    p = sub.add_parser("classify", parents=[common], help="match a map against the normal forms")
    p.add_argument("--endo", required=True)
    return parser


# -- helpers ---------------------------------------------------------------------------


def infer_field(cfg: SessionConfig, args: argparse.Namespace) -> FieldSpec:
    """Explicit field wins; otherwise Q(zeta_r) when an r > 2 is in play."""
    if cfg.field is not None:
        return FieldSpec(cfg.field)
    r = getattr(args, "r", None)
    nf_text = getattr(args, "nf", None)
    if nf_text:
        case, params = parse_normal_form_params(nf_text)
        if case == 4 and params["r"].strip().isdigit():
            r = int(params["r"])
    return FieldSpec(r if r and r > 2 else 1)


def _endo_from(args, field: FieldSpec, required: bool = True):
    if getattr(args, "nf", None):
        nf = parse_normal_form(args.nf, field)
        return nf, build_normal_form(nf)
    if getattr(args, "endo", None):
        return None, parse_endomorphism(args.endo, field)
    if required:
        raise UsageError("give --nf or --endo")
    return None, None


def _oracle_from(args, field: FieldSpec) -> MembershipOracle:
    if args.nf:
        nf = parse_normal_form(args.nf, field)
        if not isinstance(nf, Case4):
            raise UsageError("the subspace C + <y^s p(y^r)> comes from a case-4 normal form")
        return MembershipOracle.c_plus_ideal(nf.r, nf.s, nf.p)
    if args.r is None or args.s is None or args.p is None:
        raise UsageError("give --nf or all of --r, --s, --p")
    return MembershipOracle.from_c_plus(CPlusIdeal(args.r, args.s, parse_poly(args.p, field)))


def _require(args, name: str) -> str:
    value = getattr(args, name, None)
    if value is None:
        raise UsageError(f"--{name} is required for this command")
    return value


# -- commands --------------------------------------------------------------------------


def cmd_delta(args, cfg: SessionConfig, field: FieldSpec) -> CheckReport:
    nf, phi = _endo_from(args, field)
    f = parse_poly(args.f, field)
    d = apply_delta(EDerivation(phi), f)
    report = CheckReport()
    report.add(Check("delta", PASS, f"delta({f}) = {d}", str(d)))
    if isinstance(nf, Case4):
        closed = BiPoly.zero(field)
        for (m, n), c in f.items():
            closed = closed + delta_monomial_closed_form(m, n, nf).scale(c)
        report.add(Check("closed-form", verdict(closed == d), f"closed form gives {closed}", str(closed)))
    return report


def cmd_verify(args, cfg: SessionConfig, field: FieldSpec) -> CheckReport:
    nf = parse_normal_form(args.nf, field) if args.nf else None
    phi = None
    if args.endo:
        if args.case != 5:
            raise UsageError("--endo is only used by the case 5 suite")
        phi = parse_endomorphism(args.endo, field)
    return verify_case(args.case, nf, cfg.bounds(), field, phi)


def cmd_image_check(args, cfg: SessionConfig, field: FieldSpec) -> CheckReport:
    nf = parse_normal_form(args.nf, field)
    if not isinstance(nf, Case4):
        raise UsageError("image-check applies to case-4 normal forms")
    return case4_image_report(nf, cfg.bounds())


def cmd_classify(args, cfg: SessionConfig, field: FieldSpec) -> CheckReport:
    phi = parse_endomorphism(args.endo, field)
    report = CheckReport()
    nf = recognize_normal_form(phi)
    if nf is None:
        report.add(Check("normal-form", INCONCLUSIVE, f"{phi} matches no normal-form shape"))
    else:
        report.add(Check("normal-form", PASS, format_normal_form(nf)))
    jac = jacobian_determinant(phi)
    report.add(Check("jacobian", PASS, f"det J = {jac}", str(jac)))
    report.extend(lf_checks(phi, cfg.bounds()))
    return report


def probe_lf(args, cfg, field) -> CheckReport:
    _, phi = _endo_from(args, field)
    report = CheckReport()
    for name, e in local_finite_report(phi, cfg.max_dim, cfg.max_iter).items():
        status = PASS if e.finite else INCONCLUSIVE
        what = f"finite, dimension {e.dimension}" if e.finite else f"cutoff: {e.reason}"
        report.add(Check(f"lf:{name}", status, f"{what}; trajectory {e.trajectory}"))
    return report


def probe_wr(args, cfg, field) -> CheckReport:
    M = _oracle_from(args, field)
    f = parse_poly(_require(args, "f"), field)
    bad = first_power_outside(f, M, cfg.N)
    report = CheckReport()
    if bad is None:
        report.add(Check("wr", PASS, f"f^m in {M.name} for 1 <= m <= {cfg.N}", str(f)))
    else:
        report.add(Check("wr", FAIL, f"f^{bad} not in {M.name}", str(f)))
    return report


def probe_mz(args, cfg, field) -> CheckReport:
    M = _oracle_from(args, field)
    f = parse_poly(_require(args, "f"), field)
    report = CheckReport()
    try:
        res = mz_falsifier_probe(f, M, cfg.gen_deg, tuple(cfg.m_range))
    except ProbePreconditionError as exc:
        report.add(Check("mz", INCONCLUSIVE, str(exc), str(f)))
        return report
    thresholds = {r.g: r.threshold for r in res.multipliers}
    if res.passed:
        report.add(Check("mz", PASS, f"thresholds {thresholds}", str(f)))
    else:
        gs = ", ".join(r.g for r in res.violations)
        report.add(Check("mz", FAIL, f"persistent failures for {gs}", res.violations[0].g))
    return report


def probe_idempotent(args, cfg, field) -> CheckReport:
    r = _require(args, "r")
    if r < 1:
        raise UsageError("r must be positive")
    if cfg.field is None:
        field = FieldSpec(r if r > 2 else 1)
    res = idempotent_search_cprime(r, field)
    found = "{" + ", ".join(str(BiPoly.from_y_coeffs(field, b)) for b in res.survivors) + "}"
    report = CheckReport()
    report.add(Check("idempotent", verdict(res.only_zero),
                     f"{found}; {res.candidates} candidates over {field}"))
    return report


def probe_nilpotent(args, cfg, field) -> CheckReport:
    f = parse_poly(_require(args, "f"), field)
    h = parse_poly(_require(args, "h"), field)
    fast = is_nilpotent_in_quotient(f, h)
    slow = nilpotent_by_powers(f, h)
    word = "nilpotent" if fast else "not nilpotent"
    report = CheckReport()
    report.add(Check("nilpotent", verdict(fast == slow),
                     f"{word} modulo {h}; squarefree criterion and power iteration "
                     + ("agree" if fast == slow else "disagree"), str(f)))
    return report


def probe_newton(args, cfg, field) -> CheckReport:
    rng = random.Random(cfg.seed)
    bad_sum = bad_power = None
    for _ in range(cfg.trials):
        f = random_nonzero_poly(rng, field, max_deg=4, max_terms=5)
        g = random_nonzero_poly(rng, field, max_deg=4, max_terms=5)
        if bad_sum is None and polygon_of(f * g) != minkowski_sum(polygon_of(f), polygon_of(g)):
            bad_sum = f"({f})*({g})"
        for m in range(1, cfg.max_power + 1):
            if bad_power is None and not vertex_power_check(f, m).passed:
                bad_power = str(f)
    report = CheckReport()
    report.add(Check("newton:minkowski", verdict(bad_sum is None),
                     f"Pol(fg) = Pol(f) + Pol(g) on {cfg.trials} seeded pairs", bad_sum))
    report.add(Check("newton:vertex-power", verdict(bad_power is None),
                     f"vertex powers in Sup(f^m) for m <= {cfg.max_power}", bad_power))
    return report


PROBE_COMMANDS = {
    "lf": probe_lf,
    "wr": probe_wr,
    "mz": probe_mz,
    "idempotent": probe_idempotent,
    "nilpotent": probe_nilpotent,
    "newton": probe_newton,
}


def cmd_probe(args, cfg, field) -> CheckReport:
    return PROBE_COMMANDS[args.kind](args, cfg, field)


COMMANDS = {
    "delta": cmd_delta,
    "verify": cmd_verify,
    "probe": cmd_probe,
    "image-check": cmd_image_check,
    "classify": cmd_classify,
}


@dataclass
class RunResult:
    code: int
    report: str
    config: SessionConfig
    text: bool


def run(argv: list[str]) -> RunResult:
    """Execute a command line and build its JSON report."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    cfg = session_config(args)
    field = infer_field(cfg, args)
    report = COMMANDS[args.command](args, cfg, field)
    elapsed = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
    doc = report.to_json(["lfed", *argv], cfg.echo(field), elapsed)
    return RunResult(report.exit_code(), doc, cfg, args.text)


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        res = run(argv)
    except PolySyntaxError as exc:
        print(f"lfed: syntax error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, NormalFormError, FieldMismatch, PreimageError, ValueError) as exc:
        print(f"lfed: error: {exc}", file=sys.stderr)
        return 2
    if res.config.out:
        try:
            with open(res.config.out, "w", encoding="utf-8") as fh:
                fh.write(res.report + "\n")
        except OSError as exc:
            print(f"lfed: error: cannot write {res.config.out}: {exc.strerror}", file=sys.stderr)
            return 2
    if res.text:
        print(render_text(json.loads(res.report)))
    elif not res.config.out:
        print(res.report)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
