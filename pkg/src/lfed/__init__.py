"""Exact computations with E-derivations of K[x, y] and Mathieu-Zhao probes."""

from .endo import (
    Case1, Case2, Case3, Case4, Case5, Case6, Case7,
    EDerivation, Endomorphism, NormalFormError,
    apply_delta, apply_endo, build_normal_form, check_idempotent_cube,
    delta_monomial_closed_form, local_finite_probe, local_finite_report,
    parse_endomorphism, parse_normal_form, recognize_normal_form,
)
from .field import Coeff, FieldMismatch, FieldSpec
from .mz import MembershipOracle, mz_falsifier_probe, weak_radical_probe, wr_transfer_check
from .newton import NewtonPolygon, minkowski_sum, polygon_of, vertex_power_check
from .parse import PolySyntaxError, parse_poly
from .poly import BiPoly, Monomial, format_poly
from .quotient import (
    PrincipalQuotient, crt_decompose, forward_dft, idempotent_search_cprime,
    inverse_dft, is_nilpotent_in_quotient,
)
from .subspace import (
    CPlusIdeal, MonomialPattern, membership_c_plus_ideal, triangular_preimage_solve,
    truncated_image, verify_image_identity,
)

__version__ = "0.1.0"

__all__ = [
    "apply_delta",
    "apply_endo",
    "BiPoly",
    "build_normal_form",
    "Case1",
    "Case2",
    "Case3",
    "Case4",
    "Case5",
    "Case6",
    "Case7",
    "check_idempotent_cube",
    "Coeff",
    "CPlusIdeal",
    "crt_decompose",
    "delta_monomial_closed_form",
    "EDerivation",
    "Endomorphism",
    "FieldMismatch",
    "FieldSpec",
    "format_poly",
    "forward_dft",
    "idempotent_search_cprime",
    "inverse_dft",
    "is_nilpotent_in_quotient",
    "local_finite_probe",
    "local_finite_report",
    "membership_c_plus_ideal",
    "MembershipOracle",
    "minkowski_sum",
    "Monomial",
    "MonomialPattern",
    "mz_falsifier_probe",
    "NewtonPolygon",
    "NormalFormError",
    "parse_endomorphism",
    "parse_normal_form",
    "parse_poly",
    "polygon_of",
    "PolySyntaxError",
    "PrincipalQuotient",
    "recognize_normal_form",
    "triangular_preimage_solve",
    "truncated_image",
    "verify_image_identity",
    "vertex_power_check",
    "weak_radical_probe",
    "wr_transfer_check",
]
