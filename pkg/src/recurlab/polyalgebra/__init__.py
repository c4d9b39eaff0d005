"""Integer polynomials, exact real-root isolation and the phi_k equation families."""

from .equidist import FracReport, power_frac_probe, star_discrepancy
from .logcat import (
    LogAtom,
    LogDomainError,
    LogExpr,
    eval_log_expr,
    log_catalog,
    log_ratio,
    verify_log_catalog,
    verify_root_claims,
)
from .poly import IntPolynomial, parse_poly
from .psi import (
    PhiConstant,
    PrecisionError,
    SilverMean,
    build_psi,
    minimal_polynomial,
    phi,
    phi_constant,
    phi_polynomial,
    psi_derivative_gaps,
    psi_real_roots,
    sigma_gap_ratios,
    verify_root_membership,
)
from .radicals import cycle_graph_eigen_check, nested_power_tower, odd_silver_nested_radical
from .roots import NoSignChange, dominant_root, isolate_real_roots, real_roots, sturm_real_root_count

__all__ = [
    "FracReport", "power_frac_probe", "star_discrepancy",
    "LogAtom", "LogDomainError", "LogExpr", "eval_log_expr", "log_catalog", "log_ratio",
    "verify_log_catalog", "verify_root_claims",
    "IntPolynomial", "parse_poly",
    "PhiConstant", "PrecisionError", "SilverMean", "build_psi", "minimal_polynomial", "phi",
    "phi_constant", "phi_polynomial", "psi_derivative_gaps", "psi_real_roots", "sigma_gap_ratios",
    "verify_root_membership",
    "cycle_graph_eigen_check", "nested_power_tower", "odd_silver_nested_radical",
    "NoSignChange", "dominant_root", "isolate_real_roots", "real_roots", "sturm_real_root_count",
]
