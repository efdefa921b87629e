"""Uniqueness polynomials, unique-range-set gates and Nevanlinna numerics."""

__version__ = "0.1.0"

from .certificate import CERTIFIED, NOT_APPLICABLE, NOT_CERTIFIED, NUMERIC_ONLY, Certificate, Condition
from .certify import (certify_all, check_property_H, check_strong_uniqueness, check_uniqueness_fujimoto,
                      critical_profile, distinct_zero_count)
from .config import DEFAULTS, TOL_ENV_VAR, Config
from .families import FAMILY_IDS, FamilySpec, build_family, psi_check, sum_identity_S
from .gates import GATE_IDS, check_urs_gate
from .gaussian import GaussianRational
from .identities import check_rational_identity, share_values
from .models import parse_model
from .nevanlinna import (characteristic, check_cartan, check_first_fundamental, check_jensen, counting,
                         estimate_order, geometric_radii, proximity)
from .parser import parse_expression, parse_polynomial, render_polynomial
from .poly import Polynomial, discriminant, gcd_monic, resultant, squarefree_decomposition
from .ratfunc import RationalFunction

__all__ = [
    "__version__",
    "CERTIFIED",
    "NOT_APPLICABLE",
    "NOT_CERTIFIED",
    "NUMERIC_ONLY",
    "Certificate",
    "Condition",
    "certify_all",
    "check_property_H",
    "check_strong_uniqueness",
    "check_uniqueness_fujimoto",
    "critical_profile",
    "distinct_zero_count",
    "DEFAULTS",
    "TOL_ENV_VAR",
    "Config",
    "FAMILY_IDS",
    "FamilySpec",
    "build_family",
    "psi_check",
    "sum_identity_S",
    "GATE_IDS",
    "check_urs_gate",
    "GaussianRational",
    "check_rational_identity",
    "share_values",
    "parse_model",
    "characteristic",
    "check_cartan",
    "check_first_fundamental",
    "check_jensen",
    "counting",
    "estimate_order",
    "geometric_radii",
    "proximity",
    "parse_expression",
    "parse_polynomial",
    "render_polynomial",
    "Polynomial",
    "discriminant",
    "gcd_monic",
    "resultant",
    "squarefree_decomposition",
    "RationalFunction",
]
