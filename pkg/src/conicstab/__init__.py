"""Falsifiers and exact tools for stability of polynomials on cones and on the psd cone."""

__version__ = "0.1.0"

from .polycore import (Polynomial, evaluate, partial_derivative, directional_derivative,
                       affine_substitute, univariate_restriction, initial_form, support)
from .symmat import (SymVarSpace, symbolic_determinant, symbolic_adjugate, block_determinant,
                     inversion_image, frobenius_initial_form, hadamard_scale, diag_restriction,
                     minor_restriction, congruence_transform, permute_indices,
                     matrix_directional_derivative, eval_at_matrix)
from .stabcheck import (ConeSpec, StabilityVerdict, check_stability, check_cone_stability,
                        check_psd_stability, verify_witness, interior_certificate)
from .preservers import PreserverSpec, PreconditionError, apply, audit, license
from .combinat import (is_jump_system, classify_stable_binomial, classify_psd_binomial,
                       structure_check, non_mixed_analysis, DetBlockSpec, det_support_analysis,
                       conjecture_search, validate_path, lpm_build)
from .textio import Space, parse_polynomial, format_polynomial

__all__ = [name for name in dir() if not name.startswith("_")]
