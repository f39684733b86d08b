"""Exact computations with color hom-Lie algebras and their enveloping algebras."""
from __future__ import annotations

from .algebra import (
    AlgebraError,
    ColorHomLieAlgebra,
    GradedBasis,
    HomAssociativeAlgebra,
    LinearMap,
    antisymmetrize,
    bracket_eval,
    morphism_check,
    verify_color_hom_lie,
    verify_hom_associative,
    yau_twist,
)
from .grading import (
    CommutationFactor,
    GradingGroup,
    InvalidBicharacter,
    factor_from_pairing,
    scalar_root_of_unity,
    verify_commutation_factor,
)
from .report import VerificationReport, Violation
from .scalar import Scalar, ScalarParseError, parse_scalar
from .tensor import TensorAlgebra, TensorElement, alpha_T, free_extension, odot, theta
from .uea import (
    ConstructionError,
    NormalForm,
    ResourceCapExceeded,
    StepBudgetExceeded,
    UEAContext,
    build_alpha_stable_basis,
    decomposition_oracle,
    ideal_generators,
    j_mu_generators,
    normal_form,
    pbw_words,
    psi_check,
    straighten,
    uea_alpha,
    uea_multiply,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "ColorHomLieAlgebra", "CommutationFactor", "ConstructionError", "GradedBasis",
    "GradingGroup", "HomAssociativeAlgebra", "InvalidBicharacter", "LinearMap", "NormalForm",
    "ResourceCapExceeded", "Scalar", "ScalarParseError", "StepBudgetExceeded", "TensorAlgebra",
    "TensorElement", "UEAContext", "VerificationReport", "Violation", "alpha_T", "antisymmetrize",
    "bracket_eval", "build_alpha_stable_basis", "decomposition_oracle", "factor_from_pairing",
    "free_extension", "ideal_generators", "j_mu_generators", "morphism_check", "normal_form", "odot",
    "parse_scalar", "pbw_words", "psi_check", "scalar_root_of_unity", "straighten", "theta",
    "uea_alpha", "uea_multiply", "verify_color_hom_lie", "verify_commutation_factor",
    "verify_hom_associative", "yau_twist",
]
