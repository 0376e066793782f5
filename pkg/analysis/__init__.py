from analysis.slices import TimeSlice, slice_at
from analysis.gradient import (
    GradientBoundForm,
    LiYauProfile,
    fit_gradient_constant,
    gradient_bound,
    gradient_quantity,
    gradient_quantity_F,
    li_yau_profile,
)
from analysis.hessian import (
    HessianQuantity,
    HessianRatios,
    fit_hessian_constant,
    hessian_quantity_F1,
    hessian_quantity_F2,
    hessian_quantity_bound,
    theorem_hessian_ratio,
    v_tensor,
    w_tensor,
)
from analysis.cube import cube_sup
from analysis.identities import (
    Lemma31Residuals,
    bochner_residual,
    curvature_evolution_residual,
    lemma21_deltaF_residual,
    lemma21_inequality_gap,
    lemma31_component_residuals,
    lemma33_residual,
    lemma34_residual,
)

__all__ = [
    "GradientBoundForm",
    "HessianQuantity",
    "HessianRatios",
    "Lemma31Residuals",
    "LiYauProfile",
    "TimeSlice",
    "bochner_residual",
    "cube_sup",
    "curvature_evolution_residual",
    "fit_gradient_constant",
    "fit_hessian_constant",
    "gradient_bound",
    "gradient_quantity",
    "gradient_quantity_F",
    "hessian_quantity_F1",
    "hessian_quantity_F2",
    "hessian_quantity_bound",
    "lemma21_deltaF_residual",
    "lemma21_inequality_gap",
    "lemma31_component_residuals",
    "lemma33_residual",
    "lemma34_residual",
    "li_yau_profile",
    "slice_at",
    "theorem_hessian_ratio",
    "v_tensor",
    "w_tensor",
]
