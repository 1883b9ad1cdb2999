"""Closest product states, the geometric measure of entanglement and related tools
for symmetric multiparticle states."""

from .oracle import GridSpec, grid_max_operator, grid_max_overlap, grid_max_symmetric
from .operators import HermitianOperator, classify, g_hat, g_hat_symmetric
from .optimizer import (
    OptimizationResult,
    OptimizerConfig,
    closest_product_state,
    closest_symmetric_product_state,
    geometric_measure,
    log_geometric_measure,
    symmetrize_maximizer,
    verify_symmetric_maximizer,
)
from .subspaces import basis, dim_symmetric, dim_translation_invariant
from .takagi import takagi_factorize
from .tensor_core import ProductState, StateTensor, evaluate_form

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "grid_max_operator", "grid_max_overlap", "grid_max_symmetric",
    "HermitianOperator", "classify", "g_hat", "g_hat_symmetric",
    "OptimizationResult", "OptimizerConfig", "closest_product_state",
    "closest_symmetric_product_state", "geometric_measure", "log_geometric_measure",
    "symmetrize_maximizer", "verify_symmetric_maximizer",
    "basis", "dim_symmetric", "dim_translation_invariant",
    "takagi_factorize", "ProductState", "StateTensor", "evaluate_form",
]
