"""Moment and tail bounds for martingales and martingale transforms."""

from martbounds._core import (
    DomainError,
    EntropyModel,
    HolderQuadruple,
    MomentCurve,
    MomentTable,
    PathBatch,
    PsiFunction,
    ResourceError,
    adjudicate,
    attach_multipliers,
    bound_conditional_uniform,
    bound_martingale,
    bound_quadratic_characteristic,
    bound_transform,
    constant_c,
    constant_moment_curve,
    default_p_grid,
    empirical_moment_curve,
    empirical_norm_at,
    gaussian_moment_curve,
    generate,
    gls_norm,
    holder_condition,
    integral_dudley,
    integral_gls,
    integral_pisier,
    limit_formula,
    lower_bound_ratio,
    mixed_norm,
    mp_bracket,
    natural_function,
    optimize_quadruple,
    psi_lower_transform,
    riemann_zeta,
    run_verification,
    s_infinity_norm,
    tail_bound,
    theta_function,
    two_point_moment_curve,
    young_fenchel_upper,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
