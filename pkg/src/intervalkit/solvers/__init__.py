from .linear import (
    DEFAULT_CONFIG,
    ESTIMATORS,
    EstimateReport,
    ILinearSystem,
    SolverConfig,
    Verification,
    fixed_point_iterate,
    formal_gauss_seidel,
    gauss_seidel_step,
    identity,
    inner_tolerable,
    inner_united,
    kmatvec,
    member,
    outer_tolerable,
    outer_united,
    precondition_midpoint_inverse,
    residual,
    sample_united,
    spectral_radius_nonneg,
    verify_formal_solution,
    verify_linear,
    verify_quadratic,
)
from .newton import (
    NewtonConfig,
    NewtonResult,
    RootBox,
    RootStatus,
    certificate_holds,
    newton_operator,
    newton_solve,
)
