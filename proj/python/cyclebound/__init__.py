from ._core import (
    SWEEP_CSV_HEADER,
    BoundSet,
    CanardEstimates,
    CycleExtremes,
    CycleReport,
    Margins,
    NoRootError,
    Params,
    Region4Case,
    SimConfig,
    SimulationError,
    ZIndex,
    apply_env,
    canard,
    cycle_report,
    eta_hat,
    find_m1,
    h,
    limit_cycle,
    lv_small_root,
    lv_small_root_log,
    proofcheck,
    sweep_csv,
    theorem_a,
    x1_lower,
    x1_upper,
    z,
    z_exact,
)

__all__ = [
    "SWEEP_CSV_HEADER",
    "BoundSet",
    "CanardEstimates",
    "CycleExtremes",
    "CycleReport",
    "Margins",
    "NoRootError",
    "Params",
    "Region4Case",
    "SimConfig",
    "SimulationError",
    "ZIndex",
    "apply_env",
    "canard",
    "cycle_report",
    "eta_hat",
    "find_m1",
    "h",
    "limit_cycle",
    "lv_small_root",
    "lv_small_root_log",
    "proofcheck",
    "sweep_csv",
    "theorem_a",
    "x1_lower",
    "x1_upper",
    "z",
    "z_exact",
]
