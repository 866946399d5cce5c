"""Solver and checks for conservation laws with one-sided fractional diffusion."""

from ._fraclaw import (
    BlowUp,
    Grid,
    InitialProfile,
    InsufficientData,
    InvalidParameter,
    GridMismatch,
    NWaveParams,
    Operator,
    SolverConfig,
    SupportEscapes,
    Trajectory,
    Unresolved,
    apply_quadrature,
    apply_spectral,
    asymptotic_distance,
    evolve_linear,
    kernel,
    loglog_slope,
    lp_decay_bound,
    mild_residual,
    nwave_cell_averages,
    nwave_front,
    nwave_max,
    oleinik_sup,
    riesz_feller_coeffs,
    self_similarity_residual,
    solve,
    solve_rescaled,
    symbol,
    uniform_snapshots,
)

__all__ = [name for name in dir() if not name.startswith("_")]
