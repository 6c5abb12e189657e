"""Pseudo-spectral solver for incompressible Navier-Stokes with exponential damping.

Thin wrapper over the C++ core; fields cross the boundary as (3, n, n, n)
numpy arrays in the component-major layout of the native library.
"""

from ._core import (
    ClipMode,
    ClipPolicy,
    ConfigError,
    DampingParams,
    EmptyLedger,
    Grid,
    LedgerRow,
    NonFiniteState,
    OverflowRisk,
    PhysicalField,
    RunResult,
    SimParams,
    SolverState,
    SpectralField,
    VerifyResult,
    damping_dissipation,
    damping_term,
    forward_transform,
    frequency_split,
    friedrichs_truncate,
    galerkin_project,
    homogeneous_sobolev_norm,
    init_random_divfree,
    init_taylor_green,
    inverse_transform,
    l2_norm,
    leray_project,
    lp_norm,
    make_grid,
    max_coefficient_outside_ball,
    max_divergence,
    max_hermitian_asymmetry,
    max_speed,
    max_trunc_radius,
    physical_from_numpy,
    read_snapshot,
    run,
    sobolev_norm,
    spectral_from_numpy,
    step,
    transport_term,
    verify_energy,
    write_snapshot,
)

__all__ = [
    "ClipMode",
    "ClipPolicy",
    "ConfigError",
    "DampingParams",
    "EmptyLedger",
    "Grid",
    "LedgerRow",
    "NonFiniteState",
    "OverflowRisk",
    "PhysicalField",
    "RunResult",
    "SimParams",
    "SolverState",
    "SpectralField",
    "VerifyResult",
    "damping_dissipation",
    "damping_term",
    "forward_transform",
    "frequency_split",
    "friedrichs_truncate",
    "galerkin_project",
    "homogeneous_sobolev_norm",
    "init_random_divfree",
    "init_taylor_green",
    "inverse_transform",
    "l2_norm",
    "leray_project",
    "lp_norm",
    "make_grid",
    "max_coefficient_outside_ball",
    "max_divergence",
    "max_hermitian_asymmetry",
    "max_speed",
    "max_trunc_radius",
    "physical_from_numpy",
    "read_snapshot",
    "run",
    "sobolev_norm",
    "spectral_from_numpy",
    "step",
    "transport_term",
    "verify_energy",
    "write_snapshot",
]
