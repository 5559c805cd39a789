"""SEIRS epidemic model with a constant latency delay."""

from ._core import (
    ConfigError,
    Error,
    InitialCondition,
    NoCrossingError,
    NumericalError,
    Params,
    State,
    ValidationError,
    basic_reproduction_number,
    coexistence_equilibrium,
    deg2_crossing,
    deg3_crossing,
    ensemble,
    equilibrium_residual,
    free_disease_eigenvalues,
    free_disease_margin,
    integrate_dde,
    integrate_dde_cascade,
    integrate_ode,
    lyapunov_certificate,
    lyapunov_condition,
    routh_hurwitz_coexistence,
    run,
    simulate_sde,
    validate_params,
)

__all__ = [name for name in dir() if not name.startswith("_")]
