"""Python bindings for the condensation-equation simulator and verification lab."""

from ._core import (
    ConfigError,
    DomainError,
    Grid,
    Model,
    Params,
    ValidationError,
    __version__,
    check_corpus,
    critical_polynomial,
    exceptional_exponents,
    holder_exponents,
    jacobian_error,
    lambda_lower,
    nstar_root,
    ode_bound,
    run,
    run_command,
    steady_residual,
    validate,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Grid",
    "Model",
    "Params",
    "ValidationError",
    "__version__",
    "check_corpus",
    "critical_polynomial",
    "exceptional_exponents",
    "holder_exponents",
    "jacobian_error",
    "lambda_lower",
    "nstar_root",
    "ode_bound",
    "run",
    "run_command",
    "steady_residual",
    "validate",
]
