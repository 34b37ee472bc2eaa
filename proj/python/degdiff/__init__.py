"""Self-similar solutions of Riemann problems for degenerate diffusion."""

from ._core import (
    ConfigError,
    F,
    F_inverse,
    Problem,
    Solution,
    convergence_study,
    log_F_diff,
    minimize_functional,
    run_config,
    solve,
)

__all__ = [
    "ConfigError",
    "F",
    "F_inverse",
    "Problem",
    "Solution",
    "convergence_study",
    "log_F_diff",
    "minimize_functional",
    "run_config",
    "solve",
]
