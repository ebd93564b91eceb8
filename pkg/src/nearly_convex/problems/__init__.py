"""eps-optimality, parametric problems and sensitivity of the optimal value function."""

from nearly_convex.problems.decomposition import SensitivitySplit, constrained_split_witness, decomposition_values
from nearly_convex.problems.optimality import (
    ConstrainedProblem,
    MinimizeResult,
    OptimalityCertificate,
    is_eps_solution,
    minimize_on,
    optimality_certificate,
)
from nearly_convex.problems.parametric import (
    ParametricProblem,
    approx_solution_set,
    parametric_certificate,
    solution_set,
    value_function,
)
from nearly_convex.problems.sensitivity import (
    SensitivityResult,
    sensitivity_constrained,
    sensitivity_exact,
    sensitivity_unconstrained,
    value_function_esub_direct,
)

__all__ = [
    "SensitivitySplit",
    "constrained_split_witness",
    "decomposition_values",
    "ConstrainedProblem",
    "MinimizeResult",
    "OptimalityCertificate",
    "is_eps_solution",
    "minimize_on",
    "optimality_certificate",
    "ParametricProblem",
    "approx_solution_set",
    "parametric_certificate",
    "solution_set",
    "value_function",
    "SensitivityResult",
    "sensitivity_constrained",
    "sensitivity_exact",
    "sensitivity_unconstrained",
    "value_function_esub_direct",
]
