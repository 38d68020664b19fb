"""Low-rank + sparse matrix decomposition with a nonconvex fraction-function penalty.

The package provides the closed-form proximal operator of the fraction
function a|t|/(a|t|+1), its vector / matrix-element / singular-value
lifts, an adaptive ADMM solver for the split M = L + S, a seeded
synthetic benchmark harness, and matrix file I/O behind the ``fracpca``
command-line tool.
"""

from ._backend import available_backends, get_backend, set_backend
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateInput,
    DomainError,
    FracpcaError,
    MatrixParseError,
)
from .fraction_prox import (
    ACOS_SLACK,
    PenaltyParams,
    fraction_penalty,
    prox_root,
    prox_scalar,
    threshold_value,
)
from .matrix_io import (
    RunConfig,
    parse_run_config,
    read_matrix,
    write_matrix,
)
from .solver import (
    DecompositionResult,
    SolverConfig,
    SolverState,
    initial_mu,
    select_lambda,
    solve,
    update_mu,
)
from .synth import (
    SyntheticProblem,
    TrialReport,
    cell_seed,
    generate_problem,
    relative_errors,
    run_table,
    table_cells,
)
from .thresholding import (
    SingularValueDecomposition,
    matrix_rank,
    prox_elementwise,
    prox_singular_values,
    prox_vector,
    svd,
)

__version__ = "0.1.0"

__all__ = [
    "ACOS_SLACK",
    "ConfigError",
    "ConvergenceError",
    "DecompositionResult",
    "DegenerateInput",
    "DomainError",
    "FracpcaError",
    "MatrixParseError",
    "PenaltyParams",
    "RunConfig",
    "SingularValueDecomposition",
    "SolverConfig",
    "SolverState",
    "SyntheticProblem",
    "TrialReport",
    "available_backends",
    "cell_seed",
    "fraction_penalty",
    "generate_problem",
    "get_backend",
    "initial_mu",
    "matrix_rank",
    "parse_run_config",
    "prox_elementwise",
    "prox_root",
    "prox_scalar",
    "prox_singular_values",
    "prox_vector",
    "read_matrix",
    "relative_errors",
    "run_table",
    "select_lambda",
    "set_backend",
    "solve",
    "svd",
    "table_cells",
    "threshold_value",
    "update_mu",
    "write_matrix",
]
