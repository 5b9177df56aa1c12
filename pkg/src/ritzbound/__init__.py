"""Rayleigh-Ritz variational eigenvalues with verified monotone upper bounds."""

from .models import (
    MatrixFileModel,
    OperatorModel,
    PhysicalParams,
    assemble,
    free_box,
    free_box_exact,
    lambda_from_physical,
    physical_energy,
    tilted_box,
    tilted_box_element,
)
from .oracle import FdSpec, OracleEstimate, cross_validate, fd_eigenvalues, richardson
from .report import TableLayout, emit_csv, emit_json, emit_table
from .rrvm import (
    BoundReport,
    ConvergencePolicy,
    RitzSequence,
    constrained_quotient_bound,
    converged_levels,
    ritz_vector,
    run,
    verify_interlacing,
    verify_monotonicity,
)
from .symmat import (
    EigenDecomposition,
    EigensolverError,
    SymMatrix,
    eigensolve,
    project_leading,
    projector,
    rayleigh_quotient,
    secular_residual,
)

__version__ = "0.1.0"
