"""WOPSIP and well-balanced CR discretizations of the Stokes equations on
anisotropic triangular meshes of the unit square."""

from ._core import (
    ConvergenceReport,
    ConvergenceRow,
    ErrorReport,
    Face,
    Mesh,
    MeshQuality,
    PenaltyDiagnostics,
    PenaltyMode,
    Problem,
    Scheme,
    Triangle,
    convergence_rate,
    dof_count,
    generate_mesh,
    make_problem,
    mesh_quality,
    penalty_diagnostics,
    run_experiment,
    solve,
)

__all__ = [
    "ConvergenceReport",
    "ConvergenceRow",
    "ErrorReport",
    "Face",
    "Mesh",
    "MeshQuality",
    "PenaltyDiagnostics",
    "PenaltyMode",
    "Problem",
    "Scheme",
    "Triangle",
    "convergence_rate",
    "dof_count",
    "generate_mesh",
    "make_problem",
    "mesh_quality",
    "penalty_diagnostics",
    "run_experiment",
    "solve",
]
