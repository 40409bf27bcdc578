"""Minimal surfaces from second-order linear complex ODEs.

The pipeline: a cataloged (or user-supplied) ODE determines a
holomorphic Weierstrass pair (eta^2, chi) through its coefficient
ratios; contour integration of that pair yields a conformally immersed
minimal surface in Euclidean, quaternionic and Sym-Tafel form, with
every construction step verifiable numerically.
"""

from .catalog import (DEFAULT_PARAMS, EQUATION_IDS, GridSpec, LinearODE,
                      classical_solution, coefficient_ratios, get_equation,
                      get_fixture, load_user_ode, reference_surface)
from .contour import ContourPath, contour_quad, holo_derivative, straight_path
from .errors import (BranchCutViolation, DomainError, EmptyMesh,
                     EvaluationFailure, IoFailure, PathPlanningFailure,
                     SingularPoint, StepSizeUnderflow, ToleranceNotReached,
                     UnknownEquation, WsurfError)
from .immersion import (GeometryReport, ew_integrals, geometry_report,
                        immerse_ew, pauli_decompose, sym_tafel,
                        to_quaternionic)
from .linearproblem import (Wavefunction, integrate_wavefunction, lp_residual,
                            potential_matrix, zcc_residual)
from .mesh import (ImmersionSample, SurfaceMesh, build_mesh, ew_caches,
                   export_mesh, immersion_at, sample_grid)
from .pathplan import plan_path
from .special import EULER_GAMMA, ei, eval_special, li2
from .weierstrass import (WeierstrassData, build_chi, build_eta,
                          build_numeric_data, closed_form_data, make_data,
                          verify_weierstrass)

__all__ = [
    "BranchCutViolation", "ContourPath", "DEFAULT_PARAMS", "DomainError",
    "EmptyMesh", "EQUATION_IDS", "EULER_GAMMA", "EvaluationFailure",
    "GeometryReport", "GridSpec", "ImmersionSample", "IoFailure",
    "LinearODE", "PathPlanningFailure", "SingularPoint", "StepSizeUnderflow",
    "SurfaceMesh", "ToleranceNotReached", "UnknownEquation", "Wavefunction",
    "WeierstrassData", "WsurfError", "build_chi", "build_eta", "build_mesh",
    "build_numeric_data", "classical_solution", "closed_form_data",
    "coefficient_ratios", "contour_quad", "ei", "eval_special", "ew_caches",
    "ew_integrals", "export_mesh", "geometry_report", "get_equation",
    "get_fixture", "holo_derivative", "immerse_ew", "immersion_at",
    "integrate_wavefunction", "li2", "load_user_ode", "lp_residual",
    "make_data", "pauli_decompose", "plan_path", "potential_matrix",
    "reference_surface", "sample_grid", "straight_path", "sym_tafel",
    "to_quaternionic", "verify_weierstrass",
]

__version__ = "0.1.0"
