"""omegaw: Lambert W branches and exponential-rational root finding.

The package solves equations of the shape e^{+-kx} = P(x)/Q(x) through
the Lambert W function and certified numeric root isolation, and
applies them to the double-delta quantum well and to the two- and
three-body problems of lineal gravity.  Every reported root carries a
directly substituted residual; closed forms are always certified
against the defining equation, never against their own derivation.
"""

from .config import TOL, Tolerances
from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    NoConvergenceError,
    NoSolutionError,
    OmegawError,
    PoleCollisionError,
    SplitMismatchWarning,
    TruncationWarning,
)
from .gravity import (
    ThreeBodySpec,
    two_body_residual,
    three_body_double_root,
    three_body_pi6_factors,
    three_body_pi6_linear_root,
    three_body_rational_q,
    three_body_residual,
    three_body_solve,
    three_body_special_angle,
    three_body_special_q0,
    two_body_roundtrip,
)
from .identities import (
    addition_law_rhs,
    epsilon_x_relation,
    f_n,
    omega_n_product,
    tetration,
)
from .lambertw import BranchedPoint, BranchIndex, lambert_w, lambert_w_scaled, w_times_exp_w
from .poly import FactoredQuadratic, Polynomial, from_quantum
from .quantum import (
    WellSpec,
    d_equal_charge,
    d_general,
    energy,
    secular_determinant,
    secular_matrix,
)
from .separation import (
    SeparationProblem,
    SeparationSolution,
    SpecialSolution1,
    SpecialSolution2,
    demkov_lambda,
    omega_1_minus_1,
    parametric_family,
    separation_residual,
    solve_canonical,
    solve_rational,
    solve_rational_all,
    solve_separation,
    solve_separation_all,
    special_solution_1,
    special_solution_2,
    x1_of_epsilon,
    x2_of_epsilon,
)
from .solver import (
    RootCertificate,
    SolverConfig,
    TranscendentalEquation,
    default_interval,
    residual,
    solve_all,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # lambertw
    "BranchIndex",
    "BranchedPoint",
    "lambert_w",
    "lambert_w_scaled",
    "w_times_exp_w",
    # poly
    "Polynomial",
    "FactoredQuadratic",
    "from_quantum",
    # solver
    "TranscendentalEquation",
    "RootCertificate",
    "SolverConfig",
    "solve_all",
    "residual",
    "default_interval",
    # identities
    "addition_law_rhs",
    "f_n",
    "omega_n_product",
    "tetration",
    "epsilon_x_relation",
    # separation
    "SeparationProblem",
    "SeparationSolution",
    "SpecialSolution1",
    "SpecialSolution2",
    "x1_of_epsilon",
    "x2_of_epsilon",
    "separation_residual",
    "solve_separation",
    "solve_separation_all",
    "solve_rational",
    "solve_rational_all",
    "solve_canonical",
    "demkov_lambda",
    "special_solution_1",
    "special_solution_2",
    "parametric_family",
    "omega_1_minus_1",
    # quantum
    "WellSpec",
    "secular_matrix",
    "secular_determinant",
    "d_equal_charge",
    "d_general",
    "energy",
    # gravity
    "ThreeBodySpec",
    "two_body_roundtrip",
    "two_body_residual",
    "three_body_residual",
    "three_body_solve",
    "three_body_special_q0",
    "three_body_special_angle",
    "three_body_double_root",
    "three_body_pi6_factors",
    "three_body_pi6_linear_root",
    "three_body_rational_q",
    # config and errors
    "TOL",
    "Tolerances",
    "OmegawError",
    "DomainError",
    "ConvergenceError",
    "NoConvergenceError",
    "NoSolutionError",
    "DegenerateError",
    "PoleCollisionError",
    "TruncationWarning",
    "SplitMismatchWarning",
]
