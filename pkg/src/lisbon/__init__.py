"""Lisbon integrals, trace functions and forms, and their differential systems."""
from .contour import (
    DEFAULT_SPEC,
    QuadratureSpec,
    circle_integral,
    lisbon_F,
    lisbon_F_log,
    lisbon_Ftilde,
    lisbon_Phi,
    sigma_partial,
)
from .entire import EntireFn
from .errors import (
    DegenerateRoots,
    IndexOutOfRange,
    LisbonError,
    MismatchedArity,
    NoConvergence,
    QuadratureNoConvergence,
)
from .exactpoly import GaussianRational, SigmaPoly, monomial_basis
from .polyroots import SigmaPoint, companion, companion_symbolic, discriminant, roots
from .report import Report
from .systems import (
    check_S3,
    check_system_numeric,
    check_system_symbolic,
    closedness_check,
    constant_S3_solutions,
    graded_kernel,
    operator_system,
    reconstruct_trace_from_phi,
    u_minus1_injectivity,
)
from .traces import (
    derived_newton_symbolic,
    lagrange_interp,
    newton_symbolic,
    phi_to_pi,
    pi_to_phi,
    quotient_eval,
    trace_form,
    trace_poly_symbolic,
    trace_T,
    vector_trace,
)
from .weyl import WeylOp, commutator, make_generator, weyl_apply, weyl_compose

__version__ = "0.1.0"
