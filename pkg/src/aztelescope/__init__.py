"""Almkvist-Zeilberger creative telescoping with exact verification.

The main entry points are re-exported here; see the submodules for the rest.
"""

from __future__ import annotations

from .az import AZResult, SearchConfig, az_derive, endpoint_report, telescoper_lhs, verify_certificate
from .errors import (AZError, InconsistentSystemError, MixedConstantTagsError, NonConvergenceError,
                     NonIntegralStepError, NotExactDivisionError, NotFoundError,
                     NotHyperexponentialError, ParseError, PoleError, PrecisionError,
                     SingularLeadingCoefficientError, UnknownVariableError)
from .expr import parse
from .hyperterm import HyperTerm, evaluate_numeric, log_derivative, shift_quotient, to_hyperterm
from .irrationality import (ApproxRecord, PoincareReport, approximation_report, constant_inv_e,
                            gcd_structure, integer_pair_sequence, irrationality_criterion_check,
                            poincare_leading)
from .linsolve import LinearSolution, solve_linear
from .polys import MultiPoly, gcd
from .quadrature import Interval, integrate, transform
from .ratfunc import RatFunc, normalize
from .recop import RecOperator, operator_equivalent
from .recurrence import (ExactNumber, HyperSeqRatio, SequenceTable, binomial_sum_identity,
                         check_solution, unroll)

__version__ = "0.1.0"

__all__ = [
    "AZError", "AZResult", "ApproxRecord", "ExactNumber", "HyperSeqRatio", "HyperTerm",
    "InconsistentSystemError", "Interval", "LinearSolution", "MixedConstantTagsError", "MultiPoly",
    "NonConvergenceError", "NonIntegralStepError", "NotExactDivisionError", "NotFoundError",
    "NotHyperexponentialError", "ParseError", "PoincareReport", "PoleError", "PrecisionError",
    "RatFunc", "RecOperator", "SearchConfig", "SequenceTable", "SingularLeadingCoefficientError",
    "UnknownVariableError", "approximation_report", "az_derive", "binomial_sum_identity",
    "check_solution", "constant_inv_e", "endpoint_report", "evaluate_numeric", "gcd",
    "gcd_structure", "integer_pair_sequence", "integrate", "irrationality_criterion_check",
    "log_derivative", "normalize", "operator_equivalent", "parse", "poincare_leading",
    "shift_quotient", "solve_linear", "telescoper_lhs", "to_hyperterm", "transform", "unroll",
    "verify_certificate",
]
