"""Joint raw, central and factorial moments of the multinomial distribution.

Closed forms live in :mod:`.formulas`; :mod:`.enum_oracle`, :mod:`.mgf_oracle`,
:mod:`.expansion` and :mod:`.mc_oracle` are independent ways of computing the
same quantities, used to certify them.
"""

from .enum_oracle import moment_via_enumeration, pmf, support
from .errors import (
    BadQueryLength,
    BadTrialCount,
    BudgetExceeded,
    EmptyDimension,
    IndexOutOfRange,
    LengthMismatch,
    MomentError,
    SimplexViolation,
    SupportViolation,
)
from .expansion import central_from_raw
from .formulas import central_moment, factorial_moment, falling_factorial, raw_moment
from .mc_oracle import McEstimate, moment_via_mc
from .mgf_oracle import TruncatedSeries, exp_jet, mgf_jet, raw_moment_via_mgf
from .model import (
    EqualityPattern,
    MomentKind,
    MomentQuery,
    MultinomialParams,
    canonical_pattern,
    validate_params,
)

__version__ = "0.1.0"

__all__ = [
    "BadQueryLength",
    "BadTrialCount",
    "BudgetExceeded",
    "EmptyDimension",
    "EqualityPattern",
    "IndexOutOfRange",
    "LengthMismatch",
    "McEstimate",
    "MomentError",
    "MomentKind",
    "MomentQuery",
    "MultinomialParams",
    "SimplexViolation",
    "SupportViolation",
    "TruncatedSeries",
    "canonical_pattern",
    "central_from_raw",
    "central_moment",
    "exp_jet",
    "factorial_moment",
    "falling_factorial",
    "mgf_jet",
    "moment_via_enumeration",
    "moment_via_mc",
    "pmf",
    "raw_moment",
    "raw_moment_via_mgf",
    "support",
    "validate_params",
]
