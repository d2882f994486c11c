"""Exact computation of the derangement family of integer sequences,
their truncated exponential generating functions, brute-force enumeration
oracles, and a sweep harness that verifies the binomial sum rule
sum_{k<=n} C(n,k) D_r(k) = n! C(n,r) and its relatives."""

from .arith import Rational, binomial, factorial, rising_factorial
from .egf import (
    NonIntegralTermError,
    TruncatedSeries,
    binomial_convolution,
    cauchy_product,
    egf_b_derangement,
    egf_r_derangement,
    from_terms,
    series_exp,
    series_reciprocal_pole,
    series_shift,
    term,
    terms,
)
from .identities import IdentityId, IdentityReport, Observation, check_all, run_identity
from .oracle import (
    EnumerationCapError,
    OracleConfig,
    count_ordered_partitions,
    count_r_derangements,
    count_signed_derangements,
    cycle_decomposition,
    cycles_to_permutation,
    is_r_derangement,
)
from .sequences import (
    Family,
    SequenceId,
    b_derangement,
    b_stirling_k0,
    derangement,
    derangement_nearest_int,
    lah,
    r_derangement,
    r_derangement_recurrence,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "binomial",
    "factorial",
    "rising_factorial",
    "NonIntegralTermError",
    "TruncatedSeries",
    "binomial_convolution",
    "cauchy_product",
    "egf_b_derangement",
    "egf_r_derangement",
    "from_terms",
    "series_exp",
    "series_reciprocal_pole",
    "series_shift",
    "term",
    "terms",
    "IdentityId",
    "IdentityReport",
    "Observation",
    "check_all",
    "run_identity",
    "EnumerationCapError",
    "OracleConfig",
    "count_ordered_partitions",
    "count_r_derangements",
    "count_signed_derangements",
    "cycle_decomposition",
    "cycles_to_permutation",
    "is_r_derangement",
    "Family",
    "SequenceId",
    "b_derangement",
    "b_stirling_k0",
    "derangement",
    "derangement_nearest_int",
    "lah",
    "r_derangement",
    "r_derangement_recurrence",
]
