"""posmon: exact factorization invariants for positive monoids and the
monoid semirings that represent their exponentiation semirings."""

from .errors import (
    BoundTooSmallError,
    CertificateUnavailableError,
    HypothesisViolatedError,
    InvalidArgumentError,
    NotAMemberError,
    NotSequenceGeneratedError,
    PosmonError,
    UnboundedQueryError,
    UnsupportedFamilyError,
)
from .factorize import (
    COMPLETE,
    COMPLETE_FOR_LENGTH,
    TRUNCATION_BOUNDED,
    Factorization,
    QueryResult,
    completeness_certificate,
    enumerate_factorizations,
    factorizations_of_length,
    is_irredundant_pair,
    length_set,
    maximal_irredundant_subset,
)
from .monoids import (
    Alternating,
    ConductorQ,
    Explicit,
    GeneratorFamily,
    Grams,
    MonoidSpec,
    PowerOf,
    SRing,
    UnitFractionPrimes,
    certified_atoms,
    contains,
    generators,
    is_atom,
    is_multiplicative_atom,
)
from .rationals import Rational, format_rational, nth_prime, padic_valuation, parse_rational
from .semiring import (
    GenPoly,
    eval_exponential,
    factor_gp,
    gen_poly,
    gp_add,
    gp_divide,
    gp_mul,
    gp_one,
    gp_stats,
    gp_zero,
    is_irreducible_gp,
    monomial,
    parse_gen_poly,
)
from .sequences import (
    componentwise_sum,
    longest_strictly_increasing,
    longest_weakly_decreasing,
    monotone_subsequence,
)

__version__ = "0.1.0"
