"""Exception taxonomy shared across the package."""

from __future__ import annotations


class PosmonError(Exception):
    """Base class for every domain error raised by posmon."""


class InvalidArgumentError(PosmonError, ValueError):
    """Input violates an operation's precondition."""


class NotAMemberError(PosmonError):
    """Queried element does not belong to the monoid (within its truncation)."""


class NotSequenceGeneratedError(PosmonError):
    """Dense family asked for an enumerated generator list."""


class UnboundedQueryError(PosmonError):
    """Dense-family query issued without the mandatory bounds."""


class HypothesisViolatedError(PosmonError):
    """Family parameter breaks the hypothesis a certified closed form needs."""


class CertificateUnavailableError(PosmonError):
    """No completeness certificate exists for this family/truncation."""


class BoundTooSmallError(PosmonError):
    """The supplied bound admits no witness (or no guaranteed output)."""


class UnsupportedFamilyError(PosmonError):
    """Operation is not defined over this family (e.g. dense exponent monoids)."""
