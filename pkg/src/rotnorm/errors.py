"""Exception types shared across the package.

ValidationError covers bad user input (CLI exit code 1); InconsistentLedger
signals an internally contradictory bound ledger (CLI exit code 2).
"""


class RotnormError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(RotnormError, ValueError):
    """Invalid input; maps to CLI exit code 1."""


class ClosureTooLarge(ValidationError):
    """Group closure exceeded the element cap."""


class NotAMember(ValidationError):
    """Element does not belong to the group."""


class NotSymmetric(ValidationError):
    """Generating set is not closed under inversion."""


class NotConjInvariant(ValidationError):
    """Generating set is not closed under conjugation."""


class IdentityGenerator(ValidationError):
    """The identity cannot generate a conjugation norm."""


class EmptySubset(ValidationError):
    """Quotient norm requires a non-empty subset."""


class TrivialGroup(ValidationError):
    """Operation undefined on the trivial group."""


class DimensionMismatch(ValidationError):
    """Vector/lattice/context dimensions disagree."""


class FullRank(ValidationError):
    """Operation requires a rank-deficient lattice."""


class RankDeficient(ValidationError):
    """Operation requires a full-rank lattice."""


class FrameMismatch(ValidationError):
    """Isotopy endpoints do not line up for concatenation."""


class AmbiguousLift(ValidationError):
    """Per-step frame displacement >= 1/2: continuous lift selection refused."""


class ZeroDenominator(ValidationError):
    """Lower-bound formula needs C + D > 0."""


class InconsistentLedger(RotnormError):
    """A lower bound exceeds an upper bound after closure; maps to exit code 2."""
