"""Exception types shared across the package.

Every *expected* failure (invalid input, undefined operation, verification
mismatch) raises one of these; anything else escaping the library is a bug.
"""

__all__ = [
    "TwinbuildError",
    "DomainError",
    "NotInvertibleError",
    "NotInImageError",
    "VerificationError",
    "SymbolicDegreeError",
]


class TwinbuildError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TwinbuildError):
    """The operation is undefined for these inputs.

    Examples: Weyl distance between chambers of different sign, codistance
    between chambers of the same sign, incompatible determinant valuations,
    a generator index outside the diagram.
    """


class NotInvertibleError(DomainError):
    """A matrix that must be invertible (over the ring at hand) is not."""


class NotInImageError(DomainError):
    """A point fails the membership test for an embedding's image.

    Raised by flag recovery when the alleged Veronese point has the wrong
    spectrum or defective eigenspaces.
    """


class VerificationError(TwinbuildError):
    """A self-check suite found a counterexample (CLI exit code 1)."""


class SymbolicDegreeError(TwinbuildError):
    """A one-parameter pencil step hit a coefficient of degree >= 2 in the
    parameter and no admissible specialization was found; the computation
    stops with a diagnostic instead of guessing."""
