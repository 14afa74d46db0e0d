"""Exception types shared across the package.

Validation-style errors (bad input, violated precondition) are distinct from
computational errors (a numeric procedure could not deliver its result); the
CLI maps the former to exit code 1 and the latter to exit code 2.
"""


class Error(Exception):
    """Base class for all package errors."""


class DomainError(Error):
    """Argument outside the mathematical domain of an operation."""


class NotInvertible(Error):
    """Ring element has no multiplicative inverse."""


class NotAMember(Error):
    """Value is not a member of the list it was asserted to belong to."""


class SchemaError(Error):
    """Structured document does not match the expected shape."""


class ValidationError(Error):
    """Well-formed input violating a semantic invariant."""


class PreconditionError(Error):
    """Operation called outside its stated preconditions."""


class UnsupportedDomain(Error):
    """Operation only available for a more specific domain (e.g. the disk)."""


class MissingClass(Error):
    """Isotropy class absent from the supplied class table."""


class NonInjectiveTable(Error):
    """Class table maps two distinct classes to the same target."""


class ConvergenceError(Error):
    """A numeric search failed to refine; signals evaluation breakdown."""


class InsufficientSpectrum(Error):
    """The request needs eigenvalues beyond the loaded part of the spectrum."""


#: errors that indicate a failed computation rather than bad input
COMPUTATIONAL_ERRORS = (ConvergenceError, InsufficientSpectrum)
