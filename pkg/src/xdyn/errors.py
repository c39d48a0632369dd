"""Exception taxonomy shared across the package.

Everything derives from XdynError so callers (and the CLI) can catch one
base class; the subclasses keep failure modes distinguishable in tests.
"""


class XdynError(ValueError):
    """Base class for all validation and consistency failures."""


class InvalidInputError(XdynError):
    """Malformed numeric input: wrong shape, non-finite entries, bad tolerance."""


class NormalizationError(XdynError):
    """A state failed its unit-trace requirement."""


class PositivityError(XdynError):
    """A state failed positive-semidefiniteness (directly or via closed forms)."""


class RangeError(XdynError):
    """A scalar parameter fell outside its documented range."""


class DomainError(XdynError):
    """An operation was applied outside the family it is defined on."""


class ConsistencyError(XdynError):
    """An internally computed quantity violated an invariant it must satisfy."""


class ConvergenceError(XdynError):
    """An iterative routine exhausted its iteration budget."""


class InsufficientSpanError(XdynError):
    """A trace does not cover enough structure to extract the requested feature."""


class StateFileError(XdynError):
    """A state description file failed schema validation (names the bad field)."""
