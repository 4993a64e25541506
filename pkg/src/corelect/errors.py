"""Exception types shared across the library."""


class CorelectError(Exception):
    """Base class for all library errors."""


class MalformedUtilityError(CorelectError):
    """A utility oracle is inconsistent with its declared kind."""


class EnumerationLimitError(CorelectError):
    """An exhaustive search would exceed the configured subset cap."""


class RuleMismatchError(CorelectError):
    """A scoring rule was applied to utilities it does not support."""


class UnsupportedConstraintError(CorelectError):
    """The operation requires a matroid-kind feasibility family."""


class NotABasisError(CorelectError):
    """A committee expected to be a matroid basis is not one."""


class MatroidAxiomViolation(CorelectError):
    """An independence oracle violated the matroid axioms."""


class CannotCompleteError(CorelectError):
    """No basis is reachable from the given pool."""


class InfeasibleInstanceError(CorelectError):
    """The feasibility family is empty or the mode is wrong for the call."""


class OutOfRegionError(CorelectError):
    """Inputs violate a constructor's precondition region."""


class ParameterError(CorelectError):
    """Generator parameters fail an integrality or positivity requirement."""
