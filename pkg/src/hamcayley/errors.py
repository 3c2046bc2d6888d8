"""Exception hierarchy shared by every module."""


class HamCayleyError(Exception):
    """Base class for all errors raised by this package."""


class ResourceError(HamCayleyError):
    """A size bound (group order, enumeration size) was exceeded."""


class ContractViolation(HamCayleyError):
    """An operation was called outside its documented preconditions."""


class HypothesisViolation(ContractViolation):
    """The input group or generating set is not nilpotent with cyclic commutator subgroup."""


class CaseError(ContractViolation):
    """A construction was asked to handle a configuration it excludes."""


class InvariantFailure(HamCayleyError):
    """An internal consistency check failed; carries a diagnostic trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace if trace is not None else {}


class ParseError(HamCayleyError):
    """A group or word file could not be parsed."""


class BudgetExhausted(ResourceError):
    """A search stopped at its node or time budget before deciding."""
