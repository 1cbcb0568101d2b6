"""Exception types shared across grasslab."""


class DomainError(ValueError):
    """An argument lies outside the range an operation is defined on."""


class ClassMismatchError(DomainError):
    """Two subspaces were asked to be matched but carry different invariants."""


class ParseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A computation was declined because it exceeds a configured size cap."""


class WitnessError(RuntimeError):
    """A constructed group element failed its own post-hoc verification.

    This always signals a bug; it is never raised for bad input.
    """
