"""Exception types raised across the package."""


class CollatzError(Exception):
    """Base class for every error raised by redcollatz."""


class WordParseError(CollatzError, ValueError):
    pass


class BoundsError(CollatzError, IndexError):
    pass


class DegenerateComparisonError(CollatzError, ValueError):
    """3^0 vs 2^0: both sides are 1, which no ordering can express."""


class DomainError(CollatzError, ValueError):
    pass


class MismatchError(CollatzError):
    """A transform was applied to a value of the wrong parity."""

    def __init__(self, step, value, transform):
        self.step = step
        self.value = value
        self.transform = transform
        parity = "odd" if value & 1 else "even"
        super().__init__(f"step {step}: {transform} cannot be applied to {parity} value {value}")


class StepCapExceeded(CollatzError):
    """Iteration did not finish within the step cap (possible counterexample)."""

    def __init__(self, start, cap):
        self.start = start
        self.cap = cap
        super().__init__(f"no result for {start} within {cap} steps")


class ContractError(CollatzError, ValueError):
    pass


class InternalConsistencyError(CollatzError, AssertionError):
    pass


class ResumeError(CollatzError):
    pass


class ExprError(CollatzError, ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class ExprSyntaxError(ExprError):
    pass


class ExponentLimitError(ExprError):
    pass


class NegativeResultError(ExprError):
    pass
