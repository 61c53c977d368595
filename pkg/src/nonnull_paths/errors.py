"""Exception hierarchy shared by all solvers.

Budget exhaustion is deliberately its own branch: "too big to decide" must
never be confused with "no solution".
"""


class NonNullPathsError(Exception):
    pass


class ValidationError(NonNullPathsError):
    """Malformed input: bad group table, bad graph document, bad vertex."""


class StructuralError(NonNullPathsError):
    """Objects from different groups/graphs mixed, or an invalid path."""


class ContractError(NonNullPathsError):
    """A procedure was called outside its precondition."""


class InvariantViolation(NonNullPathsError):
    """Something proven impossible happened; indicates a bug."""


class BudgetExceeded(NonNullPathsError):
    def __init__(self, what, limit):
        super().__init__(f"{what}: budget of {limit} exceeded")
        self.what = what
        self.limit = limit


class ScaleError(NonNullPathsError):
    """Parameters outside the range this artifact can decide exactly."""
