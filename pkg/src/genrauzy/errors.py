"""Exception hierarchy shared by all modules."""


class GenRauzyError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 2


class ParseError(GenRauzyError):
    pass


class LetterCountError(ParseError):
    pass


class EmptyRowError(ParseError):
    pass


class ConventionError(GenRauzyError):
    pass


class SizeLimitError(GenRauzyError):
    pass


class BalanceError(GenRauzyError):
    def __init__(self, top_sum, bottom_sum):
        super().__init__(f"unbalanced lengths: top {top_sum} != bottom {bottom_sum}")
        self.top_sum = top_sum
        self.bottom_sum = bottom_sum


class OutOfRange(GenRauzyError):
    pass


class Singular(GenRauzyError):
    """Evaluation at a subdivision point."""

    def __init__(self, x, row, index):
        super().__init__(f"x={x} is a subdivision point (row {row}, index {index})")
        self.x = x
        self.row = row
        self.index = index


class BudgetExceeded(GenRauzyError):
    exit_code = 3


class SingularHit(GenRauzyError):
    pass


class NoSuspensionError(GenRauzyError):
    pass


class NotSuitableError(GenRauzyError):
    pass


class ConnectionError(GenRauzyError):  # noqa: A001 - name fixed by the interface
    pass


class ReducibleError(GenRauzyError):
    pass


class ReducibleSeedError(ReducibleError):
    pass


class AngleResidueError(GenRauzyError):
    exit_code = 4


class NodeBudgetExceeded(GenRauzyError):
    exit_code = 3

    def __init__(self, msg, graph=None):
        super().__init__(msg)
        self.graph = graph


class InvariantError(GenRauzyError):
    """An internal invariant failed; never expected."""

    exit_code = 4
