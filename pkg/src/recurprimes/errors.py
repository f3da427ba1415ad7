"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


class SomosZeroError(ArithmeticError):
    """A Somos recurrence hit a zero divisor term mid-stream."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Somos term S_{index} is zero; the recurrence divides by it")


class SomosIntegralityError(ArithmeticError):
    """A Somos term failed to be an integer where integrality was required."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Somos term S_{index} is not an integer")
