"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class CapacityError(ValueError):
    """A requested computation exceeds the configured size limit."""


class GraphMismatchError(ValueError):
    """Two graphs that must share a vertex set do not."""


class LayoutError(ValueError):
    """No biadjacency layout rule is defined for the requested graph."""


class BudgetExhaustedError(RuntimeError):
    """An exhaustive search ran out of its node or time budget."""


class FixtureParseError(ValueError):
    """A fixture file line could not be parsed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
