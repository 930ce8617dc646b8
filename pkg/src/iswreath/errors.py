class DegreeMismatchError(ValueError):
    """Operands live in different semigroups (degree or level differ)."""


class EnumerationLimitError(RuntimeError):
    """Raised when an enumeration would exceed its element cap."""

    def __init__(self, what: str, predicted: int, cap: int):
        self.predicted = predicted
        self.cap = cap
        super().__init__(f"{what}: predicted {predicted} elements exceeds cap {cap}")


class FormulaConsistencyError(ArithmeticError):
    """A closed-form count produced a non-integral intermediate value."""
