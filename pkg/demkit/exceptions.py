"""
Exception hierarchy shared by every app.

Report-style operations (validation, recognition, decomposition) return
result objects instead of raising; these exceptions are for inputs that make
a computation meaningless, and for the one outcome that must never pass
silently: a disagreement between verdicts that are proven equivalent.
"""


class DemkitError(ValueError):
    """Root of all demkit errors."""


class InvalidInput(DemkitError):
    """Bad index, weight, word, type label or file content."""


class CartanMismatch(DemkitError):
    """Two objects built over different Cartan data were combined."""


class HypothesisViolation(DemkitError):
    """The input does not satisfy the hypothesis of the check requested."""


class BudgetExceeded(DemkitError):
    """A construction would exceed the configured element budget."""

    def __init__(self, size, budget):
        super().__init__(f'{size} elements requested, budget is {budget}')
        self.size = size
        self.budget = budget


class TheoremFalsified(DemkitError):
    """Independent verdicts that must coincide did not."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
