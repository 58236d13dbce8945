"""
Exception hierarchy shared by every shiftlab package.
"""


class ShiftLabError(Exception):
    """Base class for all shiftlab errors."""
    pass


class ValidationError(ShiftLabError):
    """Raised when a word, alphabet or parameter fails validation."""
    pass


class AlphabetMismatch(ValidationError):
    """Raised when a word uses symbols outside the expected alphabet."""
    pass


class ConfigError(ShiftLabError):
    """Raised for invalid configuration or run settings."""
    pass


class BudgetExceeded(ShiftLabError):
    """Raised when an enumeration or search exceeds its configured budget."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeded budget of {budget}")
        self.what = what
        self.budget = budget


class PrecisionError(ShiftLabError):
    """Raised when beta digits cannot be decided at the working precision."""
    pass


class DigitCacheError(ShiftLabError):
    """Raised when a beta shift has fewer cached digits than a word needs."""
    pass


class AutomatonMissing(ShiftLabError):
    """Raised when a counting operation needs an automaton the oracle lacks."""
    pass


class TableMiss(ShiftLabError):
    """Raised when a block code has no entry for a window."""

    def __init__(self, window):
        super().__init__(f"Block code has no entry for window {window}")
        self.window = window
