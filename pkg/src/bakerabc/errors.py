"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class TableRangeError(IndexError):
    """A prime table was asked for something beyond its limit."""


class ResourceLimitError(RuntimeError):
    """A configured memory or search budget would be exceeded."""


class UndecidedError(ArithmeticError):
    """An enclosure still straddles its threshold after all precision retries."""
