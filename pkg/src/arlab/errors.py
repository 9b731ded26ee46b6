"""Exception hierarchy shared by every arlab module."""


class ArlabError(Exception):
    """Base class for all errors raised by arlab."""


class DomainError(ArlabError, ValueError):
    """An argument lies outside the domain of the operation."""


class AlphabetMismatch(ArlabError, ValueError):
    pass


class InvalidDirective(ArlabError, ValueError):
    """The directive sequence does not define an Arnoux-Rauzy word."""


class DirectiveParseError(ArlabError, ValueError):
    pass


class BudgetExceeded(ArlabError, MemoryError):
    """Materializing a word would exceed the configured symbol budget."""


class InconclusiveError(ArlabError, RuntimeError):
    """A language-level fact did not stabilize before the budget ran out."""


class ConsistencyError(ArlabError, AssertionError):
    """An internal self-check failed (a bug, never an input problem)."""
