"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RefusalError(ValueError):
    """A precondition does not hold; optionally carries a witness object."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetError(RuntimeError):
    """A configured search budget was exhausted before a decision was reached."""


class InternalContradictionError(RuntimeError):
    """An in-class input reached a state the algorithm's argument rules out.

    Raised instead of silently patching, so defects surface in tests.
    """
