"""Exception types shared across the package.

InputError covers everything a caller can fix by changing their input
(syntax, unknown letters, degenerate rules); BudgetError covers size and
enumeration limits.  The CLI maps them to exit codes 2 and 3.
"""


class TilerepError(Exception):
    pass


class InputError(TilerepError):
    pass


class ParseError(InputError):
    """Input text did not match the expected grammar."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConstructionError(InputError):
    """The input was well-formed but the requested object cannot be built
    from it (disconnected approximant, broken image path, ...)."""


class BudgetError(TilerepError):
    """A configured size cap or enumeration budget was exceeded."""
