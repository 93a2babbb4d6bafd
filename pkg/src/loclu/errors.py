"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input data violates a documented precondition."""


class InvalidConfigError(ValueError):
    """A configuration object holds an out-of-range parameter."""


class ParseError(InvalidInputError):
    """A data file could not be parsed.

    ``line`` is the 1-based line number when known.
    """

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
