"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DataError -> 2, NumericalError -> 3.
"""


class WordleDifficultyError(Exception):
    pass


class DataError(WordleDifficultyError):
    """Invalid, inconsistent, or degenerate input data."""


class ParseError(DataError):
    """Malformed input file; remembers where the problem was found."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix += f"{path}:"
        if line is not None:
            prefix += f"{line}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


class NumericalError(WordleDifficultyError):
    """A numerical routine failed to produce a valid result."""
