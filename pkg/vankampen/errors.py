from typing import Optional


class VanKampenError(ValueError):
    """Base class for every domain error raised by the package.

    The command line maps these to exit status 1; anything else escaping a
    command is a bug.
    """


class ParseError(VanKampenError):
    """Raised when a word, complex file or crossed-module file cannot be read.

    Attributes:
        line (Optional[int]): 1-based line of the offending token, if known.
        column (Optional[int]): 1-based column of the offending token, if known.
    """
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class NotCompletedError(VanKampenError):
    """Raised when a normal form is requested from a system that is not completed."""


class BoundExceededError(VanKampenError):
    """Raised when an enumeration or completion runs past its configured bound."""


class IncompatibleError(VanKampenError):
    """Raised on mismatched faces, endpoints or ambient structures."""


class HypothesisError(VanKampenError):
    """Raised when a connectivity or base-point hypothesis fails."""


class PreconditionError(VanKampenError):
    """Raised when an operation's documented precondition fails.

    Attributes:
        key (Optional[str]): The offending item (a relator name, an arrow, ...).
    """
    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(message)
