"""
Errors raised while reading expressions from the command line.
"""


class ExpressionError(Exception):
    """
    Base class for input errors; reported with exit code 2.
    """


class ExpressionSyntaxError(ExpressionError):
    """
    Malformed expression text, with the position of the offending token.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f'{message} (line {line}, column {column})')
        self.line = line
        self.column = column


class ExpressionTypeError(ExpressionError):
    """Well-formed expression whose parts have the wrong kinds."""
