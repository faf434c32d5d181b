"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class UserInputError(AlgebraError):
    """Invalid parameters or unparseable input (CLI exit code 2)."""


class NonPrime(UserInputError):
    pass


class NotDividing(UserInputError):
    pass


class InvalidSpec(UserInputError):
    pass


class ParseError(UserInputError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class FieldMismatch(AlgebraError):
    pass


class ContextMismatch(AlgebraError):
    pass


class SizeMismatch(AlgebraError):
    pass


class BlockMismatch(AlgebraError):
    pass


class OutOfRange(UserInputError):
    pass


class CapExceeded(AlgebraError):
    """A configured resource cap was hit (CLI exit code 3)."""


class NotRegular(AlgebraError):
    """The generator list is not a regular sequence / hsop."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class NonTermination(AlgebraError):
    pass


class InternalAssertion(AlgebraError):
    pass
