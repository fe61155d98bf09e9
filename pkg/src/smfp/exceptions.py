# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

from typing import Optional


class SmfpException(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(SmfpException):

    """
    Raised when an input file cannot be parsed.

    :param str message: Human readable description
    :param Optional[int] line: 1-based line (or data row) of the offending record
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super(ParseError, self).__init__(message)


class ValidationError(SmfpException):
    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super(ValidationError, self).__init__(message)


class InvalidTerm(ValidationError):
    """A lexicon term which normalizes to nothing."""


class ConfigError(SmfpException):
    pass


class ResourceError(SmfpException):
    """A bundled or user supplied data file could not be read."""


class EmptySenses(SmfpException):
    pass


class InvalidArgument(SmfpException, ValueError):
    pass


class DegenerateData(SmfpException):
    """Training or resampling data lacks one of the two classes."""


class DimensionMismatch(SmfpException, ValueError):
    pass


__all__ = [
    "SmfpException",
    "ParseError",
    "ValidationError",
    "InvalidTerm",
    "ConfigError",
    "ResourceError",
    "EmptySenses",
    "InvalidArgument",
    "DegenerateData",
    "DimensionMismatch",
]
