"""Exception hierarchy shared by the whole package."""

from __future__ import annotations


class MvpError(Exception):
    """Base class for every error raised by mvpmodels."""


class LogFormatError(MvpError, ValueError):
    """The tabular log file does not follow the expected layout."""


class TimestampError(LogFormatError):
    pass


class ConsistencyError(LogFormatError):
    """Rows describing the same event disagree, or an object changes class."""


class DomainError(MvpError, ValueError):
    """An argument lies outside the domain accepted by an operation."""


class UnknownObjectError(MvpError, LookupError):
    pass
