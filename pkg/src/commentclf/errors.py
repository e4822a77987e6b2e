"""Exception types raised across the toolkit."""


class CommentClfError(Exception):
    """Base class for toolkit errors."""


class SchemaError(CommentClfError, ValueError):
    """Input file lacks a declared column."""


class ParseError(CommentClfError, ValueError):
    """A cell value could not be interpreted."""


class DomainError(CommentClfError, ValueError):
    """Arguments violate an operation's preconditions."""


class NumericError(CommentClfError, ArithmeticError):
    """Optimisation produced a non-finite value."""


class FormatError(CommentClfError, ValueError):
    """A persisted model file is corrupt, truncated or from another version."""
