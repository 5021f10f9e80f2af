"""Exception types shared by every latql module.

The CLI maps these onto exit codes: syntax and usage problems exit 1,
data problems exit 2, broken internal invariants exit 3.
"""


class LatqlError(Exception):
    """Base class for all latql errors."""

    exit_code = 2


class DomainError(LatqlError, ValueError):
    """An argument lies outside the context or lattice it is applied to."""


class IntegrityError(LatqlError, ValueError):
    """Input data violates a structural constraint (duplicate keys, ...)."""


class ScaleCoverageError(IntegrityError):
    """A many-valued attribute takes a value its scale does not know."""


class ConfigurationError(LatqlError, ValueError):
    """A session config, scale map or cover is incomplete or inconsistent."""


class AlignmentError(DomainError):
    """Two contexts that should share objects (or attributes) do not."""


class ConflictError(DomainError):
    """Two contexts disagree on a shared incidence cell."""

    def __init__(self, obj, attr):
        super().__init__(f"contexts disagree on cell ({obj!r}, {attr!r})")
        self.object = obj
        self.attribute = attr


class FormatError(IntegrityError):
    """A context or table file is malformed."""

    def __init__(self, message, line=None, source=None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


class QuerySyntaxError(LatqlError):
    """The query text does not parse."""

    exit_code = 1

    def __init__(self, message, text="", offset=0):
        line = text.count("\n", 0, offset) + 1
        column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.offset = offset


class QueryError(LatqlError):
    """A well-formed query failed while evaluating a subexpression."""

    def __init__(self, message, span=None, cause=None):
        if span is not None:
            message = f"at {span[0]}..{span[1]}: {message}"
        super().__init__(message)
        self.span = span
        self.cause = cause
        if cause is not None:
            self.exit_code = getattr(cause, "exit_code", 2)


class InvariantError(LatqlError, AssertionError):
    """An internal consistency check failed; this is a bug."""

    exit_code = 3
