"""CLI error hierarchy and the mapping from kernel exceptions."""

from isotile.cli.constants import ErrorCode, ExitCode
from isotile.core.analysis import EmptyCore, IncompleteCrown
from isotile.core.crossings import CrossingTableError, NotAVertex
from isotile.core.geometry import NonIntegralMap, ResolutionError
from isotile.core.rules import ProseConstraintViolation
from isotile.core.squares import ConflictingGrouping, SquareGeometryError
from isotile.core.substitution import NotComposable, SeedFormatError
from isotile.core.tiles import GeometryError, OverlapError, SizeMismatch
from isotile.formats.document import SchemaError


class CliError(Exception):
    """Base CLI error with an exit code and structured detail."""

    def __init__(
        self,
        *,
        exit_code: int,
        code: str,
        message: str,
        detail: str | None = None,
    ) -> None:
        self.exit_code = exit_code
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


class ViolationsFoundError(CliError):
    """Raised when a validated patch breaks the local rules."""

    def __init__(self, count: int, *, detail: str | None = None) -> None:
        super().__init__(
            exit_code=ExitCode.VIOLATIONS,
            code=ErrorCode.VIOLATIONS_FOUND,
            message=f"{count} rule violation(s) found",
            detail=detail,
        )


class UsageError(CliError):
    """Raised when arguments are valid on their own but not together."""

    def __init__(self, message: str, *, detail: str | None = None) -> None:
        super().__init__(
            exit_code=ExitCode.USAGE,
            code=ErrorCode.USAGE,
            message=message,
            detail=detail,
        )


# first matching entry wins, so subclasses precede their bases
ERROR_MAP: tuple[tuple[type[Exception], ExitCode, ErrorCode], ...] = (
    (NotComposable, ExitCode.VIOLATIONS, ErrorCode.NOT_COMPOSABLE),
    (ConflictingGrouping, ExitCode.VIOLATIONS, ErrorCode.CONFLICTING_GROUPING),
    (ProseConstraintViolation, ExitCode.VIOLATIONS, ErrorCode.PROSE_CONSTRAINT),
    (SchemaError, ExitCode.USAGE, ErrorCode.SCHEMA_ERROR),
    (GeometryError, ExitCode.USAGE, ErrorCode.GEOMETRY_ERROR),
    (OverlapError, ExitCode.USAGE, ErrorCode.OVERLAP),
    (SizeMismatch, ExitCode.USAGE, ErrorCode.SIZE_MISMATCH),
    (SquareGeometryError, ExitCode.USAGE, ErrorCode.SQUARE_GEOMETRY),
    (ResolutionError, ExitCode.USAGE, ErrorCode.RESOLUTION),
    (NonIntegralMap, ExitCode.USAGE, ErrorCode.RESOLUTION),
    (SeedFormatError, ExitCode.USAGE, ErrorCode.SEED_FORMAT),
    (EmptyCore, ExitCode.USAGE, ErrorCode.EMPTY_CORE),
    (CrossingTableError, ExitCode.USAGE, ErrorCode.CROSSING_TABLE),
    (IncompleteCrown, ExitCode.USAGE, ErrorCode.INVALID_INPUT),
    (NotAVertex, ExitCode.USAGE, ErrorCode.INVALID_INPUT),
    (OSError, ExitCode.USAGE, ErrorCode.IO_ERROR),
    (ValueError, ExitCode.USAGE, ErrorCode.INVALID_INPUT),
)


def to_cli_error(exc: Exception) -> CliError | None:
    """Translate a kernel exception, or return None if it is not expected."""
    if isinstance(exc, CliError):
        return exc
    for exc_type, exit_code, code in ERROR_MAP:
        if isinstance(exc, exc_type):
            return CliError(
                exit_code=exit_code,
                code=code,
                message=str(exc) or exc_type.__name__,
                detail=type(exc).__name__,
            )
    return None
