"""Exception hierarchy shared by the library, the CLI and the HTTP service.

Each error carries the process exit code used by the CLI and the HTTP status
used by the API routes.
"""
from typing import Optional


class ResgapsError(Exception):
    exit_code = 1
    status_code = 500


class NotPositiveDefinite(ResgapsError):
    exit_code = 3
    status_code = 422


class SingularMatrix(ResgapsError):
    exit_code = 3
    status_code = 422


class MalformedSpec(ResgapsError):
    exit_code = 3
    status_code = 422


class DimensionMismatch(ResgapsError):
    exit_code = 3
    status_code = 422


class BudgetExceeded(ResgapsError):
    exit_code = 4
    status_code = 413


class BoundTooLarge(BudgetExceeded):
    """Enumeration would visit more nodes than the configured budget."""


class InvalidComponent(ResgapsError):
    exit_code = 3
    status_code = 422


class UndefinedPair(ResgapsError):
    exit_code = 3
    status_code = 422


class NoPositiveContribution(ResgapsError):
    exit_code = 3
    status_code = 422


class ParseError(ResgapsError):
    exit_code = 3
    status_code = 422

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ValidationError(ResgapsError):
    exit_code = 3
    status_code = 422

    def __init__(self, case_id: Optional[int], reason: str, line: Optional[int] = None):
        self.case_id = case_id
        self.reason = reason
        self.line = line
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"{where}case {case_id}: {reason}")


class NotFound(ResgapsError):
    exit_code = 2
    status_code = 404


class RankZero(ResgapsError):
    exit_code = 3
    status_code = 422


class Inapplicable(ResgapsError):
    exit_code = 3
    status_code = 422


class TraceError(ResgapsError):
    """A witness failed to re-validate through the height formulas."""


class VerificationMismatch(ResgapsError):
    exit_code = 5
    status_code = 500
