"""
Error types raised by the services and mapped to exit codes by the CLI
"""
from typing import Optional


class IngestError(ValueError):
    """Raised when an input file cannot be turned into citation records"""

    def __init__(self, message: str, row: Optional[int] = None, field: Optional[str] = None):
        self.row = row
        self.field = field
        if row is not None and field is not None:
            message = f"row {row}, field '{field}': {message}"
        elif row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class CovariateError(ValueError):
    """Raised when a tie-break key needs a covariate a tied record does not have"""

    def __init__(self, record_id: str, covariate: str):
        self.record_id = record_id
        self.covariate = covariate
        super().__init__(f"record '{record_id}' is tied and has no '{covariate}' value")


class ConfigError(ValueError):
    """Raised for invalid selectors or configuration values"""


class InfeasibleSchemeError(ValueError):
    """Raised when a rank-class scheme fails the feasibility rules"""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
