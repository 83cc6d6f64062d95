"""
Error types and error classification for Mass Growth Lab
Maps every failure to a severity and a process exit code
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from loguru import logger


class MassGrowthError(Exception):
    """Base class for all errors raised by the toolkit"""


class ChargeDomainError(MassGrowthError, ValueError):
    """A charge is zero or lies outside the semi-closed upper half-plane"""


class QuiverValidationError(MassGrowthError, ValueError):
    """The arrow matrix does not describe an acyclic quiver"""


class EnumerationCapError(MassGrowthError, ValueError):
    """Total dimension exceeds the enumeration cap"""


class FieldMismatchError(MassGrowthError, ValueError):
    """Representations over different prime fields were combined"""


class NotSubrepresentationError(MassGrowthError, ValueError):
    """A subspace tuple is not invariant under the arrow maps"""


class HNConsistencyError(MassGrowthError):
    """The maximal destabilizing subobject was not unique"""


class WordSyntaxError(MassGrowthError, ValueError):
    """A twist word could not be parsed"""


class UnknownSuiteError(MassGrowthError, ValueError):
    """Requested invariant suite does not exist"""


class ConfigValidationError(MassGrowthError, ValueError):
    """Run configuration is malformed"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class PropertyViolation(MassGrowthError):
    """An invariant check failed"""

    def __init__(self, message: str, counterexample: Optional[Dict[str, Any]] = None):
        self.counterexample = counterexample or {}
        super().__init__(message)


class ErrorSeverity(Enum):
    """Error severity levels"""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


class ErrorType(Enum):
    """Error types for classification"""
    USAGE = "usage"
    VALIDATION = "validation"
    PROPERTY = "property"
    CONSISTENCY = "consistency"
    UNKNOWN = "unknown"


EXIT_OK = 0
EXIT_PROPERTY_VIOLATION = 1
EXIT_USAGE = 2


@dataclass
class ErrorInfo:
    """Information about an error"""
    error_type: ErrorType
    severity: ErrorSeverity
    message: str
    exit_code: int
    context: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error_type': self.error_type.value,
            'severity': self.severity.value,
            'message': self.message,
            'exit_code': self.exit_code,
            'context': self.context,
        }


class ErrorClassifier:
    """Classify errors by type and severity"""

    @staticmethod
    def classify_error(error: Exception, context: Optional[Dict[str, Any]] = None) -> ErrorInfo:
        """Classify an error based on its type"""
        if isinstance(error, (ConfigValidationError, UnknownSuiteError, WordSyntaxError)):
            error_type = ErrorType.USAGE
            severity = ErrorSeverity.LOW
            exit_code = EXIT_USAGE
        elif isinstance(error, PropertyViolation):
            error_type = ErrorType.PROPERTY
            severity = ErrorSeverity.HIGH
            exit_code = EXIT_PROPERTY_VIOLATION
            context = {**(context or {}), 'counterexample': error.counterexample}
        elif isinstance(error, HNConsistencyError):
            error_type = ErrorType.CONSISTENCY
            severity = ErrorSeverity.CRITICAL
            exit_code = EXIT_PROPERTY_VIOLATION
        elif isinstance(error, (MassGrowthError, ValueError)):
            error_type = ErrorType.VALIDATION
            severity = ErrorSeverity.MEDIUM
            exit_code = EXIT_USAGE
        else:
            error_type = ErrorType.UNKNOWN
            severity = ErrorSeverity.CRITICAL
            exit_code = EXIT_PROPERTY_VIOLATION

        info = ErrorInfo(
            error_type=error_type,
            severity=severity,
            message=str(error),
            exit_code=exit_code,
            context=context or {},
        )
        logger.debug(f"Classified {type(error).__name__} as {error_type.value}/{severity.value}")
        return info
