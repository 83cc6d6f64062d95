from src.utils.errors import (
    EXIT_OK,
    EXIT_PROPERTY_VIOLATION,
    EXIT_USAGE,
    ChargeDomainError,
    ConfigValidationError,
    ErrorClassifier,
    ErrorSeverity,
    ErrorType,
    HNConsistencyError,
    PropertyViolation,
    UnknownSuiteError,
    WordSyntaxError,
)


def test_usage_errors_exit_two():
    for error in (ConfigValidationError("bad", line=4), UnknownSuiteError("x"), WordSyntaxError("T0")):
        info = ErrorClassifier.classify_error(error)
        assert info.error_type == ErrorType.USAGE
        assert info.exit_code == EXIT_USAGE


def test_config_error_message_has_line():
    error = ConfigValidationError("charges: bad", line=4)
    assert str(error) == "line 4: charges: bad"
    assert error.line == 4
    assert str(ConfigValidationError("plain")) == "plain"


def test_property_violation_carries_counterexample():
    error = PropertyViolation("lower exceeds upper", counterexample={'word': "T1 T2"})
    info = ErrorClassifier.classify_error(error, {'command': 'growth'})
    assert info.exit_code == EXIT_PROPERTY_VIOLATION
    assert info.severity == ErrorSeverity.HIGH
    assert info.context == {'command': 'growth', 'counterexample': {'word': "T1 T2"}}
    assert info.to_dict()['error_type'] == "property"


def test_consistency_and_domain_errors():
    assert ErrorClassifier.classify_error(HNConsistencyError("tie")).exit_code == EXIT_PROPERTY_VIOLATION
    domain = ErrorClassifier.classify_error(ChargeDomainError("zero charge"))
    assert domain.error_type == ErrorType.VALIDATION
    assert domain.exit_code == EXIT_USAGE
    assert isinstance(ChargeDomainError("x"), ValueError)


def test_unknown_errors_are_critical():
    info = ErrorClassifier.classify_error(RuntimeError("boom"))
    assert info.severity == ErrorSeverity.CRITICAL
    assert info.exit_code != EXIT_OK
