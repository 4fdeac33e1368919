"""Tests for the error types and ErrorHandler."""

import logging
import sys

import pytest

from src.phinmod.error_handler import (
    CatalogConstraintError,
    ErrorHandler,
    FieldDivisionError,
    ModuleFormatError,
    ModuleValidationError,
    NotAdmissibleError,
    PhinModError,
    install_global_handler,
)
from src.phinmod.paths import user_dir


def failing(exc):
    raise exc


def test_safe_call_returns_result():
    """Test that a successful call passes its value through."""
    assert ErrorHandler.safe_call(lambda x: x + 1, 2) == 3


def test_safe_call_returns_default_on_workbench_error():
    """Test that PhinModError is converted to the default."""
    result = ErrorHandler.safe_call(failing, ModuleFormatError("bad"), default="fallback")
    assert result == "fallback"


def test_safe_call_propagates_bugs():
    """Test that other exceptions are not swallowed."""
    with pytest.raises(KeyError):
        ErrorHandler.safe_call(failing, KeyError("k"))


def test_safe_call_catches_only_named_errors():
    """Test that a narrowed error tuple lets other workbench errors through."""
    narrowed = (CatalogConstraintError,)
    assert ErrorHandler.safe_call(failing, CatalogConstraintError("Cris1", ["s = 2r"]),
                                  default=None, errors=narrowed) is None
    with pytest.raises(ModuleFormatError):
        ErrorHandler.safe_call(failing, ModuleFormatError("bad"), errors=narrowed)


def test_exception_payloads():
    """Test the data carried by structured errors."""
    err = ModuleValidationError(["phi not invertible", "N not nilpotent"])
    assert err.violations == ["phi not invertible", "N not nilpotent"]
    assert str(err) == "phi not invertible; N not nilpotent"

    err = CatalogConstraintError("Cris1", ["s = 2r"])
    assert str(err) == "Cris1: s = 2r"

    err = ModuleFormatError("missing field 'N'", "m.json")
    assert err.location == "m.json"
    assert str(err) == "m.json: missing field 'N'"

    assert NotAdmissibleError("no", witness={"dim": 1}).witness == {"dim": 1}


def test_division_error_is_zero_division():
    """Test that field division errors are also ZeroDivisionError."""
    assert issubclass(FieldDivisionError, ZeroDivisionError)
    assert issubclass(FieldDivisionError, PhinModError)


def test_global_handler_installed(monkeypatch):
    """Test that the excepthook is replaced."""
    monkeypatch.setattr(sys, "excepthook", sys.__excepthook__)
    install_global_handler()
    assert sys.excepthook == ErrorHandler.handle_exception
    ErrorHandler.handle_exception(KeyboardInterrupt, KeyboardInterrupt(), None)


def test_home_override(tmp_path, monkeypatch):
    """Test that PHINMOD_HOME relocates user directories."""
    monkeypatch.setenv("PHINMOD_HOME", str(tmp_path))
    assert user_dir("logs") == tmp_path / "logs"
    assert (tmp_path / "logs").is_dir()


def test_uncaught_workbench_error_logs_one_line(caplog):
    """Test that the excepthook logs workbench errors without a traceback."""
    with caplog.at_level(logging.ERROR, logger="phinmod"):
        ErrorHandler.handle_exception(ModuleFormatError, ModuleFormatError("bad", "m.json"), None)
    assert caplog.messages == ["ModuleFormatError: m.json: bad"]
