"""Automate some testing."""
from __future__ import annotations

import json
from collections.abc import Callable
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import pytest
from click.testing import Result
from typer.testing import CliRunner

from syzcert.__main__ import app


@dataclass
class MockResult:
    """Pretend to be a click ``Result``."""

    exit_code: int = 0
    stdout: str = "{}"


@dataclass
class MockRunner:
    """Pretend to be ``CliRunner``."""

    test_exit_code: int = 0
    test_stdout: str = "{}"
    test_args: Sequence[str] | None = None

    def invoke(self, app: Any, args: Sequence[str]) -> MockResult:
        """Record the arguments and return a canned result."""
        self.test_args = args
        return MockResult(exit_code=self.test_exit_code, stdout=self.test_stdout)


InvokeT = Callable[..., Result]
ReportT = Callable[..., dict[str, Any]]


@pytest.fixture
def runner() -> CliRunner:
    """A runner for the ``syzcert`` app."""
    return CliRunner()


def _base_invoke(runner: CliRunner | MockRunner) -> InvokeT:
    """Automate ``CliRunner`` to invoke ``syzcert``.

    Default to raising an exception if the exit code isn't 0.
    """

    def _invoke(*args: str, enforce_exit: int | None = 0) -> Result:
        """Run the app with ``args``."""
        result = runner.invoke(app, list(args))
        if enforce_exit is not None and result.exit_code != enforce_exit:
            raise ValueError(f"Invocation {list(args)} exited with {result.exit_code}")
        return result  # type: ignore[return-value]

    return _invoke


def mocked_invoke(exit_code: int = 0, stdout: str = "{}") -> InvokeT:
    """Get a fake runner, to allow testing the logic in base_invoke."""
    return _base_invoke(MockRunner(test_exit_code=exit_code, test_stdout=stdout))


@pytest.fixture
def invoke(runner: CliRunner) -> InvokeT:
    """Main fixture for running commands in-process."""
    return _base_invoke(runner)


@pytest.fixture
def json_report(invoke: InvokeT) -> ReportT:
    """Run a command with ``--json`` and parse its stdout."""

    def _report(*args: str, enforce_exit: int | None = 0) -> dict[str, Any]:
        result = invoke(*args, "--json", enforce_exit=enforce_exit)
        return json.loads(result.stdout)  # type: ignore[no-any-return]

    return _report
