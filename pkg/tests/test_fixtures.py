"""Ensure the test fixtures work as expected."""
import pytest
from typer.testing import CliRunner

from syzcert.fixtures import InvokeT
from syzcert.fixtures import MockRunner
from syzcert.fixtures import ReportT
from syzcert.fixtures import mocked_invoke


def test_runner(runner: CliRunner) -> None:
    """Ensure fixture returns a runner."""
    assert isinstance(runner, CliRunner)


def test_mock_runner() -> None:
    """Ensure the mock obeys the contract."""
    mock = MockRunner()
    result = mock.invoke(None, ["classify"])
    assert mock.test_args == ["classify"]
    assert result.exit_code == 0
    assert result.stdout == "{}"


def test_valid_invocation_not_mocked(invoke: InvokeT) -> None:
    """Use the actual runner."""
    result = invoke("classify", "-n", "3", "-p", "2", "-d", "7")
    assert "SmallP" in result.stdout


def test_invalid_invocation_not_mocked(invoke: InvokeT) -> None:
    """A usage error is reported with its exit code."""
    with pytest.raises(ValueError) as exc:
        invoke("classify", "-n", "3", "-p", "4", "-d", "7")
    assert str(exc.value) == (
        "Invocation ['classify', '-n', '3', '-p', '4', '-d', '7'] exited with 2"
    )


def test_unenforced_exit(invoke: InvokeT) -> None:
    """Turning enforcement off returns the result."""
    result = invoke("certify", "-n", "3", "-p", "7", "-d", "449", enforce_exit=None)
    assert result.exit_code == 3


def test_valid_invocation_mocked() -> None:
    """Use the fake runner."""
    result = mocked_invoke()("classify")
    assert result.stdout == "{}"


def test_invalid_invocation_mocked() -> None:
    """Use the fake runner to trip the exit check."""
    with pytest.raises(ValueError) as exc:
        mocked_invoke(exit_code=4)("support")
    assert str(exc.value) == "Invocation ['support'] exited with 4"
    result = mocked_invoke(exit_code=4)("support", enforce_exit=4)
    assert result.exit_code == 4


def test_json_report(json_report: ReportT) -> None:
    """Parsed JSON from stdout."""
    report = json_report("classify", "-n", "3", "-p", "2", "-d", "7")
    assert report["case"] == "SmallP"
