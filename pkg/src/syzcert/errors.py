"""Exceptions raised by the engines and mapped to exit codes by the CLI.

Parameter-level problems are ``ValueError`` subclasses (exit 2), resource
limits are ``RuntimeError`` subclasses (exit 4).
"""


class ParameterError(ValueError):
    """An input is outside the operation's domain (composite p, k > i, ...)."""


class CaseNotApplicable(ValueError):
    """A case-specific check was asked for parameters outside its case."""


class HypothesisViolation(ValueError):
    """A lemma's stated hypothesis does not hold for the given numbers."""


class EnumerationOverflow(RuntimeError):
    """Support enumeration would produce more sets than the cap allows."""

    def __init__(self, cap: int) -> None:
        """Name the cap in the message."""
        super().__init__(f"Support enumeration exceeded the cap of {cap}")
        self.cap = cap


class ScanLimitExceeded(RuntimeError):
    """The restriction-degree scan ran past its hard limit."""

    def __init__(self, limit: int) -> None:
        """Name the limit in the message."""
        super().__init__(f"No stable threshold found below the scan limit {limit}")
        self.limit = limit
