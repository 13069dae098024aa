"""Configure tests for syzcert."""
pytest_plugins = "syzcert.fixtures"
