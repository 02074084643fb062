"""isotile test suite."""
