"""Command-line interface."""

from isotile.cli.app import app, main

__all__ = ["app", "main"]
