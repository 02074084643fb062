"""Unit tests for document and SVG formats."""
