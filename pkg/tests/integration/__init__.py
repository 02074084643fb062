"""Integration tests - whole pipelines and deep supertiles."""
