"""Shared fixtures for CLI-driven method-agreement checks."""

import pytest


@pytest.fixture
def write_graph(tmp_path):
    def _write(text, name="graph.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write
