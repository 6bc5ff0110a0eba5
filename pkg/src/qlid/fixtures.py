"""Bundled datasets used by the demos and the regression suite."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

from .sample import Sample, ingest

HALFLINE_N90 = "halfline_n90"
FULLLINE_N162 = "fullline_n162"

FIXTURES = (HALFLINE_N90, FULLLINE_N162)


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled dataset."""
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; available: {FIXTURES}")
    return Path(str(files("qlid").joinpath("data", f"{name}.txt")))


def load_fixture(name: str) -> Sample:
    """Bundled dataset as a Sample (support inferred from the data)."""
    return ingest(fixture_path(name)).sample
