"""Observed samples: container, support tags, and plain-text ingestion."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class Support(enum.Enum):
    """Domain a sample (or density family) lives on."""

    HALF_LINE = "half-line"
    FULL_LINE = "full-line"


@dataclass(frozen=True)
class Sample:
    """One-dimensional data with a support tag and injection provenance.

    ``injected`` marks observations appended by the outlier protocol; it is
    always the same length as ``values`` and all-False for raw data.
    """

    values: np.ndarray
    support: Support
    injected: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("sample values must be one-dimensional")
        if values.size == 0:
            raise ValueError("sample must contain at least one observation")
        if not np.all(np.isfinite(values)):
            raise ValueError("sample values must be finite")
        if not isinstance(self.support, Support):
            raise TypeError("support must be a Support enum member")
        if self.support is Support.HALF_LINE and np.any(values < 0.0):
            raise ValueError("half-line sample contains negative values")
        injected = self.injected
        if injected is None:
            injected = np.zeros(values.shape, dtype=bool)
        else:
            injected = np.asarray(injected, dtype=bool)
            if injected.shape != values.shape:
                raise ValueError("injected mask must match values in length")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "injected", injected)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def n_injected(self) -> int:
        return int(np.count_nonzero(self.injected))


@dataclass(frozen=True)
class IngestResult:
    """Outcome of parsing a text file: the sample plus a line accounting."""

    sample: Sample
    n_lines: int
    n_parsed: int
    n_skipped: int


def _parse_line(line: str) -> list[float]:
    """Numeric values on one line; empty list when nothing parses."""
    text = line.strip()
    if not text or text.startswith("#"):
        return []
    out = []
    for cell in text.replace(",", " ").split():
        try:
            value = float(cell)
        except ValueError:
            continue
        if np.isfinite(value):
            out.append(value)
    return out


def ingest(path, support: str = "auto") -> IngestResult:
    """Read one-number-per-line text data (commas tolerated) into a Sample.

    Blank lines, ``#`` comments, and unparseable tokens (``NA``, ``-``, text)
    are skipped and counted, never silently dropped.  ``support`` is
    ``"auto"`` (negative values present -> full line, else half line),
    ``"half"``, or ``"full"``.

    Raises ValueError if no numeric values parse, or if ``support="half"``
    conflicts with negative data.
    """
    if support not in ("auto", "half", "full"):
        raise ValueError(f"support must be 'auto', 'half', or 'full', got {support!r}")
    text = Path(path).read_text()
    lines = text.splitlines()
    values: list[float] = []
    n_parsed_lines = 0
    for line in lines:
        parsed = _parse_line(line)
        if parsed:
            n_parsed_lines += 1
            values.extend(parsed)
    if not values:
        raise ValueError(f"no numeric values found in {path}")
    arr = np.asarray(values, dtype=float)
    if support == "auto":
        tag = Support.FULL_LINE if np.any(arr < 0.0) else Support.HALF_LINE
    elif support == "half":
        tag = Support.HALF_LINE
    else:
        tag = Support.FULL_LINE
    sample = Sample(arr, tag)
    return IngestResult(
        sample=sample,
        n_lines=len(lines),
        n_parsed=n_parsed_lines,
        n_skipped=len(lines) - n_parsed_lines,
    )
