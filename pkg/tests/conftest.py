"""Shared test helpers: small search budgets and bundled datasets."""

import pytest

from qlid import OptConfig, Sample, load_fixture


def small_config(seed: int = 0, **overrides) -> OptConfig:
    """Optimizer budget sized for unit tests, not for accuracy claims."""
    base = dict(population=24, generations=40, restarts=2, seed=seed)
    base.update(overrides)
    return OptConfig(**base)


@pytest.fixture(scope="session")
def halfline_sample() -> Sample:
    return load_fixture("halfline_n90")


@pytest.fixture(scope="session")
def fullline_sample() -> Sample:
    return load_fixture("fullline_n162")
