"""
Shared fixtures for the doublet test suites.

Run: pytest            (everything)
     pytest -m "not slow"
"""
import math

import numpy as np
import pytest

from src.geometry import ReducedVolumes, Tensions


@pytest.fixture
def equal_tensions() -> Tensions:
    return Tensions.of(1.0, 1.0, 1.0)


@pytest.fixture
def right_angle_tensions() -> Tensions:
    """(3, 4, 5): the interface meets at 90 degrees, sin phi = (0.6, 0.8, 1)."""
    return Tensions.of(3.0, 4.0, 5.0)


@pytest.fixture
def equal_volumes() -> ReducedVolumes:
    return ReducedVolumes.of(0.5, 0.5)


@pytest.fixture
def unequal_volumes() -> ReducedVolumes:
    return ReducedVolumes.of(0.75, 0.25)


@pytest.fixture
def line_tensions() -> Tensions:
    """The line-tension configuration equivalent to pure tensions ~ (4.2, 8.5, 8.9)."""
    return Tensions.of(5.0, 6.0, 4.0, kappa=1.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


def random_interior_tensions(rng: np.random.Generator) -> Tensions:
    """Uniform tensions in [0.5, 5] redrawn until 2 max(t) < t_s with some margin."""
    while True:
        t = rng.uniform(0.5, 5.0, size=3)
        if 2.0 * t.max() < 0.98 * t.sum():
            return Tensions.of(*map(float, t))


def random_volumes(rng: np.random.Generator) -> ReducedVolumes:
    w1 = float(rng.uniform(0.1, 0.9))
    return ReducedVolumes.of(w1, 1.0 - w1)


def symmetric_junction_radius(volumes: ReducedVolumes) -> float:
    """h of the equal-tension doublet: w1 = 6 sqrt(3) h^3 when w1 = w2."""
    return (volumes.w1 / (6.0 * math.sqrt(3.0))) ** (1.0 / 3.0)
