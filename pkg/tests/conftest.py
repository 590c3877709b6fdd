"""Session fixtures: the small-graph corpus used by queue and pipeline tests."""

from __future__ import annotations

import random

import pytest

from helpers import random_connected_planar


@pytest.fixture(scope="session")
def planar_corpus():
    """220 seeded connected planar graphs with at most 8 vertices."""
    rng = random.Random(0xC0FFEE)
    return [random_connected_planar(rng) for _ in range(220)]
