import pytest

from cigenus.gamma import CurveInstance, SurfaceSpec


@pytest.fixture
def quartic_pair():
    """Surface cut out by two quadrics in P^4."""
    return SurfaceSpec(4, (2, 2))


@pytest.fixture
def anchor(quartic_pair):
    return CurveInstance(quartic_pair, 20)
