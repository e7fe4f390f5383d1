import pytest

from graphene_cs import PhysicsConfig


@pytest.fixture
def cfg():
    return PhysicsConfig(b0=0.5, k=0.0)


@pytest.fixture
def cfg_shifted_center():
    return PhysicsConfig(b0=2.0, k=1.0)
