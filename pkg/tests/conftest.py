import pytest
from hypothesis import settings

from cong17 import data
from cong17.elliptic import EllipticCurveQ

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def curves():
    return {name: EllipticCurveQ(a) for name, a in data.CURVES.items()}
