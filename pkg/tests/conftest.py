import pytest
from hypothesis import HealthCheck, settings

from exlie import calibration

settings.register_profile("exlie", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exlie")


@pytest.fixture(scope="session", autouse=True)
def calibrated():
    """Every test sees the calibrated Phi constants and k_J ordering."""
    return calibration.calibrate()
