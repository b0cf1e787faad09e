import math

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from cli.config import reload_settings
from models import CopulaModel

# Quadrature-backed properties are slow per example; keep deadlines off
hypothesis_settings.register_profile(
    "ordsel",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile("ordsel")

_ENV = ("ORDSEL_THREADS", "ORDSEL_LOG_LEVEL", "ORDSEL_QUAD_TOL", "ORDSEL_OMEGA_GRID", "ORDSEL_CERT_GRID", "ORDSEL_CACHE")


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Every test starts from default settings, whatever the shell exports."""
    for name in _ENV:
        monkeypatch.delenv(name, raising=False)
    reload_settings()
    yield
    for name in _ENV:
        monkeypatch.delenv(name, raising=False)
    reload_settings()


# Continuous, positively dependent fixtures used across suites
POSITIVE_MODELS = [
    CopulaModel.gaussian(0.4),
    CopulaModel.gaussian(0.8),
    CopulaModel.clayton(1.0),
    CopulaModel.clayton(2.0),
    CopulaModel.frank(2.0),
    CopulaModel.frank(8.0),
    CopulaModel.independence(),
]


@pytest.fixture(params=POSITIVE_MODELS, ids=lambda model: model.label)
def positive_model(request) -> CopulaModel:
    return request.param


@pytest.fixture
def clayton_one() -> CopulaModel:
    return CopulaModel.clayton(1.0)


CLAYTON_ONE_P = 9.0 - 12.0 * math.log(2.0)
CLAYTON_TWO_P = math.asinh(math.sqrt(3.0)) / math.sqrt(3.0)
