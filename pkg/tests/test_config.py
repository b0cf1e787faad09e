import pytest

from cli.config import constants, get_settings, reload_settings, settings
from utils.errors import ConfigurationError


def test_defaults():
    assert settings.threads == 1
    assert settings.quad_tol == 1e-10
    assert settings.omega_grid == 512
    assert settings.certificate_grid == 1000
    assert settings.cache_path is None


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("ORDSEL_THREADS", "8")
    monkeypatch.setenv("ORDSEL_QUAD_TOL", "1e-8")
    monkeypatch.setenv("ORDSEL_OMEGA_GRID", "1024")
    monkeypatch.setenv("ORDSEL_LOG_LEVEL", "debug")
    monkeypatch.setenv("ORDSEL_CACHE", "/tmp/ordsel.db")
    reloaded = reload_settings()
    assert reloaded is settings
    assert (settings.threads, settings.quad_tol, settings.omega_grid) == (8, 1e-8, 1024)
    assert settings.log_level == "DEBUG"
    assert settings.cache_path == "/tmp/ordsel.db"


@pytest.mark.parametrize(
    "name,value",
    [
        ("ORDSEL_THREADS", "0"),
        ("ORDSEL_THREADS", "many"),
        ("ORDSEL_QUAD_TOL", "tight"),
        ("ORDSEL_QUAD_TOL", "-1"),
        ("ORDSEL_OMEGA_GRID", "100"),
        ("ORDSEL_CERT_GRID", "10"),
    ],
)
def test_bad_values_raise(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigurationError) as exc:
        get_settings()
    assert exc.value.exit_code == 2


def test_omega_interval_is_open():
    assert 0.0 < constants.OMEGA_EPSILON < constants.OMEGA_MAX < 1.5707963267948966
