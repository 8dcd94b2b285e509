import pytest
from loguru import logger

from quasiherm.config import Settings, load_settings

VARIABLES = ("QUASIHERM_TOL", "QUASIHERM_SEED", "QUASIHERM_VERBOSE", "QUASIHERM_LOG_FILE")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in VARIABLES:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def warnings_log():
    messages = []
    handler = logger.add(messages.append, level="WARNING")
    yield messages
    logger.remove(handler)


def test_defaults():
    assert load_settings() == Settings()


def test_values_from_environment(monkeypatch):
    monkeypatch.setenv("QUASIHERM_TOL", "1e-6")
    monkeypatch.setenv("QUASIHERM_SEED", "42")
    monkeypatch.setenv("QUASIHERM_VERBOSE", "yes")
    settings = load_settings()
    assert settings.tol == 1e-6
    assert settings.seed == 42
    assert settings.verbose is True


@pytest.mark.parametrize(
    "name, raw",
    [("QUASIHERM_TOL", "abc"), ("QUASIHERM_SEED", "1.5"), ("QUASIHERM_SEED", "dez")],
)
def test_malformed_value_falls_back(monkeypatch, warnings_log, name, raw):
    monkeypatch.setenv(name, raw)
    assert load_settings() == Settings()
    assert any(name in str(message) for message in warnings_log)
