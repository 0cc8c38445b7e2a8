"""Tests for environment-driven settings, logging setup and precision retries."""

import logging

import pytest

from galrel.config.logging_config import configure_logging
from galrel.config.settings import AppSettings, app_settings
from galrel.errors import CertificationError
from galrel.utils.retry_utils import with_precision_retry


@pytest.fixture
def no_dotenv(mocker):
    return mocker.patch("galrel.config.settings.load_dotenv")


def test_defaults_are_valid():
    settings = AppSettings()
    assert settings.validate()
    assert settings.precision.DEFAULT_BITS == 128


def test_environment_overrides(mocker, no_dotenv):
    mocker.patch.dict(
        "os.environ",
        {"GALREL_PRECISION": "256", "GALREL_LLL_DELTA": "0.75"},
    )
    settings = AppSettings.load_from_env()
    no_dotenv.assert_called_once()
    assert settings.precision.DEFAULT_BITS == 256
    assert settings.lattice.LLL_DELTA == 0.75
    assert settings.validate()


def test_unconvertible_value_keeps_default(mocker, no_dotenv):
    mocker.patch.dict("os.environ", {"GALREL_PRECISION": "lots"})
    assert AppSettings.load_from_env().precision.DEFAULT_BITS == 128


@pytest.mark.parametrize(
    "group,attr,value",
    [
        ("precision", "DEFAULT_BITS", 32),
        ("precision", "DEFAULT_BITS", 4096),
        ("lattice", "LLL_DELTA", 1.5),
        ("lattice", "MAX_ENUMERATED_POINTS", 0),
        ("search", "MAX_GROUP_ORDER", -1),
        ("logging", "LOG_LEVEL", "chatty"),
    ],
)
def test_validate_rejects(group, attr, value):
    settings = AppSettings()
    setattr(getattr(settings, group), attr, value)
    assert not settings.validate()


def test_to_dict_groups():
    data = AppSettings().to_dict()
    assert set(data) == {"precision", "lattice", "search", "logging"}
    assert data["search"]["MAX_FIELD_DEGREE"] == 12


def test_configure_logging_writes_file(mocker, tmp_path):
    log_file = tmp_path / "logs" / "galrel.log"
    mocker.patch.object(app_settings.logging, "LOG_FILE", str(log_file))
    configure_logging("debug")
    logging.getLogger("galrel.test").debug("hello")
    root = logging.getLogger()
    for handler in list(root.handlers):
        if isinstance(handler, logging.FileHandler):
            handler.close()
            root.removeHandler(handler)
    assert "hello" in log_file.read_text(encoding="utf-8")


def test_retry_doubles_precision_until_certified():
    seen = []

    @with_precision_retry(initial_bits=64, max_bits=512)
    def compute(precision_bits):
        seen.append(precision_bits)
        if precision_bits < 256:
            raise CertificationError("too coarse", precision=precision_bits)
        return precision_bits

    assert compute() == 256
    assert seen == [64, 128, 256]


def test_retry_gives_up_at_ceiling():
    @with_precision_retry(initial_bits=64, max_bits=128)
    def compute(precision_bits):
        raise CertificationError("never", precision=precision_bits)

    with pytest.raises(CertificationError):
        compute()


def test_retry_honours_explicit_precision():
    seen = []

    @with_precision_retry()
    def compute(precision_bits):
        seen.append(precision_bits)
        return "ok"

    assert compute(precision_bits=300) == "ok"
    assert seen == [300]
