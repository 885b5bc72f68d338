import logging

import structlog

from scalebb.config import Settings
from scalebb.core.schemas import ScalingConfig
from scalebb.logging_config import setup_logging


def test_settings_defaults(monkeypatch):
    monkeypatch.delenv("SCALEBB_LOG_LEVEL", raising=False)
    s = Settings(_env_file=None)
    assert s.log_level == "WARNING"
    assert s.saturation_rtol == 1e-9
    assert s.oracle_grid_step == 0.01
    assert s.experiment_seed == 20131017
    assert s.jobs == 1


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("SCALEBB_ORACLE_GRID_STEP", "0.05")
    monkeypatch.setenv("SCALEBB_LI1_MAX_SWEEPS", "25")
    s = Settings(_env_file=None)
    assert s.oracle_grid_step == 0.05
    assert s.li1_max_sweeps == 25


def test_scaling_config_mirrors_settings(monkeypatch):
    monkeypatch.setenv("SCALEBB_PIVOT_RTOL", "1e-10")
    config = Settings(_env_file=None).scaling_config()
    assert isinstance(config, ScalingConfig)
    assert config.pivot_rtol == 1e-10
    assert config.saturation_rtol == ScalingConfig().saturation_rtol


def test_setup_logging_is_idempotent():
    setup_logging("INFO")
    setup_logging("DEBUG")
    root = logging.getLogger()
    consoles = [h for h in root.handlers if h.get_name() == "scalebb-console"]
    assert len(consoles) == 1
    assert root.level == logging.DEBUG
    structlog.get_logger().debug("configured", handlers=len(root.handlers))
    setup_logging("WARNING")
