import logging

import pytest

from hamsim.config import Config


def test_parse_t_sweep_default():
    times = Config.parse_t_sweep("0.1,0.5,3")
    assert times == pytest.approx([0.1, 0.05, 0.025])


@pytest.mark.parametrize("text", ["0.1,0.5", "a,b,c", "0.1,0.5,0", "-1,0.5,3"])
def test_parse_t_sweep_rejects(text):
    with pytest.raises(ValueError):
        Config.parse_t_sweep(text)


def test_log_level_falls_back(monkeypatch):
    monkeypatch.setattr(Config, 'LOG_LEVEL', 'nonsense')
    assert Config.log_level() == logging.WARNING
    monkeypatch.setattr(Config, 'LOG_LEVEL', 'debug')
    assert Config.log_level() == logging.DEBUG
