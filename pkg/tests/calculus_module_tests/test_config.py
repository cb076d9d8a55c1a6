"""tests/calculus_module_tests/test_config.py
Tests for the environment-driven bounds.
"""
import pytest
from app.calculus import config

@pytest.mark.parametrize("getter, name, default", [
    (config.max_k, "WG_MAX_K", config.DEFAULT_MAX_K),
    (config.max_entries, "WG_MAX_ENTRIES", config.DEFAULT_MAX_ENTRIES),
    (config.max_kmax, "WG_MAX_KMAX", config.DEFAULT_MAX_KMAX),
    (config.default_digits, "WG_DIGITS", config.DEFAULT_DIGITS),
])
def test_settings(monkeypatch, caplog, getter, name, default):
    '''Defaults, overrides and non-integer values'''
    monkeypatch.delenv(name, raising=False)
    assert getter() == default
    monkeypatch.setenv(name, "12")
    assert getter() == 12
    monkeypatch.setenv(name, "")
    assert getter() == default
    monkeypatch.setenv(name, "many")
    assert getter() == default
    assert f"Ignoring non-integer {name}='many'" in caplog.text
