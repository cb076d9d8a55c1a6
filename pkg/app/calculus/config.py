"""app/calculus/config.py
Size bounds and defaults of the calculus package, read from the environment (a .env file is
loaded first). Each getter is evaluated at call time so tests and the CLI can override them.
"""
import logging
import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_MAX_K = 10
DEFAULT_MAX_ENTRIES = 10 ** 7
DEFAULT_MAX_KMAX = 7
DEFAULT_DIGITS = 50


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logging.warning(f"Ignoring non-integer {name}={raw!r}; using {default}.")
        return default


def max_k() -> int:
    """Largest Gram order parameter k accepted without an explicit override (WG_MAX_K)."""
    return _int_setting("WG_MAX_K", DEFAULT_MAX_K)


def max_entries() -> int:
    """Largest number of entries N^(k+l) of a dense tensor map (WG_MAX_ENTRIES)."""
    return _int_setting("WG_MAX_ENTRIES", DEFAULT_MAX_ENTRIES)


def max_kmax() -> int:
    """Largest truncation horizon of the filtered-group saturation (WG_MAX_KMAX)."""
    return _int_setting("WG_MAX_KMAX", DEFAULT_MAX_KMAX)


def default_digits() -> int:
    """Working precision in decimal digits of the free q-formula (WG_DIGITS)."""
    return _int_setting("WG_DIGITS", DEFAULT_DIGITS)
