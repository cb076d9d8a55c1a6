"""app/calculus/reporting.py
Defines the Report class that every command fills in and renders. Results are a list of flat
rows; exact rationals are written as numerator/denominator strings in JSON and as `num/den`
text in CSV, so both formats carry the same values. Reals from the numeric oracles are written
as strings with an explicit digit count. CSV goes through a pandas DataFrame.
"""
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath
import numpy as np
import pandas as pd

from app.calculus.exceptions import ValidationError
from app.calculus.partitions import Partition

JSON = "json"
CSV = "csv"
FORMATS = (JSON, CSV)


def rational(value) -> Dict[str, str]:
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def real(value, digits: int) -> Dict[str, Any]:
    return {"value": mpmath.nstr(value, digits), "digits": digits}


def decimal(value, digits: int) -> Dict[str, Any]:
    """A rational rounded to `digits` significant digits."""
    value = Fraction(value)
    with mpmath.workdps(digits + 5):
        number = mpmath.mpf(value.numerator) / value.denominator
    return real(number, digits)


def parse_rational(payload) -> Fraction:
    """Read a rational back from its JSON form or its CSV text."""
    if isinstance(payload, dict):
        return Fraction(int(payload["num"]), int(payload["den"]))
    return Fraction(str(payload))


def to_jsonable(value):
    """Recursively convert calculus values into JSON-ready structures."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return rational(value)
    if isinstance(value, Partition):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_cell(value):
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        return str(parse_rational(value))
    if isinstance(value, dict) and set(value) == {"value", "digits"}:
        return value["value"]
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


class Report:
    """The outcome of one command: an echo of its arguments, result rows and provenance notes."""

    def __init__(self, command: str, arguments: Optional[Dict] = None):
        self.command = command
        self.arguments = dict(arguments or {})
        self.results: List[Dict] = []
        self.notes: List[str] = []
        self.cache = {"hits": 0, "misses": 0}
        self.passed = True

    def add_result(self, **fields) -> None:
        self.results.append({key: to_jsonable(value) for key, value in fields.items()})

    def add_note(self, note: str) -> None:
        self.notes.append(note)

    def record_cache(self, cache) -> None:
        self.cache = {"hits": cache.hits, "misses": cache.misses}

    def to_dict(self) -> Dict:
        return {
            "command": self.command,
            "arguments": to_jsonable(self.arguments),
            "results": self.results,
            "notes": list(self.notes),
            "cache": dict(self.cache),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_frame(self) -> pd.DataFrame:
        columns: List[str] = []
        for row in self.results:
            columns += [key for key in row if key not in columns]
        rows = [{key: _csv_cell(row.get(key, "")) for key in columns} for row in self.results]
        return pd.DataFrame(rows, columns=columns)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False)

    def render(self, output_format: str = JSON) -> str:
        if output_format == JSON:
            return self.to_json() + "\n"
        if output_format == CSV:
            return self.to_csv()
        raise ValidationError(f"unknown output format '{output_format}' (expected json or csv)")

    def __repr__(self) -> str:
        return f"Report({self.command}, results={len(self.results)}, passed={self.passed})"
