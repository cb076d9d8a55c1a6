"""tests/test_reporting.py
Tests for the Report class and the value encodings shared by every command.
"""
from fractions import Fraction
from io import StringIO
import json
from unittest.mock import MagicMock
import mpmath
import numpy as np
import pandas as pd
import pytest
from app.calculus.exceptions import ValidationError
from app.calculus.partitions import PairingFamily, Partition
from app.calculus.reporting import CSV, JSON, Report, decimal, parse_rational, rational, real, to_jsonable

def test_value_encodings():
    '''Rationals as strings, reals and decimals with their digit count'''
    assert rational(Fraction(-3, 6)) == {"num": "-1", "den": "2"}
    assert rational(4) == {"num": "4", "den": "1"}
    assert decimal(Fraction(1, 3), 5) == {"value": "0.33333", "digits": 5}
    assert real(mpmath.mpf("0.125"), 10) == {"value": "0.125", "digits": 10}

@pytest.mark.parametrize("payload, expected", [
    ({"num": "7", "den": "12"}, Fraction(7, 12)),
    ("-2/6", Fraction(-1, 3)),
    ("5", Fraction(5)),
])
def test_parse_rational(payload, expected):
    '''JSON and CSV forms read back to the same Fraction'''
    assert parse_rational(payload) == expected

def test_to_jsonable():
    '''Calculus values are converted recursively'''
    pi = Partition.one_row([[1, 2]])
    value = {1: [Fraction(1, 2), pi], "family": PairingFamily.FREE, "n": np.int64(3),
             "flag": True, "none": None, "matrix": np.array([[1, 2]])}
    assert to_jsonable(value) == {"1": [{"num": "1", "den": "2"}, "0,2:[1,2]"], "family": "free", "n": 3,
                                  "flag": True, "none": None, "matrix": [[1, 2]]}
    assert to_jsonable((0.5,)) == ["0.5"]

def make_report():
    report = Report('gram', {'k': 4, 'N': 2})
    report.add_result(row=0, value=Fraction(4))
    report.add_result(row=1, value=Fraction(1, 2), extra=[1, 2])
    report.add_note("basis in canonical order")
    return report

def test_report_json():
    '''The envelope carries command, arguments, results, notes and cache counts'''
    report = make_report()
    cache = MagicMock(hits=2, misses=1)
    report.record_cache(cache)
    payload = json.loads(report.render(JSON))
    assert sorted(payload) == ['arguments', 'cache', 'command', 'notes', 'results']
    assert payload["cache"] == {"hits": 2, "misses": 1}
    assert payload["results"][1]["value"] == {"num": "1", "den": "2"}
    assert report.render(JSON).endswith("}\n")

def test_report_csv():
    '''CSV columns are the union of row keys; rationals are num/den text'''
    frame = pd.read_csv(StringIO(make_report().render(CSV)), dtype=str, keep_default_na=False)
    assert list(frame.columns) == ['row', 'value', 'extra']
    assert list(frame['value']) == ['4', '1/2']
    assert list(frame['extra']) == ['', '[1,2]']

def test_unknown_format():
    '''Only json and csv are rendered'''
    with pytest.raises(ValidationError):
        make_report().render("xml")
    assert repr(make_report()) == "Report(gram, results=2, passed=True)"
