"""tests/test_plugins.py
Tests for the shared flag helpers in app/plugins/__init__.py and for direct execution of the
command plugins against a calculus facade.
"""
import argparse
import logging
from argparse import Namespace
from fractions import Fraction
from unittest.mock import MagicMock
import pytest
from app.calculus import WeingartenCalculus
from app.calculus.exceptions import ValidationError
from app.calculus.reporting import Report
from app.commands import CommandHandler
from app.plugins import (add_family_arguments, add_matrix_rows, arguments_of, parse_generators,
                         parse_indices, parse_profile, require_positive)
from app.plugins.classify import ClassifyCommand
from app.plugins.law import LawCommand
from app.plugins.pairings import PairingsCommand
from app.plugins.verify import VerifyCommand

@pytest.mark.parametrize("text, expected", [
    ("1,2,3", (1, 2, 3)),
    (" 2 , 2 ", (2, 2)),
    ("", ()),
])
def test_parse_indices(text, expected):
    '''Index tuples are comma separated positive integers'''
    assert parse_indices(text) == expected

@pytest.mark.parametrize("text", ["1,a", "0,1", "-2", None])
def test_parse_indices_rejects(text):
    '''Non-integers, zeros and missing values are rejected'''
    with pytest.raises(ValidationError):
        parse_indices(text, 'i')

def test_parse_profile():
    '''Profiles allow zeros but not negative entries'''
    assert parse_profile("2,0,4") == (2, 0, 4)
    with pytest.raises(ValidationError):
        parse_profile("2,-1")
    with pytest.raises(ValidationError):
        parse_profile("")

def test_parse_generators(caplog):
    '''Generators are separated by semicolons and logged'''
    with caplog.at_level(logging.INFO):
        generators = parse_generators("3:(3,2,1); (2,1)")
    assert [str(sigma) for sigma in generators] == ["3:(3,2,1)", "2:(2,1)"]
    assert "Parsed 2 generators" in caplog.text
    assert parse_generators("") == []

def test_require_positive():
    '''Zero, negative and missing values fail'''
    assert require_positive(3, 'N') == 3
    for value in (0, -1, None):
        with pytest.raises(ValidationError):
            require_positive(value, 'N')

def test_add_family_arguments():
    '''The family flag can be renamed and the twisted switch left out'''
    parser = argparse.ArgumentParser()
    add_family_arguments(parser, flag='--sphere', twisted=False)
    args = parser.parse_args(['--sphere', 'free'])
    assert args.family == 'free'
    assert not hasattr(args, 'twisted')

def test_arguments_of_drops_output_flags():
    '''Only computation flags are echoed'''
    args = Namespace(format='csv', cache_dir='/tmp', command='gram', k=4, N=2, digits=None)
    assert arguments_of(args) == {'N': 2, 'k': 4}

def test_add_matrix_rows():
    '''One row per entry, row-major, with optional decimals'''
    matrix = MagicMock()
    matrix.basis = ['a', 'b']
    matrix.__getitem__.side_effect = lambda index: Fraction(index[0] + 1, index[1] + 2)
    report = Report('weingarten')
    add_matrix_rows(report, matrix, digits=5)
    assert [(row["row"], row["col"]) for row in report.results] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert report.results[1]["value"] == {"num": "1", "den": "3"}
    assert report.results[1]["decimal"] == {"value": "0.33333", "digits": 5}

def test_commands_register_under_their_names():
    '''Plugin commands register with the handler under their CLI names'''
    handler = CommandHandler()
    for command_cls in (PairingsCommand, LawCommand, ClassifyCommand, VerifyCommand):
        handler.register_command(command_cls())
    assert [name for name, _ in handler.get_commands()] == ['classify', 'law', 'pairings', 'verify']

def test_pairings_command_execute(tmp_path):
    '''The pairings report lists crossings and signatures'''
    args = Namespace(family='classical', k=4, format='json')
    report = PairingsCommand().execute(args, WeingartenCalculus(cache_dir=str(tmp_path)))
    assert [row["crossings"] for row in report.results] == [0, 1, 0]
    assert [row["signature"] for row in report.results] == [1, -1, 1]

def test_law_command_execute(tmp_path):
    '''Free law moments at large N approach the Catalan numbers'''
    args = Namespace(family='free', twisted=False, N=6, lmax=2, digits=None)
    report = LawCommand().execute(args, WeingartenCalculus(cache_dir=str(tmp_path)))
    assert [row["reference"] for row in report.results] == [1, 2]
    assert report.results[0]["gap"] == {"num": "0", "den": "1"}

def test_verify_command_marks_failures():
    '''A verifier with a failing check makes the report fail'''
    calculus = MagicMock()
    verifier = calculus.verify.return_value
    verifier.checks = []
    verifier.passed = False
    verifier.summary.return_value = {"pass": 0, "fail": 1}
    report = VerifyCommand().execute(Namespace(suite='laws', kmax=5), calculus)
    assert report.passed is False
    assert report.notes == ["pass: 0, fail: 1"]
    calculus.verify.assert_called_once_with('laws', 5)

def test_classify_command_warns_on_unknown(caplog):
    '''An unknown label is reported with a warning'''
    calculus = MagicMock()
    calculus.classify.return_value = {"orders": {"1": 1, "2": 2}, "label": "unknown", "sphere": None,
                                      "rule_counts": {}, "sweeps": 1}
    args = Namespace(generators='', kmax=3, twisted=False)
    report = ClassifyCommand().execute(args, calculus)
    assert report.results[-1]["label"] == "unknown"
    assert "do not classify" in caplog.text
