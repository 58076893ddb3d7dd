import sys
import os
import argparse
from typing import List, Optional

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import Settings, load_settings
from vankampen.command import Command
from vankampen.config import DEFAULT_SETTINGS


def scale(value: int, factor: int = 2, labels: Optional[List[str]] = None, loud: bool = False,
          settings: Optional[Settings] = None):
    """
    Multiplies a value.

    Args:
        value (int): The value.
        factor (int): The multiplier.
        labels (Optional[List[str]]): Names attached to the result.
        loud (bool): Upper-case the labels.
    """
    names = [x.upper() if loud else x for x in labels or []]
    return value * factor, names, settings


def parse(argv):
    parser = argparse.ArgumentParser()
    subparsers = parser.add_subparsers(dest='name')
    Command(scale).add_to(subparsers)
    return parser.parse_args(argv)


def test_shipped_defaults():
    assert load_settings(DEFAULT_SETTINGS) == Settings()
    assert Settings().to_dict()['probes'] == ['Z2', 'Z3', 'Z4', 'S3']


def test_yaml_string_and_override():
    s = load_settings("bound: 50\nprobes: [Z2]\ncolour: blue\n")
    assert s.bound == 50
    assert s.probes == ('Z2',)
    assert s.override(bound=None).bound == 50
    assert s.override(seed=7).seed == 7
    with pytest.raises(ValueError):
        load_settings("max_rules: 0\n")
    with pytest.raises(ValueError):
        load_settings("[1, 2]")


def test_command_from_function():
    command = Command(scale)
    assert command.name == 'scale'
    assert command.summary == 'Multiplies a value.'
    assert [p['name'] for p in command.parameters] == ['value', 'factor', 'labels', 'loud']
    args = parse(['scale', '3', '--factor', '4', '--labels', 'x', 'y', '--loud'])
    assert args.command.execute(args, settings='S') == (12, ['X', 'Y'], 'S')
    args = parse(['scale', '5'])
    assert args.command.execute(args) == (10, [], None)
    assert Command(scale, name='times').name == 'times'


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
