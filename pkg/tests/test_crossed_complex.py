import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (ChainLevel, CrossedComplexData, PreconditionError, cyclic, entry, symmetric,
                       validate_crossed_complex)
from vankampen.crossed_complex import CrossedComplexValidator


def level(name: str, group, boundary=None, below=None) -> ChainLevel:
    return ChainLevel.uniform(group, entry(name).over_groupoid, boundary, below)


def test_valid_three_dimensional_complex():
    C3 = level('Z2->1', cyclic(2), (0, 1))
    report = validate_crossed_complex(CrossedComplexData(3, entry('Z2->1'), (C3,)))
    assert report.ok
    assert report.checked > 0


def test_valid_four_dimensional_complex():
    C3 = level('Z2->1', cyclic(2), (0, 1))
    C4 = level('Z2->1', cyclic(2), below=C3)
    C = CrossedComplexData(4, entry('Z2->1'), (C3, C4))
    assert C.name == 'Z2->1[4]'
    assert validate_crossed_complex(C).ok


def test_composite_boundary_must_vanish():
    C3 = level('id(Z2)', cyclic(2), (0, 1))
    report = validate_crossed_complex(CrossedComplexData(3, entry('id(Z2)'), (C3,)))
    assert {v.law for v in report.violations} == {'boundary_square'}
    assert all(v.witness['dimension'] == 3 for v in report.violations)


def test_higher_levels_are_abelian():
    C3 = level('Z2->1', symmetric(3))
    report = validate_crossed_complex(CrossedComplexData(3, entry('Z2->1'), (C3,)))
    assert {v.law for v in report.violations} == {'abelian'}


def test_dimension_bound():
    with pytest.raises(PreconditionError):
        CrossedComplexData(1, entry('id(Z2)'))
    with pytest.raises(PreconditionError):
        CrossedComplexData(3, entry('id(Z2)'))
    assert validate_crossed_complex(CrossedComplexData(2, entry('id(Z3)'))).ok


def test_streamed_levels():
    C3 = level('Z2->1', cyclic(2), (0, 1))
    events = list(CrossedComplexValidator(CrossedComplexData(3, entry('Z2->1'), (C3,))).run(stream=True))
    assert [e.payload['dimension'] for e in events if e.type == 'progress'] == [2, 3]
    assert events[-1].payload['result'].ok


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
