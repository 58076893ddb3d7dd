import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import PreconditionError, cyclic, entry, induced_xmod, validate_xmod
from vankampen.finite import trivial_group
from vankampen.induced import induced_probes


def test_induced_along_identity():
    X = entry('id(Z2)')
    Y, report = induced_xmod((0, 1), X, cyclic(2))
    assert Y.M.order == 2
    assert Y.P.order == 2
    assert validate_xmod(Y).ok
    assert report.ok


def test_induced_from_trivial_group():
    X = entry('Z2->1')
    Y, report = induced_xmod((0,), X, cyclic(2))
    assert Y.M.order == 4
    assert Y.M.is_abelian()
    assert all(Y.P.elements[m] == '0' for m in Y.mu)
    assert report.ok


def test_trivial_crossed_module_induces_trivial():
    Y, report = induced_xmod((0, 1), entry('1->Z2'), cyclic(2))
    assert Y.M.order == 1
    assert report.ok


def test_map_must_be_a_homomorphism():
    with pytest.raises(PreconditionError):
        induced_xmod((1, 1), entry('id(Z2)'), cyclic(2))
    with pytest.raises(PreconditionError):
        induced_xmod((0,), entry('id(Z2)'), cyclic(2))


def test_explicit_bound_is_kept():
    with pytest.raises(PreconditionError) as info:
        induced_xmod((0,), entry('Z2->1'), cyclic(2), bound=0)
    assert info.value.key == 'bound'
    Y, report = induced_xmod((0,), entry('Z2->1'), cyclic(2), bound=1000)
    assert Y.M.order == 4


def test_probe_family():
    probes = induced_probes(cyclic(4))
    assert [T.P.order for T in probes] == [4] * len(probes)
    assert 'Z2->Z4' in {T.name for T in probes}
    assert induced_probes(trivial_group())[0].M.order == 1


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
