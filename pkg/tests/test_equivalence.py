import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (CrossedModuleOverGroupoid, FiniteGroupoid, PreconditionError, commutative_squares_dg, cyclic, entry, find_isomorphism,
                       gamma, lambda_squares, names, roundtrip_dg, roundtrip_xmod, settings, symmetric,
                       validate_xmod)
from vankampen.double import lambda_morphism
from vankampen.equivalence import RoundTripSuite, as_group_xmod, gamma_morphism
from vankampen.xmod import XModMorphism


def test_gamma_lambda_on_the_catalog():
    for name in names():
        report = roundtrip_xmod(entry(name))
        assert report.success, report.trace
        assert report.direction == 'gamma_lambda'
        assert report.instance == name


def test_lambda_gamma_on_the_catalog():
    cheap = settings().override(law_sample_cap=300)
    for name in names():
        report = roundtrip_dg(lambda_squares(entry(name), cheap), cheap)
        assert report.success, report.trace
        assert report.direction == 'lambda_gamma'


def test_gamma_of_commutative_squares():
    dg = commutative_squares_dg(cyclic(2))
    X = gamma(dg)
    assert [G.order for G in X.groups] == [1]
    assert validate_xmod(X).ok
    cheap = settings().override(law_sample_cap=300)
    for G in (cyclic(2), cyclic(4), symmetric(3)):
        report = roundtrip_dg(commutative_squares_dg(G), cheap)
        assert report.success, report.trace


def test_isomorphism_search():
    X = entry('id(Z2)')
    assert find_isomorphism(X, X) is not None
    assert find_isomorphism(X, entry('Z2->Z2:trivial')) is None
    assert find_isomorphism(X, entry('id(Z3)')) is None


def test_group_view_needs_one_object():
    B = FiniteGroupoid.connected(cyclic(2), ['x', 'y'])
    mu = tuple(tuple(B.arrow(f"{o}-{e}->{o}") for e in ('0', '1')) for o in B.objects)
    X = CrossedModuleOverGroupoid('Z2[x,y]', B, (cyclic(2), cyclic(2)), mu,
                                  {p: (0, 1) for p in range(len(B.arrows))})
    with pytest.raises(PreconditionError):
        as_group_xmod(X)
    assert gamma(lambda_squares(X)).groups[1].order == 2


def test_gamma_of_a_morphism():
    X = entry('id(Z2)')
    f = XModMorphism(X, X, (0, 1), (0, 1))
    g = gamma_morphism(lambda_morphism(f))
    assert g.check().ok


def test_round_trip_suite():
    reports = RoundTripSuite(['id(Z2)', commutative_squares_dg(cyclic(2))]).run()
    assert len(reports) == 3
    assert all(r.success for r in reports)


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
