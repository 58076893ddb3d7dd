import sys
import os

import pytest
from hypothesis import given, settings, strategies as st

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (GenSymbol, GroupPresentation, GroupRingElement, PreconditionError, Word, boundary_matrix,
                       fox_derivative, kernel_basis_candidate, load_complex, pi2_kernel_search, ring_combine,
                       xmod_of_complex)
from vankampen.fox import fundamental_identity, show_vector, suffix_boundary, to_suffix_exponents
from vankampen.utils import data_path

TORUS = GroupPresentation(('a', 'b'), ('a b a^-1 b^-1',), 'T')

letters = st.lists(st.tuples(st.sampled_from('ab'), st.sampled_from((1, -1))), max_size=10)


def fox_matrix(name: str):
    parsed = load_complex(data_path(f"{name}.cx2"))
    F = xmod_of_complex(parsed.complex, parsed.base)
    return boundary_matrix(F.quotient, F.relators)


def test_derivatives_of_single_letters():
    rs = TORUS.system()
    one = GroupRingElement.one(rs)
    assert fox_derivative("a", 'a', rs) == one
    assert fox_derivative("a^-1", 'a', rs) == -GroupRingElement.of(rs, "a^-1")
    assert not fox_derivative("b", 'a', rs)


def test_torus_matrix():
    Mx = fox_matrix('torus')
    rs = Mx.system
    one, a, b = GroupRingElement.one(rs), GroupRingElement.of(rs, "a"), GroupRingElement.of(rs, "b")
    assert Mx.shape == (1, 2)
    assert Mx.relators == ('s',)
    assert Mx.entry('s', 'a') == one - b
    assert Mx.entry('s', 'b') == a - one
    with pytest.raises(PreconditionError):
        Mx.apply([])


def test_ring_combine():
    rs = TORUS.system()
    a, b = GroupRingElement.of(rs, "a"), GroupRingElement.of(rs, "b")
    assert ring_combine(a, b, 'add') == a + b
    assert ring_combine(a, b, 'mul') == GroupRingElement.of(rs, "a b")
    assert ring_combine(a, None, 'scalar_act', "b") == a.act("b")
    with pytest.raises(PreconditionError):
        ring_combine(a, None, 'scalar_act')
    with pytest.raises(ValueError):
        ring_combine(a, b, 'div')

@settings(deadline=None, max_examples=50)
@given(letters)
def test_fundamental_identity_on_torus(pairs):
    w = Word(tuple(GenSymbol(n, e) for n, e in pairs))
    lhs, rhs = fundamental_identity(w, TORUS.generators, TORUS.system())
    assert lhs == rhs


def test_suffix_reading_of_projective_plane():
    rs = GroupPresentation(('a',), ('a a',)).system()
    entry = fox_derivative("a a", 'a', rs)
    assert entry == GroupRingElement.one(rs) + GroupRingElement.of(rs, "a")
    assert to_suffix_exponents(entry, 'a') == suffix_boundary("a a", rs)['a']


def test_suffix_reading_of_klein_bottle():
    Mx = fox_matrix('klein')
    rs = Mx.system
    suffixes = suffix_boundary("a b a^-1 b", rs)
    for g in ('a', 'b'):
        assert to_suffix_exponents(Mx.entry('s', g), g) == suffixes[g]
    one = GroupRingElement.one(rs)
    assert suffixes['a'] == GroupRingElement.of(rs, "a^-1") - GroupRingElement.of(rs, "b")
    assert suffixes['b'] == one + GroupRingElement.of(rs, "a^-1 b")

def test_kernel_of_sphere():
    Mx = fox_matrix('sphere2')
    vectors = pi2_kernel_search(Mx, 4, 3)
    assert len(vectors) == 6
    one = GroupRingElement.one(Mx.system)
    assert kernel_basis_candidate(vectors) == (one, -one)
    assert show_vector((one, -one), Mx.relators) == "n: 1, s: -1"


def test_kernel_of_projective_plane():
    Mx = fox_matrix('rp2')
    vectors = pi2_kernel_search(Mx, 4, 3)
    assert len(vectors) == 6
    rs = Mx.system
    assert kernel_basis_candidate(vectors) == (GroupRingElement.one(rs) - GroupRingElement.of(rs, "a"),)


def test_torus_has_no_small_kernel():
    Mx = fox_matrix('torus')
    assert pi2_kernel_search(Mx, 4, 3) == []
    assert kernel_basis_candidate([]) is None
    with pytest.raises(PreconditionError):
        pi2_kernel_search(Mx, 0, 1)


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
