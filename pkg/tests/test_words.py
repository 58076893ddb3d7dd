import sys
import os

import pytest
from hypothesis import given, settings, strategies as st

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import GenSymbol, GroupRingElement, GroupPresentation, ParseError, RewriteSystem, Word, free_reduce
from vankampen.errors import BoundExceededError, NotCompletedError
from vankampen.rewriting import COMPLETED, BOUND_EXCEEDED, enumerate_normal_forms

letters = st.lists(st.tuples(st.sampled_from('abc'), st.sampled_from((1, -1))), max_size=12)


def _word(pairs) -> Word:
    return Word(tuple(GenSymbol(n, e) for n, e in pairs))


def z2():
    return GroupPresentation(('a',), ('a a',)).system()


def test_parse_and_print():
    w = Word.parse("a b^-1 a^2")
    assert [str(s) for s in w] == ['a', 'b^-1', 'a', 'a']
    assert str(w) == "a b^-1 a a"
    assert len(Word.parse("1")) == 0
    assert str(Word()) == "1"
    assert Word.parse("x^-2") == Word.of(("x", -1), ("x", -1))


def test_parse_errors_carry_columns():
    with pytest.raises(ParseError) as info:
        Word.parse("a 3b", line=4)
    assert info.value.line == 4
    assert info.value.column == 3
    with pytest.raises(ParseError):
        Word.parse("a^0")


def test_free_reduce_and_inverse():
    assert str(free_reduce(Word.parse("a b b^-1 a"))) == "a a"
    w = Word.parse("a b c^-1")
    assert str(w.inverse()) == "c b^-1 a^-1"
    assert len(free_reduce(w * w.inverse())) == 0


def test_substitute():
    w = Word.parse("a b^-1")
    image = w.substitute({'b': Word.parse("c d")})
    assert str(image) == "a d^-1 c^-1"


@settings(deadline=None)
@given(letters)
def test_free_reduce_is_idempotent(pairs):
    w = _word(pairs)
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert r.is_reduced()
    assert len(free_reduce(w * w.inverse())) == 0


def test_free_system_matches_free_reduction():
    rs = RewriteSystem.free(('a', 'b'))
    w = Word.parse("a b b^-1 a^-1 b")
    assert rs.normal_form(w) == free_reduce(w)


def test_cyclic_group_completes():
    rs = z2()
    assert rs.status == COMPLETED
    assert [str(w) for w in enumerate_normal_forms(rs, 4)] == ['1', 'a']
    assert rs.equal(Word.parse("a^-1"), Word.parse("a"))


def test_torus_group_commutes():
    rs = GroupPresentation(('a', 'b'), ('a b a^-1 b^-1',)).system()
    assert rs.status == COMPLETED
    assert rs.equal(Word.parse("a b"), Word.parse("b a"))
    assert not rs.equal(Word.parse("a"), Word.parse("b"))


def test_symmetric_group_has_six_normal_forms():
    rs = GroupPresentation(('a', 'b'), ('a^2', 'b^3', 'a b a b')).system()
    assert rs.status == COMPLETED
    assert len(enumerate_normal_forms(rs, 6)) == 6


def test_completion_bounds():
    raw = RewriteSystem.from_relators(('a', 'b'), [Word.parse(r) for r in ('a^2', 'b^3', 'a b a b')])
    assert raw.complete(max_rules=5).status == BOUND_EXCEEDED
    with pytest.raises(NotCompletedError):
        raw.normal_form(Word.parse("a"))
    with pytest.raises(BoundExceededError):
        z2().reduce(Word.parse("a^6"), limit=1)


def test_group_ring_arithmetic():
    rs = z2()
    one, a = GroupRingElement.one(rs), GroupRingElement.of(rs, "a")
    assert not (one + a) * (one - a)
    assert ((one + a) * (one + a)).augmentation() == 4
    assert str(one - a) == "1 - a"
    assert (a * 3).coefficient("a^-1") == 3


def test_group_ring_involution():
    rs = GroupPresentation(('a', 'b'), ('a b a^-1 b^-1',)).system()
    x = GroupRingElement.of(rs, "a b")
    assert x.involution() == GroupRingElement.of(rs, "b^-1 a^-1")
    assert x.act("a^-1") == GroupRingElement.of(rs, "b")


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
