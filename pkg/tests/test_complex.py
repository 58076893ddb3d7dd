import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (CombinatorialComplex, HypothesisError, ParseError, PreconditionError, Word, check_connected_triple,
                       format_complex, load_complex, parse_complex, pi1_complex, pi1_via_cover, vertex_group,
                       xmod_of_complex)
from vankampen.utils import DATA_DIR, data_path


def shipped(name: str):
    return load_complex(data_path(f"{name}.cx2"))


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_complex("vertex v0\nedge a : v0 -> v1\n")
    assert (info.value.line, info.value.column) == (2, 16)
    with pytest.raises(ParseError) as info:
        parse_complex("vertex v0\nedge a : v0 -> v0\ncell c : a b\n")
    assert (info.value.line, info.value.column) == (3, 12)
    with pytest.raises(ParseError) as info:
        parse_complex("vertex v0 v1\nedge e : v0 -> v1\ncell c : e\n")
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_complex("face x")
    assert (info.value.line, info.value.column) == (1, 1)
    with pytest.raises(ParseError):
        parse_complex("vertex v0\nsub U : vertices=v0 edges=a cells=\n")


def test_shipped_complexes_survive_formatting():
    files = sorted(f for f in os.listdir(DATA_DIR) if f.endswith('.cx2'))
    assert 'annulus.cx2' in files
    for f in files:
        parsed = load_complex(os.path.join(DATA_DIR, f))
        again = parse_complex(format_complex(parsed), parsed.complex.name)
        assert again == parsed, f
        assert format_complex(again) == format_complex(parsed)


def test_fundamental_groups():
    circle = shipped('circle')
    G = vertex_group(pi1_complex(circle.complex, ['v0']), 'v0')
    assert G.generators == ('a',) and G.relators == ()
    klein = shipped('klein')
    assert str(vertex_group(pi1_complex(klein.complex, ['v0']), 'v0')) == "⟨a, b | a b a^-1 b⟩"
    annulus = shipped('annulus')
    G = vertex_group(pi1_complex(annulus.complex, ['v0']), 'v0')
    assert G.generators == ('a', 'b')
    assert G.relators == (Word.parse("a b^-1"),)


def test_base_points_must_meet_every_component():
    X = CombinatorialComplex(('x', 'y'), name='pair')
    with pytest.raises(HypothesisError):
        pi1_complex(X, ['x'])
    assert pi1_complex(X, ['x', 'y']).objects == ('x', 'y')
    with pytest.raises(PreconditionError):
        pi1_complex(X, ['z'])


def test_cover_agrees_with_direct_computation():
    for name in ('circle2', 'circle3'):
        parsed = shipped(name)
        P, report = pi1_via_cover(parsed.complex, parsed.cover, parsed.base)
        assert report.agree, (name, report.counts)
        assert len(P.objects) == len(parsed.base)


def test_cover_hypothesis_is_checked():
    parsed = shipped('circle2')
    with pytest.raises(HypothesisError):
        pi1_via_cover(parsed.complex, parsed.cover, ['p'])
    with pytest.raises(PreconditionError):
        pi1_via_cover(shipped('circle').complex, parsed.cover, ['v0'])


def test_crossed_module_of_a_complex():
    F = xmod_of_complex(shipped('torus').complex, ['v0'])
    assert F.P.generators == ('a', 'b')
    assert F.w['s'] == Word.parse("a b a^-1 b^-1")
    F = xmod_of_complex(shipped('annulus').complex, ['v0'])
    assert F.w['s'] == Word.parse("a b^-1")
    with pytest.raises(HypothesisError):
        xmod_of_complex(CombinatorialComplex(('x', 'y')), ['x', 'y'])


def test_annulus_boundary_triple_is_full():
    parsed = shipped('annulus')
    report = check_connected_triple(parsed.complex, parsed.cover.piece('outer'), ['v0'])
    assert report.components_ok
    assert report.full is True
    assert report.label == 'certified'


def test_disc_boundary_triple_is_full():
    parsed = shipped('disc')
    report = check_connected_triple(parsed.complex, parsed.cover.piece('boundary'), ['v0'])
    assert report.full is True
    assert report.label == 'certified'


def test_two_circles_triple_is_not_full():
    parsed = shipped('two_circles')
    report = check_connected_triple(parsed.complex, parsed.cover.piece('left'), parsed.base)
    assert report.components_ok
    assert report.full is False
    assert report.label == 'bounded'
    assert report.witness == "b is outside the image under Z2: a->0, b->1"


def test_triple_component_condition():
    parsed = shipped('annulus')
    report = check_connected_triple(parsed.complex, parsed.cover.piece('outer'), ['v1'])
    assert not report.components_ok
    assert 'v1' in report.components_detail
    with pytest.raises(PreconditionError):
        check_connected_triple(parsed.complex, shipped('circle2').cover.piece('U'), ['p'])


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
