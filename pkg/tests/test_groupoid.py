import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (Edge, GroupPresentation, GroupoidMorphism, GroupoidPresentation, IncompatibleError,
                       PreconditionError, Quiver, coequaliser, coproduct, count_morphisms, cyclic, named_group,
                       probe, spanning_forest, symmetric, to_dot, vertex_group, word_equal)
from vankampen.probes import compare, group_homomorphisms, probe_group


def triangle() -> Quiver:
    return Quiver(('v0', 'v1', 'v2'), (Edge('e0', 'v0', 'v1'), Edge('e1', 'v1', 'v2'), Edge('e2', 'v2', 'v0')))


def circle():
    I = GroupoidPresentation.interval()
    point = GroupoidPresentation.discrete(['*'])
    a = GroupoidMorphism(point, I, {'*': '0'}, {})
    b = GroupoidMorphism(point, I, {'*': '1'}, {})
    return coequaliser(a, b, 'S1')


def test_finite_groups():
    S3 = symmetric(3)
    assert S3.order == 6
    assert not S3.is_abelian()
    assert len(S3.normal_subgroups()) == 3
    assert len(S3.automorphisms()) == 6
    assert cyclic(4).is_abelian()
    assert len(cyclic(4).automorphisms()) == 2
    assert named_group('Q8').order == 8


def test_probe_catalog():
    assert probe('I').objects == ('0', '1')
    assert probe('Z3').is_group
    assert probe_group('I') is None
    assert probe_group('S3').order == 6
    with pytest.raises(PreconditionError):
        probe('Z7')


def test_circle_as_coequaliser():
    c = circle()
    assert c.apex.objects == ('0',)
    assert [(e.src, e.tgt) for e in c.apex.edges] == [('0', '0')]
    for name, size in (('Z2', 2), ('Z3', 3), ('Z5', 5), ('S3', 6)):
        assert count_morphisms(c.apex, probe(name)) == size


def test_canonical_spanning_forest():
    forest = spanning_forest(triangle(), ['v0'])
    assert forest.edges == frozenset({'e0', 'e2'})
    assert str(forest.path['v1']) == "e0"
    assert str(forest.path['v2']) == "e2^-1"
    assert all(forest.root[v] == 'v0' for v in ('v0', 'v1', 'v2'))


def test_spanning_forest_keeps_roots_apart():
    forest = spanning_forest(triangle(), ['v0', 'v1'])
    assert forest.root['v1'] == 'v1'
    assert len(forest.edges) == 1
    with pytest.raises(PreconditionError):
        spanning_forest(triangle(), ['w'])


def test_vertex_group_of_free_triangle():
    P = GroupoidPresentation(triangle(), (), 'T')
    G = vertex_group(P, 'v0')
    assert G.generators == ('e1',)
    assert G.relators == ()
    with pytest.raises(PreconditionError):
        vertex_group(P, 'v0', ['e0'])


def test_vertex_group_of_klein_bottle():
    P = GroupPresentation(('a', 'b'), ('a b a^-1 b',))
    assert str(vertex_group(P, '*')) == "⟨a, b | a b a^-1 b⟩"


def test_word_problem_on_torus():
    P = GroupPresentation(('a', 'b'), ('a b a^-1 b^-1',))
    assert word_equal(P, "a b", "b a").verdict == 'equal'
    answer = word_equal(P, "a", "b")
    assert answer.verdict == 'distinct'
    with pytest.raises(PreconditionError):
        word_equal(GroupoidPresentation(triangle()), "e0", "e1")


def test_coproduct_names():
    with pytest.raises(PreconditionError):
        coproduct([GroupoidPresentation.loop(), GroupoidPresentation.loop()])
    total = coproduct([GroupoidPresentation.loop(), GroupoidPresentation.loop()], rename=True)
    assert total.objects == ('0.*', '1.*')
    assert [e.name for e in total.edges] == ['0.e', '1.e']


def test_morphism_endpoints_are_checked():
    I = GroupoidPresentation.interval()
    with pytest.raises(IncompatibleError):
        GroupoidMorphism(I, I, {'0': '0', '1': '0'}, {'ι': "ι"})
    with pytest.raises(PreconditionError):
        GroupoidMorphism(I, I, {'0': '0'}, {'ι': "ι"})


def test_dot_output():
    dot = to_dot(triangle(), 'triangle')
    assert dot.startswith('digraph "triangle" {')
    assert '"v2" -> "v0" [label="e2"];' in dot


def test_compare_counts():
    Z2 = GroupPresentation(('a',), ('a a',))
    report = compare(Z2, GroupPresentation(('b',), ('b b',)), ['Z2', 'Z3', 'S3'])
    assert report.agree
    report = compare(Z2, GroupPresentation(('a',)), ['Z2', 'Z3'])
    assert not report.agree
    assert len(list(group_homomorphisms(Z2, symmetric(3)))) == 4


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
