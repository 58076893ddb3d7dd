import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (Cocone, Diagram, DiagramArrow, GroupoidMorphism, GroupoidPresentation, PreconditionError,
                       coequaliser, count_morphisms, probe, pushout, verify_couniversal, vertex_group)
from vankampen.colimit import UniversalCheck, parallel_pair, span


def endpoints():
    """The two inclusions of the endpoints {p, q} into the interval."""
    ends = GroupoidPresentation.discrete(['p', 'q'])
    I = GroupoidPresentation.interval()
    f = GroupoidMorphism(ends, I, {'p': '0', 'q': '1'}, {})
    return f, GroupoidMorphism(ends, I, {'p': '0', 'q': '1'}, {})


def point_pair():
    I = GroupoidPresentation.interval()
    point = GroupoidPresentation.discrete(['*'])
    return GroupoidMorphism(point, I, {'*': '0'}, {}), GroupoidMorphism(point, I, {'*': '1'}, {})


def test_circle_from_two_intervals():
    f, g = endpoints()
    c = pushout(f, g, 'S1')
    assert c.apex.objects == ('P1.0', 'P1.1')
    assert sorted(e.name for e in c.apex.edges) == ['P1.ι', 'P2.ι']
    G = vertex_group(c.apex, 'P1.0')
    assert len(G.generators) == 1 and G.relators == ()
    assert count_morphisms(c.apex, probe('Z3')) == 9
    assert count_morphisms(c.apex, probe('I')) == 4
    assert c.check_commutes(span(f, g)) == []


def test_pushout_is_couniversal():
    f, g = endpoints()
    c = pushout(f, g)
    report = verify_couniversal(c, span(f, g), ['Z2', 'Z3', 'S3', 'I'])
    assert report.ok
    assert [r.probe for r in report.results] == ['Z2', 'Z3', 'S3', 'I']


def test_coequaliser_is_couniversal():
    a, b = point_pair()
    c = coequaliser(a, b, 'S1')
    report = verify_couniversal(c, parallel_pair(a, b))
    assert report.ok
    counts = {r.probe: (r.cocones, r.morphisms) for r in report.results}
    assert counts['Z4'] == (4, 4)


def test_candidate_that_does_not_coequalise_fails():
    a, b = point_pair()
    I = a.target
    wrong = Cocone(I, {'source': a, 'target': GroupoidMorphism.identity(I)})
    report = verify_couniversal(wrong, parallel_pair(a, b), ['Z2', 'I'])
    assert not report.ok
    assert [r.probe for r in report.failures()] == ['I']


def test_universal_check_streams_events():
    a, b = point_pair()
    D = parallel_pair(a, b)
    events = list(UniversalCheck(coequaliser(a, b), D, ['Z2', 'Z3'], subject='circle').run(stream=True))
    assert events[0].type == 'start'
    assert events[-1].type == 'end'
    assert sum(1 for e in events if e.type == 'progress') == 2
    assert events[-1].payload['result'].subject == 'circle'


def test_diagram_validation():
    loop = GroupoidPresentation.loop()
    ident = GroupoidMorphism.identity(loop)
    with pytest.raises(PreconditionError):
        Diagram({'A': loop}, (DiagramArrow('f', 'A', 'B', ident),))
    cyclic_shape = Diagram({'A': loop, 'B': loop},
                           (DiagramArrow('f', 'A', 'B', ident), DiagramArrow('g', 'B', 'A', ident)))
    with pytest.raises(PreconditionError):
        cyclic_shape.eliminations()


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
