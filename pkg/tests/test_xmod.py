import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (CrossedModule, CrossedModuleOverGroupoid, FiniteGroupoid, ParseError, PreconditionError,
                       catalog, cyclic, dump_xmod, entry, load_xmod, morphisms, mutate_action, symmetric,
                       validate_groupoid, validate_xmod)
from vankampen.catalog import names
from vankampen.finite import coproduct_groupoids
from vankampen.xmod import XModValidator

Z4_TO_Z2 = """
name: Z4->Z2
M: Z4
P: Z2
mu: {'0': '0', '1': '1', '2': '0', '3': '1'}
action: trivial
"""


def test_catalog_entries_are_crossed_modules():
    entries = catalog()
    assert len(entries) == len(names())
    for X in entries:
        report = validate_xmod(X)
        assert report.ok, (X.name, report.violations[:3])
        assert report.checked > 0


def test_catalog_lookup():
    assert entry('A3<S3').name == 'Z3<S3'
    assert entry('S3->Aut(S3)').P.order == 6
    with pytest.raises(PreconditionError):
        entry('no-such-entry')


def test_mutated_action_is_caught():
    X = entry('id(S3)')
    report = validate_xmod(mutate_action(X, X.P.identity, 1))
    assert not report.ok
    assert 'action_identity' in {v.law for v in report.violations}
    other = next(p for p in range(X.P.order) if p != X.P.identity)
    assert not validate_xmod(mutate_action(X, other, 1)).ok
    with pytest.raises(PreconditionError):
        mutate_action(X, other, 1, X.action[other][1])


def test_every_single_entry_mutation_is_caught():
    mutations = 0
    for name in names(4):
        X = entry(name)
        if X.M.order < 2:
            continue
        for p in range(X.P.order):
            for m in range(X.M.order):
                for value in range(X.M.order):
                    if value == X.action[p][m]:
                        continue
                    report = validate_xmod(mutate_action(X, p, m, value))
                    assert not report.ok, (name, p, m, value)
                    assert report.violations[0].witness, (name, p, m, value)
                    mutations += 1
    assert mutations > 0

def test_streamed_validation():
    events = list(XModValidator(entry('id(Z3)')).run(stream=True))
    assert events[0].type == 'start'
    assert events[-1].type == 'end'
    assert {e.payload['law'] for e in events if e.type == 'progress'} == {
        'mu_loop', 'mu_hom', 'action_identity', 'action_composition', 'action_automorphism', 'CM1', 'CM2'}
    assert not any(e.type == 'violation' for e in events)


def test_normal_inclusion_needs_normality():
    S3 = symmetric(3)
    order_two = next(s for s in S3.subgroups() if len(s) == 2)
    with pytest.raises(PreconditionError):
        CrossedModule.normal_inclusion(S3, order_two)


def test_load_from_yaml():
    X = load_xmod(Z4_TO_Z2)
    assert X.name == 'Z4->Z2'
    assert X.mu == (0, 1, 0, 1)
    assert validate_xmod(X).ok
    assert load_xmod("id(S3)").name == 'id(S3)'
    identity = load_xmod("{M: S3, P: S3, mu: identity, action: conjugation}")
    assert validate_xmod(identity).ok


def test_load_errors():
    with pytest.raises(ParseError):
        load_xmod("name: X\nM: Z2\n")
    with pytest.raises(ParseError) as info:
        load_xmod("M: [Z2\nP: Z2\n")
    assert info.value.line is not None
    with pytest.raises(ParseError):
        load_xmod("[1, 2]")


def test_dump_and_load():
    X = entry('Z3<S3')
    Y = load_xmod(dump_xmod(X))
    assert Y.name == X.name
    assert Y.M.order == 3 and Y.P.order == 6
    assert validate_xmod(Y).ok


def test_morphisms_between_identities():
    X = entry('id(Z2)')
    found = list(morphisms(X, X))
    assert len(found) == 2
    assert all(f.check().ok for f in found)


def test_crossed_module_over_groupoid():
    Z2 = cyclic(2)
    B = FiniteGroupoid.connected(Z2, ['x', 'y'])
    mu = tuple(tuple(B.arrow(f"{o}-{e}->{o}") for e in Z2.elements) for o in B.objects)
    action = {p: (0, 1) for p in range(len(B.arrows))}
    X = CrossedModuleOverGroupoid('Z2[x,y]', B, (Z2, Z2), mu, action)
    assert validate_xmod(X).ok
    broken = CrossedModuleOverGroupoid('broken', B, (Z2, Z2), mu, {p: (0, 1) for p in range(3)})
    report = validate_xmod(broken)
    assert {v.law for v in report.violations} == {'shape'}


def test_groupoid_components_and_validation():
    C = coproduct_groupoids([FiniteGroupoid.interval(), cyclic(2).groupoid, FiniteGroupoid.interval()])
    assert C.components() == [frozenset({'0.0', '0.1'}), frozenset({'1.*'}), frozenset({'2.0', '2.1'})]
    assert validate_groupoid(C).ok
    e = C.identities[2]
    broken = C.with_entry(e, e, C.arrows.index('1.1'))
    assert 'identity' in {v.law for v in validate_groupoid(broken).violations}

def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
