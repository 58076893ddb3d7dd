import sys
import os
import io

import pytest
from rich.console import Console

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import print_event, run_tests
from vankampen import (BoundExceededError, DoubleGroupoid, IncompatibleError, PreconditionError, check_laws,
                       commutative_squares_dg, count_instances, cyclic, entry, lambda_squares, mutate_action, names,
                       settings)
from vankampen.double import LAWS, LawSuite


def test_square_count():
    X = entry('id(Z2)')
    dg = lambda_squares(X)
    assert dg.size == X.squares == 16
    assert len(dg.squares) == 16
    assert all(dg.is_square(s) for s in dg.squares)
    assert dg.name == 'λ(id(Z2))'


def test_square_cap():
    dg = lambda_squares(entry('id(Z2)'), settings().override(square_cap=10))
    assert not dg.enumerable
    with pytest.raises(BoundExceededError):
        dg.squares


def test_invalid_crossed_module_is_refused():
    X = entry('id(Z2)')
    with pytest.raises(PreconditionError):
        lambda_squares(mutate_action(X, 1, 1))


def test_compositions_and_faces():
    dg = lambda_squares(entry('id(Z3)'))
    G = dg.base
    alpha = next(s for s in dg.squares if not dg.is_thin(s))
    beta = next(dg.squares_with(c=alpha.b))
    above = dg.compose(1, alpha, beta)
    assert dg.is_square(above)
    assert tuple(above[1:]) == (G.compose(alpha.a, beta.a), beta.b, alpha.c, G.compose(alpha.d, beta.d))
    assert dg.compose(1, alpha, dg.inverse(1, alpha)) == dg.identity(1, alpha.c)
    assert dg.compose(2, dg.identity(2, alpha.a), alpha) == alpha
    wrong = next(s for s in dg.squares if s.a != alpha.d)
    with pytest.raises(IncompatibleError):
        dg.compose(2, alpha, wrong)
    with pytest.raises(PreconditionError):
        dg.compose(3, alpha, beta)


def test_square_from_three_edges():
    dg = lambda_squares(entry('id(S3)'))
    for alpha in list(dg.squares_with(a=1))[:20]:
        assert dg.square_from(alpha.n, a=alpha.a, b=alpha.b, c=alpha.c) == alpha
        assert dg.square_from(alpha.n, b=alpha.b, c=alpha.c, d=alpha.d) == alpha
    with pytest.raises(PreconditionError):
        dg.square_from(0, a=1, b=1)


def test_connections_and_thin_squares():
    dg = lambda_squares(entry('id(Z3)'))
    for e in range(len(dg.base.arrows)):
        minus, plus = dg.connection('-', e), dg.connection('+', e)
        assert dg.is_square(minus) and dg.is_thin(minus)
        assert dg.compose(2, minus, plus) == dg.identity(1, e)
        assert dg.compose(1, minus, plus) == dg.identity(2, e)
    with pytest.raises(PreconditionError):
        dg.connection('x', 0)
    with pytest.raises(IncompatibleError):
        dg.thin(1, 0, 0, 0)


def test_rotation_boundary():
    dg = lambda_squares(entry('id(Z3)'))
    G = dg.base
    for alpha in dg.squares:
        n, a, b, c, d = alpha
        assert tuple(dg.rotate(alpha)[1:]) == (b, G.inv(d), G.inv(a), c)


def test_array_must_fit():
    dg = lambda_squares(entry('id(Z2)'))
    alpha = dg.identity(1, 1)
    with pytest.raises(IncompatibleError):
        dg.compose_array([[alpha, dg.identity(2, 1)], [dg.identity(1, 1), dg.identity(1, 1)]])
    assert ' | ' in dg.show_array([[alpha, alpha]])


def test_laws_hold_exhaustively():
    report = check_laws(lambda_squares(entry('id(Z2)')))
    assert report.ok
    assert report.exhaustive


def test_instance_counts():
    dg = lambda_squares(entry('id(Z2)'))
    assert count_instances(dg, 'interchange') == 2 ** 4 * 2 ** 8
    assert count_instances(dg, 'groupoid_1') == 16 + 16 * 8 * 8
    assert count_instances(dg, 'faces') == 2 * 16 * 8 + 4 * 2
    assert count_instances(dg, 'cancellation') == 4
    assert count_instances(lambda_squares(entry('id(Z3)')), 'interchange') == 3 ** 4 * 3 ** 8
    with pytest.raises(PreconditionError):
        count_instances(dg, 'commutativity')


def test_laws_hold_exhaustively_on_the_catalog():
    bounded = settings().override(law_cap=10_000)
    complete = []
    for name in names():
        dg = lambda_squares(entry(name), bounded)
        fitting = [law for law in LAWS if count_instances(dg, law) <= bounded.law_cap]
        report = check_laws(dg, fitting, bounded)
        assert report.exhaustive, name
        assert not report.violations, (name, report.violations[:1])
        if len(fitting) == len(LAWS):
            complete.append(name)
        else:
            with pytest.raises(BoundExceededError):
                LawSuite(dg, settings=bounded)
    assert {'1->1', 'id(Z2)', '1->Z2', 'Z2->Z2:trivial', 'Z2->1'} <= set(complete)


def test_laws_above_the_cap_need_an_explicit_sample():
    cheap = settings().override(law_cap=1_000, law_sample_cap=200)
    dg = lambda_squares(entry('Z3<S3'), cheap)
    with pytest.raises(BoundExceededError) as info:
        check_laws(dg, settings=cheap)
    assert 'law_cap' in str(info.value)
    report = check_laws(dg, settings=cheap, sample=True)
    assert report.ok
    assert not report.exhaustive


def test_laws_catch_a_broken_action():
    X = entry('id(Z2)')
    broken = DoubleGroupoid(mutate_action(X, 1, 1), validate=False)
    report = check_laws(broken, ['groupoid_1'])
    assert not report.ok
    assert {v.law for v in report.violations} == {'groupoid_1'}


def test_commutative_squares():
    dg = commutative_squares_dg(cyclic(3))
    assert dg.size == 27
    assert all(dg.is_thin(s) for s in dg.squares)
    assert check_laws(dg).ok


def test_law_suite_stream():
    suite = LawSuite(lambda_squares(entry('id(Z2)')), ['cancellation', 'transport'])
    events = list(suite.run(stream=True))
    assert events[0].payload['laws'] == ['cancellation', 'transport']
    assert sorted(e.payload['law'] for e in events if e.type == 'progress') == ['cancellation', 'transport']
    assert events[-1].payload['result'].ok
    console = Console(file=io.StringIO(), width=120, record=True)
    for event in events:
        print_event(event, console)
    assert "λ(id(Z2)) finished" in console.export_text()
    assert len(LAWS) == 10
    with pytest.raises(PreconditionError):
        LawSuite(suite.dg, ['commutativity'])


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
