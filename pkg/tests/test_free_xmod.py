import sys
import os

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (BoundExceededError, FreeCrossedModule, GroupPresentation, GroupRingElement, IncompatibleError,
                       PreconditionError, Word, XModMorphism, entry, extend_universal, fcm_arithmetic, morphisms,
                       pushout_xmod, settings)
from vankampen.free_xmod import FreeCorner, PeifferOracle, check_faithfulness, sample_invariants

FREE_A = GroupPresentation(('a',), (), 'F(a)')


def projective_plane() -> FreeCrossedModule:
    return FreeCrossedModule(FREE_A, {'r': 'a a'})


def disc() -> FreeCrossedModule:
    return FreeCrossedModule(FREE_A, {'r': 'a'})


def test_generators_and_boundaries():
    F = projective_plane()
    x = F.generator('r')
    assert str(x.boundary()) == "a a"
    assert str(F.quotient) == "⟨a | a a⟩"
    assert (x * x.inverse()).is_identity
    assert F.identity().is_identity
    with pytest.raises(PreconditionError):
        F.generator('s')


def test_kernel_element_of_projective_plane():
    F = projective_plane()
    k = F.letter('r', 'a') * F.letter('r', exponent=-1)
    assert not len(k.boundary())
    a, one = GroupRingElement.of(F.system, "a"), GroupRingElement.one(F.system)
    assert k.coord == (a - one,)
    y = F.letter('r', 'a')
    assert k * y == y * k


def test_crossed_module_laws_on_samples():
    report = sample_invariants(projective_plane(), count=40, seed=3)
    assert report.ok
    assert not report.exhaustive
    assert report.checked == 120


def test_arithmetic_dispatch():
    F = projective_plane()
    x = F.generator('r')
    assert fcm_arithmetic(x, None, 'boundary') == Word.parse("a a")
    assert fcm_arithmetic(x, x, 'mul') == x * x
    assert fcm_arithmetic(x, None, 'act', 'a').coord == (GroupRingElement.of(F.system, "a"),)
    with pytest.raises(PreconditionError):
        fcm_arithmetic(x, None, 'act')
    with pytest.raises(ValueError):
        fcm_arithmetic(x, None, 'pow')
    with pytest.raises(IncompatibleError):
        x * disc().generator('r')


def test_construction_errors():
    with pytest.raises(PreconditionError) as info:
        FreeCrossedModule(FREE_A, {'r': 'a b'})
    assert info.value.key == 'r'
    S3 = GroupPresentation(('a', 'b'), ('a^2', 'b^3', 'a b a b'))
    with pytest.raises(BoundExceededError):
        FreeCrossedModule(S3, {}, settings().override(max_rules=5))


def test_peiffer_oracle_agrees_on_disc():
    F = disc()
    oracle = PeifferOracle(F, ['1', 'a'])
    assert oracle.equivalent([('r', Word(), 1)], [('r', Word.parse("a"), 1)])
    report = check_faithfulness(F, oracle, ['1', 'a'], 3)
    assert report.ok
    assert report.checked == 1 + 4 + 16 + 64
    with pytest.raises(PreconditionError):
        oracle.translate([('r', Word.parse("a a"), 1)])


def test_peiffer_oracle_with_labels_leaving_the_window():
    window = ['1', 'a']
    F = projective_plane()
    oracle = PeifferOracle(F, window)
    u = [('r', Word.parse("a"), 1), ('r', Word(), 1)]
    assert oracle.equivalent(u, list(reversed(u)))
    report = check_faithfulness(F, oracle, window, 6)
    assert report.ok, report.violations[:3]
    assert report.checked == 5461
    klein = FreeCrossedModule(GroupPresentation(('a', 'b'), (), 'F(a,b)'), {'r': 'a b a^-1 b'})
    oracle = PeifferOracle(klein, window)
    assert not oracle.equivalent(u, list(reversed(u)))
    report = check_faithfulness(klein, oracle, window, 6)
    assert report.ok, report.violations[:3]
    assert report.checked == 5461

def test_universal_extension():
    F = projective_plane()
    X = entry('Z2->Z2:trivial')
    f = extend_universal(F, {'a': '1'}, X, {'r': '1'})
    assert f.on_m(F.generator('r')) == 1
    assert f.on_m(F.letter('r', 'a')) == 1
    assert f.on_m(F.letter('r', 'a') * F.letter('r', exponent=-1)) == 0
    assert f.on_p("a a a") == 1


def test_universal_extension_rejects_bad_data():
    F = projective_plane()
    with pytest.raises(PreconditionError) as info:
        extend_universal(F, {'a': '1'}, entry('id(Z2)'), {'r': '1'})
    assert info.value.key == 'r'
    with pytest.raises(PreconditionError):
        extend_universal(F, {}, entry('id(Z2)'), {'r': '0'})


def test_pushouts():
    free = pushout_xmod(FreeCorner(FREE_A, {'r': Word.parse("a a")}))
    assert isinstance(free.apex, FreeCrossedModule)
    X, Z = entry('id(Z2)'), entry('Z2->Z2:trivial')
    g = next(h for h in morphisms(X, Z) if h.on_m(1) == 1)
    f = XModMorphism(X, X, (0, 1), (0, 1))
    result = pushout_xmod((f, g))
    assert result.apex is Z
    assert result.report.ok
    with pytest.raises(PreconditionError):
        pushout_xmod("not a corner")


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
