import sys
import os
import random
from dataclasses import replace

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import (CubeShell, IncompatibleError, PreconditionError, commutative_squares_dg, compose_cubes,
                       cube_commutative, cyclic, entry, lambda_squares, names)
from vankampen.cubes import random_commutative_cube, random_composable_pair


def test_degenerate_cubes_commute():
    dg = lambda_squares(entry('id(S3)'))
    rng = random.Random(1)
    for _ in range(10):
        face = dg.random_square(rng)
        for direction in (1, 2, 3):
            assert cube_commutative(dg, CubeShell.degenerate(dg, direction, face))
    with pytest.raises(PreconditionError):
        CubeShell.degenerate(dg, 4, face)


def test_random_cubes_commute():
    dg = lambda_squares(entry('Z3<S3'))
    rng = random.Random(7)
    for _ in range(10):
        assert cube_commutative(dg, random_commutative_cube(dg, rng))


def test_wrong_top_is_detected():
    dg = lambda_squares(entry('Z2->Z2:trivial'))
    face = next(s for s in dg.squares if dg.is_thin(s))
    other = next(s for s in dg.squares if tuple(s[1:]) == tuple(face[1:]) and s != face)
    shell = replace(CubeShell.degenerate(dg, 3, face), top=other)
    assert shell.mismatches() == []
    assert not cube_commutative(dg, shell)


def test_malformed_shell():
    dg = lambda_squares(entry('id(Z3)'))
    face = next(s for s in dg.squares if s.c != dg.base.identity(0))
    shell = replace(CubeShell.degenerate(dg, 3, face), north=dg.identity(1, dg.base.identity(0)))
    assert 'c_T' in shell.mismatches()
    with pytest.raises(IncompatibleError):
        cube_commutative(dg, shell)


def test_composites_of_commutative_cubes_commute():
    for dg in (commutative_squares_dg(cyclic(3)), lambda_squares(entry('id(Z2)'))):
        rng = random.Random(11)
        for direction in (1, 2, 3):
            for _ in range(5):
                c1, c2 = random_composable_pair(dg, rng, direction)
                assert cube_commutative(dg, compose_cubes(dg, direction, c1, c2))


def _kernel_element(dg, x):
    M = dg.group(x)
    one = dg.boundary(x, M.identity)
    return next((k for k in range(M.order) if k != M.identity and dg.boundary(x, k) == one), None)


def test_cubes_over_the_catalog():
    rng = random.Random(5)
    pairs = broken_seen = 0
    for name in names():
        dg = lambda_squares(entry(name))
        for direction in (1, 2, 3):
            for _ in range(11):
                c1, c2 = random_composable_pair(dg, rng, direction)
                assert cube_commutative(dg, compose_cubes(dg, direction, c1, c2)), name
                pairs += 1
                x = dg.corner(c1.top)
                k = _kernel_element(dg, x)
                if k is None:
                    continue
                # same boundary, different top
                top = c1.top._replace(n=dg.group(x).mul(k, c1.top.n))
                broken = replace(c1, top=top)
                assert dg.is_square(top) and broken.mismatches() == []
                assert not cube_commutative(dg, broken), name
                assert not cube_commutative(dg, compose_cubes(dg, direction, broken, c2)), name
                broken_seen += 1
    assert pairs >= 1000
    assert broken_seen > 0

def test_composition_needs_a_shared_face():
    dg = lambda_squares(entry('id(Z3)'))
    rng = random.Random(2)
    c1 = random_commutative_cube(dg, rng)
    c2 = random_commutative_cube(dg, rng, bottom=dg.identity(1, dg.base.identity(0)))
    if c1.bottom != c2.top:
        with pytest.raises(IncompatibleError):
            compose_cubes(dg, 3, c1, c2)
    with pytest.raises(PreconditionError):
        compose_cubes(dg, 0, c1, c1)


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
