"""
Cube shells in a quintuple double groupoid.

A shell has a top face T, a bottom face B and four sides. The depth edges
e00, e01, e10 and e11 run from the corners tl, tr, bl, br of T to those of B,
and the sides read

    north = (.; e00, c_B, c_T, e01)      south = (.; e10, b_B, b_T, e11)
    west  = (.; a_T, e10, e00, a_B)      east  = (.; d_T, e11, e01, d_B)

A shell is a commutative cube when T equals the fold of the other five faces,
with connections filling the cut corners.
"""
from dataclasses import dataclass, replace
from typing      import List, Optional, Tuple
import logging
import random

from .double import DoubleGroupoid, Square
from .errors import IncompatibleError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeShell:
    top: Square
    bottom: Square
    north: Square
    south: Square
    west: Square
    east: Square

    @property
    def depth(self) -> Tuple[int, int, int, int]:
        """The depth edges (e00, e01, e10, e11)."""
        return self.north.a, self.north.d, self.south.a, self.south.d

    def mismatches(self) -> List[str]:
        """The edge equations of the shell that fail."""
        T, B, N, S, W, E = self.top, self.bottom, self.north, self.south, self.west, self.east
        equations = {
            'e00': N.a == W.c, 'e01': N.d == E.c, 'e10': S.a == W.b, 'e11': S.d == E.b,
            'c_T': N.c == T.c, 'c_B': N.b == B.c, 'b_T': S.c == T.b, 'b_B': S.b == B.b,
            'a_T': W.a == T.a, 'a_B': W.d == B.a, 'd_T': E.a == T.d, 'd_B': E.d == B.d,
        }
        return [name for name, ok in equations.items() if not ok]

    def check(self, dg: DoubleGroupoid):
        """
        Raises:
            IncompatibleError: If a face is not a square or an edge equation fails.
        """
        bad = self.mismatches()
        if bad:
            raise IncompatibleError(f"Malformed cube shell: {', '.join(bad)} do not match.")
        for name in ('top', 'bottom', 'north', 'south', 'west', 'east'):
            if not dg.is_square(getattr(self, name)):
                raise IncompatibleError(f"The {name} face is not a square of {dg.name}.")

    @classmethod
    def degenerate(cls, dg: DoubleGroupoid, direction: int, face: Square) -> 'CubeShell':
        """
        The cube with two copies of `face` opposite each other in `direction`
        (1: north and south, 2: west and east, 3: top and bottom) and degenerate
        squares elsewhere.
        """
        n, a, b, c, d = face
        if direction == 3:
            return cls(face, face, dg.identity(1, c), dg.identity(1, b), dg.identity(2, a), dg.identity(2, d))
        if direction == 1:
            return cls(dg.identity(1, c), dg.identity(1, b), face, face, dg.identity(1, a), dg.identity(1, d))
        if direction == 2:
            return cls(dg.identity(2, a), dg.identity(2, d), dg.identity(2, c), dg.identity(2, b), face, face)
        raise PreconditionError(f"Cube directions are 1, 2 and 3, got {direction}.", str(direction))


def fold_array(dg: DoubleGroupoid, s: CubeShell) -> List[List[Square]]:
    e00, e01, e10, e11 = s.depth
    G = dg.base
    return [
        [dg.connection('-', e00), s.north, dg.inverse(2, dg.connection('-', e01))],
        [s.west, s.bottom, dg.inverse(2, s.east)],
        [dg.inverse(1, dg.connection('-', e10)), dg.inverse(1, s.south), dg.connection('+', G.inv(e11))],
    ]


def fold_shell(dg: DoubleGroupoid, s: CubeShell) -> Square:
    """The composite of the five faces other than the top."""
    s.check(dg)
    return dg.compose_array(fold_array(dg, s))


def cube_commutative(dg: DoubleGroupoid, s: CubeShell) -> bool:
    """
    Raises:
        IncompatibleError: For a malformed shell.
    """
    return fold_shell(dg, s) == s.top


def compose_cubes(dg: DoubleGroupoid, direction: int, c1: CubeShell, c2: CubeShell) -> CubeShell:
    """
    Direction 3 stacks c2 under c1 (c1.bottom = c2.top), direction 1 puts c2
    south of c1 (c1.south = c2.north), direction 2 puts c2 east of c1
    (c1.east = c2.west).

    Raises:
        IncompatibleError: If the shared faces differ.
    """
    if direction == 3:
        if c1.bottom != c2.top:
            raise IncompatibleError("Cubes do not share a bottom/top face.")
        return CubeShell(c1.top, c2.bottom,
                         dg.compose(1, c1.north, c2.north), dg.compose(1, c1.south, c2.south),
                         dg.compose(2, c1.west, c2.west), dg.compose(2, c1.east, c2.east))
    if direction == 1:
        if c1.south != c2.north:
            raise IncompatibleError("Cubes do not share a south/north face.")
        return CubeShell(dg.compose(1, c1.top, c2.top), dg.compose(1, c1.bottom, c2.bottom),
                         c1.north, c2.south,
                         dg.compose(1, c1.west, c2.west), dg.compose(1, c1.east, c2.east))
    if direction == 2:
        if c1.east != c2.west:
            raise IncompatibleError("Cubes do not share an east/west face.")
        return CubeShell(dg.compose(2, c1.top, c2.top), dg.compose(2, c1.bottom, c2.bottom),
                         dg.compose(2, c1.north, c2.north), dg.compose(2, c1.south, c2.south),
                         c1.west, c2.east)
    raise PreconditionError(f"Cube directions are 1, 2 and 3, got {direction}.", str(direction))


def random_commutative_cube(dg: DoubleGroupoid, rng: random.Random, bottom: Optional[Square] = None,
                            north: Optional[Square] = None, west: Optional[Square] = None) -> CubeShell:
    """
    A random commutative cube with the given faces, if any.

    Free depth edges and the n-components of the sides are drawn at random,
    the top edges are solved from the sides, and the top is the fold.

    Raises:
        IncompatibleError: If the prescribed faces do not fit together.
    """
    G = dg.base
    arrows = range(len(G.arrows))
    B = bottom if bottom is not None else dg.random_square(rng)
    if north is not None and north.b != B.c:
        raise IncompatibleError("The north face does not meet the bottom.")
    if west is not None and west.d != B.a:
        raise IncompatibleError("The west face does not meet the bottom.")
    if north is not None and west is not None and north.a != west.c:
        raise IncompatibleError("The north and west faces do not share e00.")

    def into(x: int) -> int:
        return rng.choice([f for f in arrows if G.tgt[f] == x])

    tl, tr, bl, br = G.src[B.a], G.tgt[B.c], G.tgt[B.a], G.tgt[B.b]
    e00 = north.a if north is not None else (west.c if west is not None else into(tl))
    e01 = north.d if north is not None else into(tr)
    e10 = west.b if west is not None else into(bl)
    e11 = into(br)

    def element(x: int) -> int:
        return dg.random_element(x, rng)

    N = north if north is not None else dg.square_from(element(G.tgt[e01]), a=e00, b=B.c, d=e01)
    W = west if west is not None else dg.square_from(element(G.tgt[B.a]), b=e10, c=e00, d=B.a)
    S = dg.square_from(element(G.tgt[e11]), a=e10, b=B.b, d=e11)
    E = dg.square_from(element(G.tgt[B.d]), b=e11, c=e01, d=B.d)
    shell = CubeShell(B, B, N, S, W, E)
    top = dg.compose_array(fold_array(dg, shell))
    shell = replace(shell, top=top)
    shell.check(dg)
    return shell


def random_composable_pair(dg: DoubleGroupoid, rng: random.Random, direction: int) -> Tuple[CubeShell, CubeShell]:
    """Two random commutative cubes sharing the face of `direction`."""
    if direction == 3:
        lower = random_commutative_cube(dg, rng)
        return random_commutative_cube(dg, rng, bottom=lower.top), lower
    first = random_commutative_cube(dg, rng)
    if direction == 1:
        return first, random_commutative_cube(dg, rng, bottom=_south_base(dg, rng, first), north=first.south)
    if direction == 2:
        return first, random_commutative_cube(dg, rng, bottom=_east_base(dg, rng, first), west=first.east)
    raise PreconditionError(f"Cube directions are 1, 2 and 3, got {direction}.", str(direction))


def _south_base(dg: DoubleGroupoid, rng: random.Random, c: CubeShell) -> Square:
    # bottom of the southern neighbour: its top edge is the bottom edge of c's bottom
    return dg.random_square(rng, c=c.bottom.b)


def _east_base(dg: DoubleGroupoid, rng: random.Random, c: CubeShell) -> Square:
    return dg.random_square(rng, a=c.bottom.d)
