"""
Double groupoids with connections built from crossed modules.

A square (n; a, b, c, d) has left edge a, bottom edge b, top edge c and right
edge d, read with direction 1 downward and direction 2 rightward:

        c
    tl ---> tr
  a |       | d
    v       v
    bl ---> br
        b

Composition of edges is diagrammatic, so ab and cd both run tl -> br, and
n lies in M(br) with mu(n) = b^-1 a^-1 c d. Squares are plain tuples of
indices: n indexes M(br) and the edges index arrows of the base groupoid.
"""
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools   import cached_property
from typing      import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union
import concurrent.futures
import logging
import random

from .config import Settings, settings as default_settings
from .errors import BoundExceededError, IncompatibleError, PreconditionError
from .event  import Event, EventBroker, final_result
from .finite import FiniteGroup, FiniteGroupoid, trivial_group
from .schema import Violation, ValidationReport
from .utils  import render
from .xmod   import CrossedModule, CrossedModuleOverGroupoid, XModMorphism, validate_xmod

logger = logging.getLogger(__name__)


class Square(NamedTuple):
    n: int
    a: int
    b: int
    c: int
    d: int


Array = Sequence[Sequence[Square]]


class DoubleGroupoid:
    """
    The double groupoid of quintuples (n; a, b, c, d) of a crossed module over a
    groupoid.

    Compositions (α above β for +1, α left of γ for +2):

        α +1 β = (n_β · ^(d_β^-1) n_α; a_α a_β, b_β, c_α, d_α d_β)
        α +2 γ = (^(b_γ^-1) n_α · n_γ; a_α, b_α b_γ, c_α c_γ, d_γ)

    Squares are enumerated lazily; `squares` lists them all only below the
    configured cap.
    """
    def __init__(self, X: Union[CrossedModule, CrossedModuleOverGroupoid], name: Optional[str] = None,
                 settings: Optional[Settings] = None, validate: bool = True):
        self.settings = settings or default_settings()
        if isinstance(X, CrossedModule):
            X = X.over_groupoid
        if validate:
            report = validate_xmod(X, self.settings)
            if not report.ok:
                raise PreconditionError(f"{X.name} is not a crossed module: {', '.join(report.laws())} fail.", X.name)
        self.X = X
        self.base: FiniteGroupoid = X.base
        self.name = name or f"λ({X.name})"

    # ----- elementary data -----
    def group(self, x: int) -> FiniteGroup:
        return self.X.groups[x]

    def corner(self, alpha: Square) -> int:
        """The bottom-right object, where n lives."""
        return self.base.tgt[alpha.b]

    def boundary(self, x: int, n: int) -> int:
        return self.X.mu[x][n]

    def _path(self, *arrows: int) -> int:
        return self.base.compose_path(list(arrows))

    def _inv(self, f: int) -> int:
        return self.base.inv(f)

    def is_square(self, alpha: Square) -> bool:
        """Endpoint compatibility plus mu(n) = b^-1 a^-1 c d."""
        B = self.base
        n, a, b, c, d = alpha
        if B.src[a] != B.src[c] or B.tgt[a] != B.src[b] or B.tgt[c] != B.src[d] or B.tgt[b] != B.tgt[d]:
            return False
        x = B.tgt[b]
        if not 0 <= n < self.group(x).order:
            return False
        return self.boundary(x, n) == self._path(self._inv(b), self._inv(a), c, d)

    def _require(self, alpha: Square):
        if not self.is_square(alpha):
            raise IncompatibleError(f"{self.show(alpha)} is not a square of {self.name}.")

    def square_from(self, n: int, a: Optional[int] = None, b: Optional[int] = None,
                    c: Optional[int] = None, d: Optional[int] = None) -> Square:
        """
        Completes a square from n and three of its edges by solving
        mu(n) = b^-1 a^-1 c d for the missing one.

        Raises:
            PreconditionError: Unless exactly one edge is missing.
            IncompatibleError: If the given edges do not fit.
        """
        missing = [k for k, v in (('a', a), ('b', b), ('c', c), ('d', d)) if v is None]
        if len(missing) != 1:
            raise PreconditionError("Exactly one edge must be left out.", ','.join(missing))
        B = self.base
        try:
            if d is None:
                m = self.boundary(B.tgt[b], n)
                d = self._path(self._inv(c), a, b, m)
            elif c is None:
                m = self.boundary(B.tgt[d], n)
                c = self._path(a, b, m, self._inv(d))
            elif a is None:
                m = self.boundary(B.tgt[d], n)
                a = self._path(c, d, B.inv(m), self._inv(b))
            else:
                m = self.boundary(B.tgt[d], n)
                b = self._path(self._inv(a), c, d, B.inv(m))
        except (IncompatibleError, IndexError):
            raise IncompatibleError("The given edges do not bound a square.")
        alpha = Square(n, a, b, c, d)
        self._require(alpha)
        return alpha

    # ----- enumeration -----
    def squares_with(self, a: Optional[int] = None, c: Optional[int] = None) -> Iterator[Square]:
        """Every square with the given left and/or top edge."""
        B = self.base
        if a is not None:
            lefts = [a]
        elif c is not None:
            lefts = [f for f in range(len(B.arrows)) if B.src[f] == B.src[c]]
        else:
            lefts = range(len(B.arrows))
        for a_ in lefts:
            tops = [c] if c is not None else [f for f in range(len(B.arrows)) if B.src[f] == B.src[a_]]
            for c_ in tops:
                if B.src[c_] != B.src[a_]:
                    continue
                for b_ in (f for f in range(len(B.arrows)) if B.src[f] == B.tgt[a_]):
                    x = B.tgt[b_]
                    head = self._path(self._inv(c_), a_, b_)
                    for n in range(self.group(x).order):
                        yield Square(n, a_, b_, c_, B.compose(head, self.boundary(x, n)))

    def count_with(self, a: Optional[int] = None, c: Optional[int] = None) -> int:
        B = self.base
        out_size = {x: sum(self.group(B.tgt[f]).order for f in range(len(B.arrows)) if B.src[f] == x)
                    for x in range(len(B.objects))}
        out_deg = {x: sum(1 for f in range(len(B.arrows)) if B.src[f] == x) for x in range(len(B.objects))}
        if a is not None and c is not None:
            return out_size[B.tgt[a]] if B.src[a] == B.src[c] else 0
        if a is not None:
            return out_deg[B.src[a]] * out_size[B.tgt[a]]
        if c is not None:
            return sum(out_size[B.tgt[f]] for f in range(len(B.arrows)) if B.src[f] == B.src[c])
        return sum(out_deg[B.src[f]] * out_size[B.tgt[f]] for f in range(len(B.arrows)))

    @cached_property
    def size(self) -> int:
        return self.count_with()

    @cached_property
    def profile(self) -> 'SquareProfile':
        return SquareProfile(self)

    @property
    def enumerable(self) -> bool:
        return self.size <= self.settings.square_cap

    @cached_property
    def squares(self) -> Tuple[Square, ...]:
        """
        Raises:
            BoundExceededError: Above the configured square cap.
        """
        if not self.enumerable:
            raise BoundExceededError(f"{self.name} has {self.size} squares, above the cap {self.settings.square_cap}.")
        return tuple(self.squares_with())

    def random_element(self, x: int, rng: random.Random) -> int:
        return rng.randrange(self.group(x).order)

    def random_square(self, rng: random.Random, a: Optional[int] = None, c: Optional[int] = None) -> Square:
        B = self.base
        arrows = range(len(B.arrows))
        if a is None:
            a = rng.choice([f for f in arrows if B.src[f] == B.src[c]]) if c is not None else rng.choice(arrows)
        if c is None:
            c = rng.choice([f for f in arrows if B.src[f] == B.src[a]])
        b = rng.choice([f for f in arrows if B.src[f] == B.tgt[a]])
        return self.square_from(self.random_element(B.tgt[b], rng), a=a, b=b, c=c)

    # ----- structure -----
    def compose(self, direction: int, alpha: Square, beta: Square) -> Square:
        """
        Composite in direction 1 (alpha above beta) or 2 (alpha left of beta).

        Raises:
            IncompatibleError: If the shared faces differ.
        """
        G = self.base
        if direction == 1:
            if alpha.b != beta.c:
                raise IncompatibleError(f"{self.show(alpha)} +1 {self.show(beta)}: bottom and top differ.")
            x = self.corner(beta)
            n = self.group(x).mul(beta.n, self.X.act(G.inv(beta.d), alpha.n))
            return Square(n, G.compose(alpha.a, beta.a), beta.b, alpha.c, G.compose(alpha.d, beta.d))
        if direction == 2:
            if alpha.d != beta.a:
                raise IncompatibleError(f"{self.show(alpha)} +2 {self.show(beta)}: right and left differ.")
            x = self.corner(beta)
            n = self.group(x).mul(self.X.act(G.inv(beta.b), alpha.n), beta.n)
            return Square(n, alpha.a, G.compose(alpha.b, beta.b), G.compose(alpha.c, beta.c), beta.d)
        raise PreconditionError(f"Direction must be 1 or 2, got {direction}.", str(direction))

    def identity(self, direction: int, e: int) -> Square:
        """ε1(e) = (1; 1, e, e, 1) and ε2(e) = (1; e, 1, 1, e)."""
        G = self.base
        x, y = G.src[e], G.tgt[e]
        one = self.group(y).identity
        if direction == 1:
            return Square(one, G.identity(x), e, e, G.identity(y))
        if direction == 2:
            return Square(one, e, G.identity(y), G.identity(x), e)
        raise PreconditionError(f"Direction must be 1 or 2, got {direction}.", str(direction))

    degenerate = identity

    def inverse(self, direction: int, alpha: Square) -> Square:
        G = self.base
        n, a, b, c, d = alpha
        if direction == 1:
            x = G.src[d]
            return Square(self.group(x).inv(self.X.act(d, n)), G.inv(a), c, b, G.inv(d))
        if direction == 2:
            x = G.src[b]
            return Square(self.group(x).inv(self.X.act(b, n)), d, G.inv(b), G.inv(c), a)
        raise PreconditionError(f"Direction must be 1 or 2, got {direction}.", str(direction))

    def connection(self, kind: str, e: int) -> Square:
        """Γ-(e) = (1; 1, e, 1, e) and Γ+(e) = (1; e, 1, e, 1)."""
        G = self.base
        x, y = G.src[e], G.tgt[e]
        one = self.group(y).identity
        if kind in ('-', 'Γ-', 'minus'):
            return Square(one, G.identity(x), e, G.identity(x), e)
        if kind in ('+', 'Γ+', 'plus'):
            return Square(one, e, G.identity(y), e, G.identity(y))
        raise PreconditionError(f"Connection kind must be '-' or '+', got {kind}.", kind)

    def thin(self, a: int, b: int, c: int, d: int) -> Square:
        """The thin square with the given commuting boundary."""
        G = self.base
        if G.tgt[a] != G.src[b] or G.tgt[c] != G.src[d] or G.src[a] != G.src[c] \
                or G.compose(a, b) != G.compose(c, d):
            raise IncompatibleError("A thin square needs a commuting boundary.")
        return Square(self.group(G.tgt[b]).identity, a, b, c, d)

    def is_thin(self, alpha: Square) -> bool:
        return alpha.n == self.group(self.corner(alpha)).identity

    def act(self, p: int, alpha: Square) -> Square:
        """^p alpha for p: x -> y and alpha in the crossed module at y, by conjugation with degenerate squares."""
        return self.compose_array([
            [self.connection('-', p), self.connection('+', p), self.identity(1, self.base.inv(p))],
            [self.identity(1, p), alpha, self.identity(1, self.base.inv(p))],
        ])

    # ----- arrays -----
    def evaluate_array(self, A: Array, order: str = 'rows') -> Square:
        """
        Composes a rectangular array. "rows" composes each row with +2 and then
        the results with +1; "columns" composes each column with +1 first.
        """
        rows = [list(r) for r in A]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise IncompatibleError("Arrays must be rectangular and nonempty.")
        self.check_array(rows)
        if order == 'rows':
            parts = [self._fold(2, r) for r in rows]
            return self._fold(1, parts)
        if order == 'columns':
            parts = [self._fold(1, [r[j] for r in rows]) for j in range(len(rows[0]))]
            return self._fold(2, parts)
        raise PreconditionError(f"Order must be 'rows' or 'columns', got {order}.", order)

    def compose_array(self, A: Array) -> Square:
        return self.evaluate_array(A, 'rows')

    def check_array(self, rows: Array):
        """
        Raises:
            IncompatibleError: Naming the first pair of neighbouring cells whose
                shared edges differ.
        """
        for i, row in enumerate(rows):
            for j, alpha in enumerate(row):
                if j + 1 < len(row) and alpha.d != row[j + 1].a:
                    raise IncompatibleError(f"Cells ({i},{j}) and ({i},{j + 1}) do not share an edge.")
                if i + 1 < len(rows) and alpha.b != rows[i + 1][j].c:
                    raise IncompatibleError(f"Cells ({i},{j}) and ({i + 1},{j}) do not share an edge.")

    def _fold(self, direction: int, items: Sequence[Square]) -> Square:
        result = items[0]
        for alpha in items[1:]:
            result = self.compose(direction, result, alpha)
        return result

    def rotation_array(self, alpha: Square) -> List[List[Square]]:
        G = self.base
        n, a, b, c, d = alpha
        return [
            [self.identity(1, G.inv(a)), self.connection('-', c), self.identity(2, c)],
            [self.inverse(2, self.connection('+', a)), alpha, self.inverse(2, self.connection('-', d))],
            [self.identity(2, b), self.connection('+', b), self.identity(1, G.inv(d))],
        ]

    def rotate(self, alpha: Square) -> Square:
        """σ(alpha), the composite of the rotation array; its boundary is (b, d^-1, a^-1, c)."""
        return self.compose_array(self.rotation_array(alpha))

    def cm2_array(self, n: Square, m: Square) -> List[List[Square]]:
        """
        The array whose two evaluations give the Peiffer identity for two
        elements of the crossed module at one object (squares with left, top
        and right edges identities).
        """
        x = self.base.src[n.a]
        one = self.identity(1, self.base.identity(x))
        return [
            [n, one, self.inverse(2, n)],
            [self.identity(1, n.b), m, self.identity(1, self.base.inv(n.b))],
        ]

    # ----- output -----
    def show(self, alpha: Square) -> str:
        G = self.base
        try:
            n = self.group(self.corner(alpha)).elements[alpha.n]
        except IndexError:
            n = str(alpha.n)
        return f"({n}; {G.arrows[alpha.a]}, {G.arrows[alpha.b]}, {G.arrows[alpha.c]}, {G.arrows[alpha.d]})"

    def show_array(self, A: Array) -> str:
        return render('array.j2', rows=[[self.show(alpha) for alpha in row] for row in A])

    def __repr__(self):
        return f"DoubleGroupoid('{self.name}', squares={self.size})"


def trivial_xmod_over(G: FiniteGroupoid) -> CrossedModuleOverGroupoid:
    """The crossed module 1 -> G over a groupoid."""
    one = trivial_group()
    return CrossedModuleOverGroupoid(f"1->{G.name}", G, tuple(one for _ in G.objects),
                                     tuple((G.identity(x),) for x in range(len(G.objects))),
                                     {p: (0,) for p in range(len(G.arrows))})


class CommutativeSquares(DoubleGroupoid):
    """
    □G: the squares (a, b, c, d) of a groupoid with ab = cd. Every square is
    thin and every composite of commutative squares is commutative.
    """
    def __init__(self, G: Union[FiniteGroupoid, FiniteGroup], settings: Optional[Settings] = None):
        if isinstance(G, FiniteGroup):
            G = G.groupoid
        super().__init__(trivial_xmod_over(G), f"□{G.name}", settings, validate=False)

    def show(self, alpha: Square) -> str:
        G = self.base
        return f"({G.arrows[alpha.a]}, {G.arrows[alpha.b]}, {G.arrows[alpha.c]}, {G.arrows[alpha.d]})"


def lambda_squares(X: Union[CrossedModule, CrossedModuleOverGroupoid],
                   settings: Optional[Settings] = None) -> DoubleGroupoid:
    """
    The double groupoid λ(X) of quintuples.

    Raises:
        PreconditionError: If X fails validation.
    """
    return DoubleGroupoid(X, settings=settings)


def commutative_squares_dg(G: Union[FiniteGroupoid, FiniteGroup], settings: Optional[Settings] = None) -> CommutativeSquares:
    return CommutativeSquares(G, settings)


def compose(dg: DoubleGroupoid, direction: int, alpha: Square, beta: Square) -> Square:
    return dg.compose(direction, alpha, beta)


def compose_array(dg: DoubleGroupoid, A: Array) -> Square:
    return dg.compose_array(A)


def connection(dg: DoubleGroupoid, kind: str, e: int) -> Square:
    return dg.connection(kind, e)


def degenerate(dg: DoubleGroupoid, direction: int, e: int) -> Square:
    return dg.identity(direction, e)


def is_thin(dg: DoubleGroupoid, alpha: Square) -> bool:
    return dg.is_thin(alpha)


def rotate(dg: DoubleGroupoid, alpha: Square) -> Square:
    return dg.rotate(alpha)


@dataclass(frozen=True, eq=False)
class LambdaMorphism:
    """The map of squares induced by a morphism of crossed modules of groups."""
    source: DoubleGroupoid
    target: DoubleGroupoid
    f: XModMorphism

    def __call__(self, alpha: Square) -> Square:
        n, a, b, c, d = alpha
        p = self.f.on_p
        return Square(self.f.on_m(n), p(a), p(b), p(c), p(d))


def lambda_morphism(f: XModMorphism, settings: Optional[Settings] = None) -> LambdaMorphism:
    return LambdaMorphism(lambda_squares(f.source, settings), lambda_squares(f.target, settings), f)


# ----- law suite -----

LAWS = ('groupoid_1', 'groupoid_2', 'faces', 'interchange', 'cancellation', 'transport',
        'thin_closure', 'thin_boundary', 'rotation', 'cm2_array')


class SquareProfile:
    """Counts of squares by their edges, enough to size every law exactly."""
    def __init__(self, dg: DoubleGroupoid):
        self.size = 0
        self.by = {k: Counter() for k in 'abcd'}
        self.thin = {k: Counter() for k in 'abcd'}
        self.pairs: Dict[str, Counter] = {k: Counter() for k in ('ac', 'cb', 'ad', 'bd')}
        self.d_by_c: Dict[int, Counter] = defaultdict(Counter)
        self.b_by_a: Dict[int, Counter] = defaultdict(Counter)
        for alpha in dg.squares_with():
            self.size += 1
            edges = dict(zip('abcd', alpha[1:]))
            thin = dg.is_thin(alpha)
            for k, e in edges.items():
                self.by[k][e] += 1
                if thin:
                    self.thin[k][e] += 1
            for k in self.pairs:
                self.pairs[k][(edges[k[0]], edges[k[1]])] += 1
            self.d_by_c[alpha.c][alpha.d] += 1
            self.b_by_a[alpha.a][alpha.b] += 1

    def composable(self, direction: int, thin: bool = False) -> int:
        by = self.thin if thin else self.by
        if direction == 1:
            return sum(n * by['c'][e] for e, n in by['b'].items())
        return sum(n * by['a'][e] for e, n in by['d'].items())

    def triples(self, direction: int) -> int:
        if direction == 1:
            return sum(n * self.by['b'][c] * self.by['c'][b] for (c, b), n in self.pairs['cb'].items())
        return sum(n * self.by['d'][a] * self.by['a'][d] for (a, d), n in self.pairs['ad'].items())

    def quadruples(self) -> int:
        total = 0
        for (b, d), n in self.pairs['bd'].items():
            inner = sum(k * j * self.pairs['ac'][(x, y)]
                        for x, k in self.d_by_c[b].items() for y, j in self.b_by_a[d].items())
            total += n * inner
        return total


def count_instances(dg: DoubleGroupoid, law: str) -> int:
    """
    The exact number of instances `LawSuite` enumerates for a law.

    Raises:
        PreconditionError: For an unknown law.
    """
    if law not in LAWS:
        raise PreconditionError(f"Unknown law: {law}.", law)
    G = dg.base
    E = len(G.arrows)
    if law == 'cancellation':
        return 2 * E
    if law == 'transport':
        return 2 * sum(1 for e in range(E) for f in range(E) if G.src[f] == G.tgt[e])
    if law == 'cm2_array':
        sizes = [sum(1 for s in dg.squares_with(a=G.identity(x), c=G.identity(x)) if s.d == G.identity(x))
                 for x in range(len(G.objects))]
        return sum(n * n for n in sizes)
    profile = dg.profile
    if law in ('groupoid_1', 'groupoid_2'):
        return profile.size + profile.triples(1 if law == 'groupoid_1' else 2)
    if law == 'faces':
        return profile.composable(1) + profile.composable(2) + 4 * E
    if law == 'interchange':
        return profile.quadruples()
    if law == 'thin_closure':
        return profile.composable(1, thin=True) + profile.composable(2, thin=True) + E
    if law == 'rotation':
        return profile.composable(2)
    return profile.size


class LawSuite:
    """
    Checks the double-groupoid laws on a quintuple double groupoid.

    Every law is enumerated exhaustively when its instance count is at most
    `law_cap`. Above the cap the suite refuses to run unless `sample` is set,
    in which case those laws draw `law_sample_cap` instances with the
    configured seed and the report is marked non-exhaustive. Laws run in
    parallel workers; `run(stream=True)` yields their events.

    Raises:
        PreconditionError: For an unknown law.
        BoundExceededError: If a law is above `law_cap` and `sample` is unset.
    """
    def __init__(self, dg: DoubleGroupoid, laws: Optional[Sequence[str]] = None,
                 settings: Optional[Settings] = None, sample: bool = False):
        unknown = [law for law in (laws or ()) if law not in LAWS]
        if unknown:
            raise PreconditionError(f"Unknown law: {unknown[0]}.", unknown[0])
        self.dg = dg
        self.laws = tuple(laws or LAWS)
        self.settings = settings or dg.settings
        self.instances = {law: count_instances(dg, law) for law in self.laws}
        self.exhaustive = {law: n <= self.settings.law_cap for law, n in self.instances.items()}
        over = [law for law, ok in self.exhaustive.items() if not ok]
        if over and not sample:
            law = over[0]
            raise BoundExceededError(f"{law} on {dg.name} has {self.instances[law]} instances, above law_cap "
                                     f"{self.settings.law_cap}; ask for a sample to check it.")

    # ----- instances -----
    def _squares(self, exhaustive: bool, rng: random.Random) -> Iterator[Square]:
        if exhaustive:
            yield from self.dg.squares_with()
        else:
            for _ in range(self.settings.law_sample_cap):
                yield self.dg.random_square(rng)

    def _pairs(self, direction: int, exhaustive: bool, rng: random.Random) -> Iterator[Tuple[Square, Square]]:
        dg = self.dg
        if exhaustive:
            for alpha in dg.squares_with():
                partners = dg.squares_with(c=alpha.b) if direction == 1 else dg.squares_with(a=alpha.d)
                for beta in partners:
                    yield alpha, beta
        else:
            for _ in range(self.settings.law_sample_cap):
                alpha = dg.random_square(rng)
                beta = dg.random_square(rng, c=alpha.b) if direction == 1 else dg.random_square(rng, a=alpha.d)
                yield alpha, beta

    def _thin_pairs(self, direction: int) -> Iterator[Tuple[Square, Square]]:
        thin: Dict[int, List[Square]] = defaultdict(list)
        squares = [s for s in self.dg.squares_with() if self.dg.is_thin(s)]
        for s in squares:
            thin[s.c if direction == 1 else s.a].append(s)
        for alpha in squares:
            for beta in thin[alpha.b if direction == 1 else alpha.d]:
                yield alpha, beta

    # ----- laws -----
    def check(self, law: str) -> Tuple[List[Violation], int, bool]:
        dg = self.dg
        exhaustive = self.exhaustive.get(law, count_instances(dg, law) <= self.settings.law_cap)
        rng = random.Random(self.settings.seed)
        out: List[Violation] = []
        checked = 0
        show = dg.show

        def fail(witness: Dict[str, Square], detail: str = ''):
            out.append(Violation(law, {k: show(v) for k, v in witness.items()}, detail))

        if law in ('groupoid_1', 'groupoid_2'):
            i = 1 if law == 'groupoid_1' else 2
            for alpha in self._squares(exhaustive, rng):
                checked += 3
                head = dg.identity(i, alpha.c if i == 1 else alpha.a)
                tail = dg.identity(i, alpha.b if i == 1 else alpha.d)
                if dg.compose(i, head, alpha) != alpha or dg.compose(i, alpha, tail) != alpha:
                    fail({"alpha": alpha}, "identity law")
                if dg.compose(i, alpha, dg.inverse(i, alpha)) != head:
                    fail({"alpha": alpha}, "inverse law")
            for alpha, beta in self._pairs(i, exhaustive, rng):
                partners = dg.squares_with(c=beta.b) if i == 1 else dg.squares_with(a=beta.d)
                if not exhaustive:
                    partners = [dg.random_square(rng, c=beta.b) if i == 1 else dg.random_square(rng, a=beta.d)]
                ab = dg.compose(i, alpha, beta)
                for delta in partners:
                    checked += 1
                    if dg.compose(i, ab, delta) != dg.compose(i, alpha, dg.compose(i, beta, delta)):
                        fail({"alpha": alpha, "beta": beta, "gamma": delta}, "associativity")
            return out, checked, exhaustive

        if law == 'faces':
            G = dg.base
            for i in (1, 2):
                for alpha, beta in self._pairs(i, exhaustive, rng):
                    checked += 1
                    s = dg.compose(i, alpha, beta)
                    if i == 1:
                        expected = (G.compose(alpha.a, beta.a), beta.b, alpha.c, G.compose(alpha.d, beta.d))
                    else:
                        expected = (alpha.a, G.compose(alpha.b, beta.b), G.compose(alpha.c, beta.c), beta.d)
                    if tuple(s[1:]) != expected or not dg.is_square(s):
                        fail({"alpha": alpha, "beta": beta}, f"faces of the +{i} composite")
            for e in range(len(G.arrows)):
                for s in (dg.identity(1, e), dg.identity(2, e), dg.connection('-', e), dg.connection('+', e)):
                    checked += 1
                    if not dg.is_square(s) or not dg.is_thin(s):
                        fail({"square": s}, f"degenerate square on {G.arrows[e]}")
            return out, checked, exhaustive

        if law == 'interchange':
            if exhaustive:
                quads = ((alpha, beta, gamma, delta)
                         for alpha in dg.squares_with()
                         for gamma in dg.squares_with(a=alpha.d)
                         for beta in dg.squares_with(c=alpha.b)
                         for delta in dg.squares_with(a=beta.d, c=gamma.b))
            else:
                def sample():
                    for _ in range(self.settings.law_sample_cap):
                        alpha = dg.random_square(rng)
                        gamma = dg.random_square(rng, a=alpha.d)
                        beta = dg.random_square(rng, c=alpha.b)
                        yield alpha, beta, gamma, dg.random_square(rng, a=beta.d, c=gamma.b)
                quads = sample()
            for alpha, beta, gamma, delta in quads:
                checked += 1
                rows = dg.compose(1, dg.compose(2, alpha, gamma), dg.compose(2, beta, delta))
                cols = dg.compose(2, dg.compose(1, alpha, beta), dg.compose(1, gamma, delta))
                if rows != cols:
                    fail({"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta})
            return out, checked, exhaustive

        if law == 'cancellation':
            for e in range(len(dg.base.arrows)):
                checked += 2
                minus, plus = dg.connection('-', e), dg.connection('+', e)
                if dg.compose(2, minus, plus) != dg.identity(1, e):
                    fail({"Γ-": minus, "Γ+": plus}, "row composite is not ε1")
                if dg.compose(1, minus, plus) != dg.identity(2, e):
                    fail({"Γ-": minus, "Γ+": plus}, "column composite is not ε2")
            return out, checked, True

        if law == 'transport':
            G = dg.base
            for e in range(len(G.arrows)):
                for f in (g for g in range(len(G.arrows)) if G.src[g] == G.tgt[e]):
                    checked += 2
                    ef = G.compose(e, f)
                    minus = dg.compose_array([[dg.connection('-', e), dg.identity(2, e)],
                                              [dg.identity(1, e), dg.connection('-', f)]])
                    plus = dg.compose_array([[dg.connection('+', e), dg.identity(1, f)],
                                             [dg.identity(2, f), dg.connection('+', f)]])
                    if minus != dg.connection('-', ef):
                        fail({"Γ-(ef)": dg.connection('-', ef)}, f"e={G.arrows[e]}, f={G.arrows[f]}")
                    if plus != dg.connection('+', ef):
                        fail({"Γ+(ef)": dg.connection('+', ef)}, f"e={G.arrows[e]}, f={G.arrows[f]}")
            return out, checked, True

        if law == 'thin_closure':
            for i in (1, 2):
                pairs = self._thin_pairs(i) if exhaustive else self._pairs(i, exhaustive, rng)
                for alpha, beta in pairs:
                    if not (dg.is_thin(alpha) and dg.is_thin(beta)):
                        continue
                    checked += 1
                    if not dg.is_thin(dg.compose(i, alpha, beta)):
                        fail({"alpha": alpha, "beta": beta}, f"+{i} composite is not thin")
            G = dg.base
            for e in range(len(G.arrows)):
                checked += 1
                if not all(dg.is_thin(s) for s in (dg.identity(1, e), dg.identity(2, e),
                                                    dg.connection('-', e), dg.connection('+', e))):
                    fail({"edge": dg.identity(1, e)}, "a degenerate square is not thin")
            return out, checked, exhaustive

        if law == 'thin_boundary':
            seen: Dict[Tuple[int, int, int, int], Square] = {}
            for alpha in self._squares(exhaustive, rng):
                if not dg.is_thin(alpha):
                    continue
                checked += 1
                boundary = tuple(alpha[1:])
                other = seen.setdefault(boundary, alpha)
                if other != alpha:
                    fail({"alpha": alpha, "beta": other}, "two thin squares share a boundary")
                if dg.thin(*boundary) != alpha:
                    fail({"alpha": alpha}, "thin filler differs")
            return out, checked, exhaustive

        if law == 'rotation':
            rotated: Dict[Square, Square] = {}

            def sigma(alpha: Square) -> Square:
                if alpha not in rotated:
                    rotated[alpha] = dg.rotate(alpha)
                return rotated[alpha]

            for alpha, beta in self._pairs(2, exhaustive, rng):
                checked += 1
                lhs = sigma(dg.compose(2, alpha, beta))
                rhs = dg.compose(1, sigma(alpha), sigma(beta))
                if lhs != rhs:
                    fail({"alpha": alpha, "beta": beta}, "σ(α +2 β) != σα +1 σβ")
                if dg.is_thin(alpha) and not dg.is_thin(sigma(alpha)):
                    fail({"alpha": alpha}, "σ of a thin square is not thin")
            return out, checked, exhaustive

        if law == 'cm2_array':
            G = dg.base
            for x in range(len(G.objects)):
                one = G.identity(x)
                elements = [s for s in dg.squares_with(a=one, c=one) if s.d == one]
                for n in elements:
                    for m in elements:
                        checked += 1
                        A = dg.cm2_array(n, m)
                        if dg.evaluate_array(A, 'rows') != dg.evaluate_array(A, 'columns'):
                            fail({"n": n, "m": m}, "evaluations of the Peiffer array differ")
            return out, checked, True

        raise ValueError(f"Unknown law: {law}")

    # ----- running -----
    def run(self, stream: bool = False):
        if stream:
            return self._run_stream()
        return final_result(self._run_stream())

    def _run_stream(self) -> Iterator[Event]:
        source = f"Laws:{self.dg.name}"
        yield Event(source, "start", {"laws": list(self.laws), "squares": self.dg.size})
        broker = EventBroker()
        results: Dict[str, Tuple[List[Violation], int, bool]] = {}

        def worker(law: str):
            try:
                found = self.check(law)
                broker.emit(source, "_done", {"law": law, "found": found})
            except Exception as e:
                logger.exception("Law %s failed to run.", law)
                broker.emit(source, "error", {"law": law, "message": str(e)})
                broker.emit(source, "_done", {"law": law, "found": None})

        with concurrent.futures.ThreadPoolExecutor(max_workers=self.settings.workers) as executor:
            for law in self.laws:
                executor.submit(worker, law)
            finished = 0
            while finished < len(self.laws):
                event: Event = broker.get()
                if event.type != "_done":
                    yield event
                    continue
                finished += 1
                law, found = event.payload["law"], event.payload["found"]
                if found is None:
                    continue
                results[law] = found
                violations, checked, exhaustive = found
                for v in violations:
                    yield Event(source, "violation", v.to_dict())
                yield Event(source, "progress", {"law": law, "checked": checked,
                                                 "violations": len(violations), "exhaustive": exhaustive})

        violations = tuple(v for law in self.laws if law in results for v in results[law][0])
        report = ValidationReport(self.dg.name, violations,
                                  sum(r[1] for r in results.values()),
                                  all(r[2] for r in results.values()) and len(results) == len(self.laws))
        logger.info("Law suite on %s: %d violations in %d checks.", self.dg.name, len(violations), report.checked)
        yield Event(source, "end", {"result": report})


def check_laws(dg: DoubleGroupoid, laws: Optional[Sequence[str]] = None,
               settings: Optional[Settings] = None, sample: bool = False) -> ValidationReport:
    """
    Raises:
        BoundExceededError: If a law has more than `law_cap` instances and
            `sample` is unset.
    """
    return LawSuite(dg, laws, settings, sample).run(stream=False)
