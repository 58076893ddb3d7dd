"""
The passage between crossed modules and double groupoids with connections,
and the round-trip checks that λ and γ are inverse up to isomorphism.

γ(D) takes at each object x the squares whose top, left and right edges are
identities at x, composed horizontally, with boundary the bottom edge. An
arrow p acts by conjugation with the degenerate squares and connections on p.
"""
from dataclasses import dataclass
from itertools   import product
from typing      import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union
import concurrent.futures
import logging
import random

from .config import Settings, settings as default_settings
from .double import DoubleGroupoid, LambdaMorphism, Square, lambda_squares
from .errors import BoundExceededError, IncompatibleError, PreconditionError
from .event  import Event, EventBroker, final_result
from .finite import FiniteGroup
from .schema import EquivalenceReport
from .xmod   import AnyXMod, CrossedModule, CrossedModuleOverGroupoid, XModMorphism, validate_xmod

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GammaData:
    """γ(D) together with the squares behind each element."""
    xmod: CrossedModuleOverGroupoid
    members: Tuple[Tuple[Square, ...], ...]
    index: Tuple[Dict[Square, int], ...]

    def element(self, alpha: Square) -> int:
        """The element of γ(D) at the top-left corner of a square with identity top, left and right."""
        x = self.xmod.base.src[alpha.a]
        try:
            return self.index[x][alpha]
        except KeyError:
            raise IncompatibleError(f"{alpha} is not an element of {self.xmod.name}.")


def gamma_data(D: DoubleGroupoid, settings: Optional[Settings] = None) -> GammaData:
    """
    Raises:
        PreconditionError: If the result is not a crossed module.
    """
    settings = settings or D.settings
    B = D.base
    members: List[Tuple[Square, ...]] = []
    index: List[Dict[Square, int]] = []
    for x in range(len(B.objects)):
        one = B.identity(x)
        unit = D.identity(1, one)
        found = sorted((s for s in D.squares_with(a=one, c=one) if s.d == one), key=lambda s: (s != unit, s))
        members.append(tuple(found))
        index.append({s: i for i, s in enumerate(found)})

    groups = []
    try:
        for x, found in enumerate(members):
            table = tuple(tuple(index[x][D.compose(2, s, t)] for t in found) for s in found)
            groups.append(FiniteGroup(f"γ{D.name}({B.objects[x]})", tuple(D.show(s) for s in found), table))
        mu = tuple(tuple(s.b for s in found) for found in members)
        action = {p: tuple(index[B.src[p]][D.act(p, s)] for s in members[B.tgt[p]])
                  for p in range(len(B.arrows))}
    except (KeyError, ValueError, IncompatibleError) as e:
        raise PreconditionError(f"{D.name} does not yield a crossed module: {e}", D.name)

    X = CrossedModuleOverGroupoid(f"γ{D.name}", B, tuple(groups), mu, action)
    report = validate_xmod(X, settings)
    if not report.ok:
        raise PreconditionError(f"{D.name} does not yield a crossed module: {', '.join(report.laws())} fail.", D.name)
    logger.debug("Built %s with groups of orders %s.", X.name, [G.order for G in groups])
    return GammaData(X, tuple(members), tuple(index))


def gamma(D: DoubleGroupoid, settings: Optional[Settings] = None) -> CrossedModuleOverGroupoid:
    """
    The crossed module of a double groupoid with connections.

    Raises:
        PreconditionError: If D's squares do not form a crossed module this way.
    """
    return gamma_data(D, settings).xmod


def fold(D: DoubleGroupoid, alpha: Square) -> Square:
    """
    Moves a square (n; a, b, c, d) into the crossed module at its top-left
    corner: the result is (^(cd) n; 1, a b d^-1 c^-1, 1, 1).
    """
    B = D.base
    n, a, b, c, d = alpha
    x = B.src[a]
    one = B.identity(x)
    return D.compose_array([
        [D.identity(1, one), D.connection('-', c), D.thin(c, B.inv(c), one, one)],
        [D.connection('-', a), alpha, D.thin(d, B.compose(B.inv(d), B.inv(c)), B.inv(c), one)],
    ])


# ----- isomorphisms -----

def as_group_xmod(X: AnyXMod) -> CrossedModule:
    """A crossed module over a one-object groupoid as one over its vertex group."""
    if isinstance(X, CrossedModule):
        return X
    if len(X.base.objects) != 1:
        raise PreconditionError(f"{X.name} lives over {len(X.base.objects)} objects, not one.", X.name)
    P = X.base.vertex_group(0)
    M = X.groups[0]
    return CrossedModule(X.name, M, P, X.mu[0], tuple(X.action[p] for p in range(P.order)))


def _isomorphisms(G: FiniteGroup, H: FiniteGroup, budget: List[int],
                  allowed=None) -> Iterator[Tuple[int, ...]]:
    if G.order != H.order or G.order_profile != H.order_profile:
        return
    candidates = []
    for g in G.generators:
        k = G.element_order(g)
        candidates.append([h for h in range(H.order)
                           if H.element_order(h) == k and (allowed is None or allowed(g, h))])
    for choice in product(*candidates):
        budget[0] -= 1
        if budget[0] < 0:
            raise BoundExceededError(f"Isomorphism search {G.name} -> {H.name} ran past its budget.")
        f = G.extend(dict(zip(G.generators, choice)), H)
        if f is not None and len(set(f)) == G.order:
            yield f


def find_isomorphism(X: AnyXMod, Y: AnyXMod, settings: Optional[Settings] = None) -> Optional[XModMorphism]:
    """
    Searches for an isomorphism of crossed modules by backtracking over the
    images of generators, P part first, pruned by element orders.

    Returns:
        A checked isomorphism X -> Y, or None.

    Raises:
        BoundExceededError: After `hom_cap` candidate assignments.
    """
    settings = settings or default_settings()
    X, Y = as_group_xmod(X), as_group_xmod(Y)
    if (X.M.order, X.P.order) != (Y.M.order, Y.P.order):
        return None
    budget = [settings.hom_cap]
    for fp in _isomorphisms(X.P, Y.P, budget):
        allowed = lambda g, h: Y.mu[h] == fp[X.mu[g]]
        for fm in _isomorphisms(X.M, Y.M, budget, allowed):
            if any(Y.mu[fm[m]] != fp[X.mu[m]] for m in range(X.M.order)):
                continue
            if any(fm[X.act(p, m)] != Y.act(fp[p], fm[m]) for p in range(X.P.order) for m in range(X.M.order)):
                continue
            return XModMorphism(X, Y, fm, fp)
    return None


def _describe(f: XModMorphism) -> Dict[str, Any]:
    X, Y = f.source, f.target
    return {
        "P": {X.P.elements[g]: Y.P.elements[f.on_p(g)] for g in X.P.generators},
        "M": {X.M.elements[g]: Y.M.elements[f.on_m(g)] for g in X.M.generators},
    }


def roundtrip_xmod(X: CrossedModule, settings: Optional[Settings] = None) -> EquivalenceReport:
    """
    Compares X with γλ(X).

    Raises:
        BoundExceededError: If the isomorphism search runs out of budget.
    """
    settings = settings or default_settings()
    Y = gamma(lambda_squares(X, settings), settings)
    f = find_isomorphism(X, Y, settings)
    if f is None:
        logger.warning("No isomorphism between %s and %s.", X.name, Y.name)
        return EquivalenceReport('gamma_lambda', X.name, False, None, f"no isomorphism {X.name} -> {Y.name}")
    report = f.check()
    if not report.ok:
        return EquivalenceReport('gamma_lambda', X.name, False, _describe(f),
                                 f"candidate fails: {', '.join(report.laws())}")
    return EquivalenceReport('gamma_lambda', X.name, True, _describe(f),
                             f"isomorphism checked on {report.checked} instances")


class ComparisonMap:
    """The map D -> λγ(D), (n; a, b, c, d) to (-2 ^(b^-1 a^-1) fold(α); a, b, c, d)."""
    def __init__(self, D: DoubleGroupoid, settings: Optional[Settings] = None):
        self.D = D
        self.data = gamma_data(D, settings)
        self.target = DoubleGroupoid(self.data.xmod, settings=settings or D.settings, validate=False)

    def __call__(self, alpha: Square) -> Square:
        D, B = self.D, self.D.base
        n, a, b, c, d = alpha
        moved = D.act(B.compose(B.inv(b), B.inv(a)), fold(D, alpha))
        return Square(self.data.element(D.inverse(2, moved)), a, b, c, d)


def roundtrip_dg(D: DoubleGroupoid, settings: Optional[Settings] = None) -> EquivalenceReport:
    """
    Compares D with λγ(D) through the comparison map: it must be a bijection
    on squares preserving both compositions, the degenerate squares and the
    connections. Preservation is checked exhaustively up to `law_sample_cap`
    composable pairs, and on a seeded sample beyond.

    Raises:
        BoundExceededError: If D has more squares than `square_cap`.
    """
    settings = settings or D.settings
    phi = ComparisonMap(D, settings)
    E = phi.target
    B = D.base
    images = {}
    for alpha in D.squares:
        image = phi(alpha)
        if not E.is_square(image):
            return EquivalenceReport('lambda_gamma', D.name, False, {"square": D.show(alpha)},
                                     f"image {E.show(image)} is not a square of {E.name}")
        if image in images:
            return EquivalenceReport('lambda_gamma', D.name, False,
                                     {"square": D.show(alpha), "other": D.show(images[image])},
                                     "the comparison map is not injective")
        images[image] = alpha
    if len(images) != E.size:
        return EquivalenceReport('lambda_gamma', D.name, False, None,
                                 f"{len(images)} images for {E.size} squares of {E.name}")

    checked = 0
    for e in range(len(B.arrows)):
        for build in (lambda g, e: g.identity(1, e), lambda g, e: g.identity(2, e),
                      lambda g, e: g.connection('-', e), lambda g, e: g.connection('+', e)):
            checked += 1
            if phi(build(D, e)) != build(E, e):
                return EquivalenceReport('lambda_gamma', D.name, False, {"edge": B.arrows[e]},
                                         "a degenerate square or connection is not preserved")

    rng = random.Random(settings.seed)
    for direction in (1, 2):
        pairs = sum(D.count_with(c=alpha.b) if direction == 1 else D.count_with(a=alpha.d) for alpha in D.squares)
        if pairs <= settings.law_sample_cap:
            instances = ((alpha, beta) for alpha in D.squares
                         for beta in (D.squares_with(c=alpha.b) if direction == 1 else D.squares_with(a=alpha.d)))
        else:
            def sample(direction=direction):
                for _ in range(settings.law_sample_cap):
                    alpha = rng.choice(D.squares)
                    yield alpha, (D.random_square(rng, c=alpha.b) if direction == 1
                                  else D.random_square(rng, a=alpha.d))
            instances = sample()
        for alpha, beta in instances:
            checked += 1
            if phi(D.compose(direction, alpha, beta)) != E.compose(direction, phi(alpha), phi(beta)):
                return EquivalenceReport('lambda_gamma', D.name, False,
                                         {"alpha": D.show(alpha), "beta": D.show(beta)},
                                         f"+{direction} is not preserved")
    return EquivalenceReport('lambda_gamma', D.name, True,
                             {"squares": len(images), "target": E.name},
                             f"bijection on {len(images)} squares, {checked} structure checks")


def gamma_morphism(F: LambdaMorphism, settings: Optional[Settings] = None) -> XModMorphism:
    """γ applied to the square map of a crossed-module morphism."""
    source, target = gamma_data(F.source, settings), gamma_data(F.target, settings)
    X, Y = as_group_xmod(source.xmod), as_group_xmod(target.xmod)
    m_map = tuple(target.element(F(alpha)) for alpha in source.members[0])
    return XModMorphism(X, Y, m_map, tuple(F.f.on_p(p) for p in range(X.P.order)))


# ----- suites -----

Entry = Union[str, CrossedModule, DoubleGroupoid]


class RoundTripSuite:
    """
    Runs both round trips for every entry in parallel. Catalog names and
    crossed modules get γλ and λγ checks, double groupoids only λγ.
    """
    def __init__(self, entries: Sequence[Entry], settings: Optional[Settings] = None):
        self.entries = list(entries)
        self.settings = settings or default_settings()

    def _reports(self, item: Entry) -> List[EquivalenceReport]:
        from .catalog import entry
        if isinstance(item, str):
            item = entry(item)
        if isinstance(item, DoubleGroupoid):
            return [roundtrip_dg(item, self.settings)]
        return [roundtrip_xmod(item, self.settings), roundtrip_dg(lambda_squares(item, self.settings), self.settings)]

    def run(self, stream: bool = False):
        if stream:
            return self._run_stream()
        return final_result(self._run_stream())

    def _run_stream(self) -> Iterator[Event]:
        source = "RoundTrip"
        yield Event(source, "start", {"entries": len(self.entries)})
        broker = EventBroker()
        results: Dict[int, List[EquivalenceReport]] = {}

        def worker(k: int, item: Entry):
            try:
                broker.emit(source, "_done", {"k": k, "reports": self._reports(item)})
            except Exception as e:
                logger.exception("Round trip %d failed to run.", k)
                broker.emit(source, "error", {"entry": str(item), "message": str(e)})
                broker.emit(source, "_done", {"k": k, "reports": None})

        with concurrent.futures.ThreadPoolExecutor(max_workers=self.settings.workers) as executor:
            for k, item in enumerate(self.entries):
                executor.submit(worker, k, item)
            finished = 0
            while finished < len(self.entries):
                event: Event = broker.get()
                if event.type != "_done":
                    yield event
                    continue
                finished += 1
                reports = event.payload["reports"]
                if reports is None:
                    continue
                results[event.payload["k"]] = reports
                for r in reports:
                    yield Event(source, "progress", r.to_dict())
                    if not r.success:
                        yield Event(source, "violation", r.to_dict())

        reports = tuple(r for k in sorted(results) for r in results[k])
        logger.info("Round trips: %d of %d succeeded.", sum(r.success for r in reports), len(reports))
        yield Event(source, "end", {"result": reports})


def roundtrip_suite(entries: Sequence[Entry], settings: Optional[Settings] = None) -> Tuple[EquivalenceReport, ...]:
    return RoundTripSuite(entries, settings).run(stream=False)
