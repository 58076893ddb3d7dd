from dataclasses import dataclass
from typing      import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import concurrent.futures
import logging

from .config   import Settings, settings as default_settings
from .errors   import BoundExceededError, IncompatibleError, PreconditionError
from .event    import Event, EventBroker, final_result
from .finite   import FiniteGroupoid
from .groupoid import (Edge, GroupoidMorphism, GroupoidPresentation, Quiver, Relation,
                       as_groupoid, word_equal)
from .probes   import Assignment, evaluate_path, homomorphisms, probe
from .schema   import ProbeResult, UniversalReport
from .words    import GenSymbol, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagramArrow:
    name: str
    source: str
    target: str
    morphism: GroupoidMorphism


@dataclass(frozen=True, eq=False)
class Diagram:
    """
    A finite diagram of presented groupoids over a freely generated index shape.

    Attributes:
        objects (Dict[str, GroupoidPresentation]): Presentation at each index object.
        arrows (Tuple[DiagramArrow, ...]): Morphism at each index arrow.
    """
    objects: Mapping[str, GroupoidPresentation]
    arrows: Tuple[DiagramArrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'objects', {k: as_groupoid(v) for k, v in self.objects.items()})
        object.__setattr__(self, 'arrows', tuple(self.arrows))
        for a in self.arrows:
            if a.source not in self.objects or a.target not in self.objects:
                raise PreconditionError(f"Arrow '{a.name}' joins undeclared index objects.", a.name)
            if a.morphism.source != self.objects[a.source] or a.morphism.target != self.objects[a.target]:
                raise IncompatibleError(f"Arrow '{a.name}' does not match the presentations at its ends.")

    def outgoing(self, i: str) -> List[DiagramArrow]:
        return [a for a in self.arrows if a.source == i]

    def sinks(self) -> List[str]:
        return [i for i in self.objects if not self.outgoing(i)]

    def eliminations(self) -> Dict[str, Optional[DiagramArrow]]:
        """
        The first outgoing arrow of each index object (None for sinks).

        Raises:
            PreconditionError: If following first arrows runs in a cycle.
        """
        first = {i: (self.outgoing(i) or [None])[0] for i in self.objects}
        for i in self.objects:
            seen = {i}
            j = i
            while first[j] is not None:
                j = first[j].target
                if j in seen:
                    raise PreconditionError(f"The index shape has a cycle through '{j}'.", j)
                seen.add(j)
        return first


@dataclass(frozen=True, eq=False)
class Cocone:
    """
    An apex with one leg per index object.
    """
    apex: GroupoidPresentation
    legs: Mapping[str, GroupoidMorphism]

    def check_commutes(self, D: Diagram, settings: Optional[Settings] = None) -> List[str]:
        """
        Arrows F: i -> j for which leg_j . F differs from leg_i on some generator.
        Differences that cannot be decided are reported too.
        """
        failures = []
        for a in D.arrows:
            via = a.morphism.then(self.legs[a.target])
            direct = self.legs[a.source]
            for v in D.objects[a.source].objects:
                if via.object_map[v] != direct.object_map[v]:
                    failures.append(f"{a.name}: object {v}")
            for e in D.objects[a.source].edges:
                answer = word_equal(self.apex, via.edge_map[e.name], direct.edge_map[e.name],
                                    direct.object_map[e.src], settings)
                if answer.verdict != 'equal':
                    failures.append(f"{a.name}: edge {e.name} ({answer.verdict})")
        return failures


class _UnionFind:
    def __init__(self, items: Sequence[str]):
        self.parent = {x: x for x in items}
        self.rank = {x: i for i, x in enumerate(items)}

    def find(self, x: str) -> str:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: str, y: str):
        a, b = self.find(x), self.find(y)
        if a != b:
            # the earlier item stays the representative
            if self.rank[a] < self.rank[b]:
                self.parent[b] = a
            else:
                self.parent[a] = b


def colimit(D: Diagram, name: str = 'colim') -> Cocone:
    """
    Colimit of a finite diagram at the level of presentations.

    Each index object with an outgoing arrow is eliminated along its first
    outgoing arrow F: i -> j, so leg_i = leg_j . F. The sinks contribute their
    objects, edges and relations. Every other arrow G: i -> k contributes object
    identifications and the relations leg_j(F(e)) = leg_k(G(e)). Objects are
    merged first (union-find), then the presentation is assembled on the classes.
    Names stay as they are when unique among the sinks, else become "index.name".

    Args:
        D (Diagram): The diagram.
        name (str): Name of the apex.
    """
    first = D.eliminations()
    sinks = D.sinks()

    def unique(kind: str) -> Dict[Tuple[str, str], str]:
        pairs = [(i, x) for i in sinks for x in
                 (D.objects[i].objects if kind == 'objects' else [e.name for e in D.objects[i].edges])]
        counts: Dict[str, int] = {}
        for _, x in pairs:
            counts[x] = counts.get(x, 0) + 1
        return {(i, x): (x if counts[x] == 1 else f"{i}.{x}") for i, x in pairs}

    obj_name, edge_name = unique('objects'), unique('edges')
    uf = _UnionFind(list(obj_name.values()))

    # raw legs into the disjoint union of the sinks
    raw_objects: Dict[str, Dict[str, str]] = {}
    raw_edges: Dict[str, Dict[str, Word]] = {}

    def resolve(i: str):
        if i in raw_objects:
            return
        a = first[i]
        P = D.objects[i]
        if a is None:
            raw_objects[i] = {v: obj_name[(i, v)] for v in P.objects}
            raw_edges[i] = {e.name: Word((GenSymbol(edge_name[(i, e.name)]),)) for e in P.edges}
            return
        resolve(a.target)
        F = a.morphism
        raw_objects[i] = {v: raw_objects[a.target][F.object_map[v]] for v in P.objects}
        raw_edges[i] = {e: w.substitute(raw_edges[a.target]) for e, w in F.edge_map.items()}

    for i in D.objects:
        resolve(i)

    extra: List[Tuple[Word, Word, str]] = []
    for a in D.arrows:
        if first[a.source] is a:
            continue
        G = a.morphism
        for v in D.objects[a.source].objects:
            uf.union(raw_objects[a.source][v], raw_objects[a.target][G.object_map[v]])
        for e in D.objects[a.source].edges:
            lhs = raw_edges[a.source][e.name]
            rhs = G.edge_map[e.name].substitute(raw_edges[a.target])
            extra.append((lhs, rhs, raw_objects[a.source][e.src]))

    vertices = [v for v in obj_name.values() if uf.find(v) == v]
    edges: List[Edge] = []
    relations: List[Relation] = []
    for i in sinks:
        P = D.objects[i]
        for e in P.edges:
            edges.append(Edge(edge_name[(i, e.name)], uf.find(obj_name[(i, e.src)]), uf.find(obj_name[(i, e.tgt)])))
        for r in P.relations:
            relations.append(Relation(r.lhs.substitute(raw_edges[i]), r.rhs.substitute(raw_edges[i]),
                                      uf.find(obj_name[(i, r.at)])))
    relations.extend(Relation(l, r, uf.find(at)) for l, r, at in extra)
    apex = GroupoidPresentation(Quiver(tuple(vertices), tuple(edges)), tuple(relations), name)
    legs = {i: GroupoidMorphism(D.objects[i], apex,
                                {v: uf.find(w) for v, w in raw_objects[i].items()},
                                raw_edges[i])
            for i in D.objects}
    logger.info("Colimit %s: %d objects, %d edges, %d relations.", name, len(vertices), len(edges), len(relations))
    return Cocone(apex, legs)


def span(f: GroupoidMorphism, g: GroupoidMorphism) -> Diagram:
    if f.source != g.source:
        raise IncompatibleError("A pushout needs morphisms with a common source.")
    return Diagram({'P0': f.source, 'P1': f.target, 'P2': g.target},
                   (DiagramArrow('f', 'P0', 'P1', f), DiagramArrow('g', 'P0', 'P2', g)))


def parallel_pair(a: GroupoidMorphism, b: GroupoidMorphism) -> Diagram:
    if a.source != b.source or a.target != b.target:
        raise IncompatibleError("A coequaliser needs parallel morphisms.")
    return Diagram({'source': a.source, 'target': a.target},
                   (DiagramArrow('a', 'source', 'target', a), DiagramArrow('b', 'source', 'target', b)))


def pushout(f: GroupoidMorphism, g: GroupoidMorphism, name: str = 'pushout') -> Cocone:
    """
    Pushout of f: P0 -> P1 and g: P0 -> P2. The apex holds the edges of P1 and
    P2, their relations, and f(e) = g(e) for every generator e of P0.
    """
    return colimit(span(f, g), name)


def coequaliser(a: GroupoidMorphism, b: GroupoidMorphism, name: str = 'coeq') -> Cocone:
    """
    Coequaliser of parallel a, b: S -> T: the target with objects a(x) ~ b(x)
    identified and relations a(e) = b(e). The coequalising map is the leg at
    "target".
    """
    return colimit(parallel_pair(a, b), name)


class UniversalCheck:
    """
    Verifies that a cocone is couniversal against finite probes.

    For each probe T the cocones D -> T are counted, the morphisms apex -> T are
    counted, and restriction along the legs is checked to be injective. Equal
    counts and injectivity make restriction a bijection.
    """
    def __init__(self, cocone: Cocone, D: Diagram, probes: Optional[Sequence[Union[str, FiniteGroupoid]]] = None,
                 settings: Optional[Settings] = None, subject: str = 'cocone'):
        self.cocone = cocone
        self.diagram = D
        self.settings = settings or default_settings()
        self.probes = [probe(p) if isinstance(p, str) else p for p in (probes or self.settings.probes)]
        self.subject = subject

    def _cocones(self, T: FiniteGroupoid) -> List[Tuple]:
        D, first, cap = self.diagram, self.diagram.eliminations(), self.settings.hom_cap
        sinks = D.sinks()
        per_sink = {i: list(homomorphisms(D.objects[i], T, cap)) for i in sinks}
        families = []

        def extend(index: int, chosen: Dict[str, Assignment]):
            if index < len(sinks):
                for h in per_sink[sinks[index]]:
                    chosen[sinks[index]] = h
                    extend(index + 1, chosen)
                return
            full = dict(chosen)

            def family(i: str) -> Assignment:
                if i not in full:
                    a = first[i]
                    h = family(a.target)
                    F = a.morphism
                    full[i] = Assignment(
                        {v: h.objects[F.object_map[v]] for v in D.objects[i].objects},
                        {e: evaluate_path(T, w, h.arrows, h.objects[F.object_map[D.objects[i].quiver.edge(e).src]])
                         for e, w in F.edge_map.items()})
                return full[i]

            for i in D.objects:
                family(i)
            for a in D.arrows:
                if first[a.source] is a:
                    continue
                if _restrict(a.morphism, full[a.target], T, D.objects[a.source]) != _key(full[a.source]):
                    return
            families.append(tuple(_key(full[i]) for i in D.objects))

        extend(0, {})
        return families

    def check_probe(self, T: FiniteGroupoid) -> ProbeResult:
        try:
            families = self._cocones(T)
            maps = list(homomorphisms(self.cocone.apex, T, self.settings.hom_cap))
        except BoundExceededError:
            return ProbeResult(T.name, 'too_large')
        restricted: Dict[Tuple, Assignment] = {}
        for h in maps:
            image = tuple(_restrict(self.cocone.legs[i], h, T, self.diagram.objects[i]) for i in self.diagram.objects)
            if image in restricted:
                return ProbeResult(T.name, 'failed', len(families), len(maps),
                                   f"two morphisms out of the apex agree on all legs: {h.describe(T)}")
            restricted[image] = h
        family_set = set(families)
        for image in restricted:
            if image not in family_set:
                return ProbeResult(T.name, 'failed', len(families), len(maps),
                                   "restriction of an apex morphism is not a cocone")
        if len(family_set) != len(restricted):
            missing = next(f for f in families if f not in restricted)
            return ProbeResult(T.name, 'failed', len(families), len(maps),
                               f"cocone not induced by the apex: {_show(missing, T)}")
        return ProbeResult(T.name, 'ok', len(families), len(maps))

    def run(self, stream: bool = False):
        if stream:
            return self._run_stream()
        return final_result(self._run_stream())

    def _run_stream(self) -> Iterator[Event]:
        source = f"Universal:{self.subject}"
        yield Event(source, "start", {"probes": [T.name for T in self.probes]})
        broker = EventBroker()

        def worker(T: FiniteGroupoid):
            try:
                result = self.check_probe(T)
                broker.emit(source, "progress", {"probe": T.name, "result": result.to_dict()})
                broker.emit(source, "_done", {"result": result})
            except Exception as e:
                broker.emit(source, "error", {"probe": T.name, "message": str(e)})
                broker.emit(source, "_done", {"result": None})

        results: Dict[str, ProbeResult] = {}
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.settings.workers) as executor:
            for T in self.probes:
                executor.submit(worker, T)
            finished = 0
            while finished < len(self.probes):
                event: Event = broker.get()
                if event.type == "_done":
                    finished += 1
                    if event.payload["result"] is not None:
                        results[event.payload["result"].probe] = event.payload["result"]
                    continue
                yield event
        report = UniversalReport(self.subject, tuple(results[T.name] for T in self.probes if T.name in results))
        yield Event(source, "end", {"result": report})


def _key(h: Assignment) -> Tuple:
    return (tuple(sorted(h.objects.items())), tuple(sorted(h.arrows.items())))


def _restrict(leg: GroupoidMorphism, h: Assignment, T: FiniteGroupoid, P: GroupoidPresentation) -> Tuple:
    objects = {v: h.objects[leg.object_map[v]] for v in P.objects}
    arrows = {e.name: evaluate_path(T, leg.edge_map[e.name], h.arrows, objects[e.src]) for e in P.edges}
    return _key(Assignment(objects, arrows))


def _show(family: Tuple, T: FiniteGroupoid) -> str:
    parts = []
    for objects, arrows in family:
        parts.extend(f"{e}->{T.arrows[a]}" for e, a in arrows)
    return ', '.join(parts) or 'object data only'


def verify_couniversal(c: Cocone, D: Diagram, probes: Optional[Sequence[Union[str, FiniteGroupoid]]] = None,
                       settings: Optional[Settings] = None) -> UniversalReport:
    """
    Checks, probe by probe, that cocones D -> T correspond bijectively to
    morphisms apex -> T. Probes whose enumeration exceeds the bound are reported
    as "too_large".
    """
    return UniversalCheck(c, D, probes, settings).run(stream=False)
