from dataclasses import dataclass, field
from typing      import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import networkx as nx

from .config    import Settings, settings as default_settings
from .errors    import IncompatibleError, PreconditionError, VanKampenError
from .rewriting import RewriteSystem, COMPLETED
from .schema    import WordEquality
from .utils     import render
from .words     import GenSymbol, Word, free_reduce, as_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Quiver:
    """
    Vertices and named directed edges: the generating graph of a presented groupoid.
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(str(v) for v in self.vertices))
        object.__setattr__(self, 'edges', tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise PreconditionError("Vertex names must be unique.")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise PreconditionError(f"Edge name '{dup}' is used twice.", dup)
        declared = set(self.vertices)
        for e in self.edges:
            for v in (e.src, e.tgt):
                if v not in declared:
                    raise PreconditionError(f"Edge '{e.name}' uses undeclared vertex '{v}'.", e.name)

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise PreconditionError(f"Unknown edge '{name}'.", name)

    @property
    def edge_map(self) -> Dict[str, Edge]:
        return {e.name: e for e in self.edges}

    def graph(self) -> nx.MultiGraph:
        """The underlying undirected multigraph, edges keyed by name."""
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.src, e.tgt, key=e.name)
        return g

    def endpoints(self, word: Word, at: Optional[str] = None) -> Tuple[str, str]:
        """
        Source and target of a composable edge path.

        Raises:
            PreconditionError: If the word is not a composable path, or does not
                start at `at`.
        """
        if not len(word):
            if at is None:
                raise PreconditionError("The empty path needs a base vertex.")
            if at not in self.vertices:
                raise PreconditionError(f"Unknown vertex '{at}'.", at)
            return at, at
        edges = self.edge_map
        start = current = None
        for s in word.letters:
            e = edges.get(s.name)
            if e is None:
                raise PreconditionError(f"Unknown edge '{s.name}'.", s.name)
            a, b = (e.src, e.tgt) if s.exponent == 1 else (e.tgt, e.src)
            if current is None:
                start = a
            elif current != a:
                raise PreconditionError(f"Path '{word}' is not composable at '{s}'.", s.name)
            current = b
        if at is not None and at != start:
            raise PreconditionError(f"Path '{word}' starts at {start}, not {at}.", at)
        return start, current

    def restrict(self, vertices: Iterable[str], edges: Iterable[str]) -> 'Quiver':
        vs, es = set(vertices), set(edges)
        return Quiver(tuple(v for v in self.vertices if v in vs), tuple(e for e in self.edges if e.name in es))


@dataclass(frozen=True)
class Relation:
    """A pair of parallel edge paths declared equal; `at` is their common source."""
    lhs: Word
    rhs: Word
    at: str

    def __str__(self):
        return f"{self.lhs} = {self.rhs} @ {self.at}"


@dataclass(frozen=True)
class GroupPresentation:
    """
    A finitely presented group <generators | relators>.

    `system()` returns the shortlex completion of the presentation within the
    configured bounds; its status tells whether normal forms are available.
    """
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()
    name: str = ''
    _systems: Dict[Tuple[int, int], RewriteSystem] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'generators', tuple(self.generators))
        object.__setattr__(self, 'relators', tuple(as_word(r) for r in self.relators))
        for r in self.relators:
            for g in r.generators():
                if g not in self.generators:
                    raise PreconditionError(f"Relator '{r}' uses unknown generator '{g}'.", g)

    def system(self, settings: Optional[Settings] = None) -> RewriteSystem:
        settings = settings or default_settings()
        key = (settings.max_rules, settings.max_len)
        if key not in self._systems:
            raw = RewriteSystem.from_relators(self.generators, self.relators)
            self._systems[key] = raw.complete(settings.max_rules, settings.max_len)
            logger.debug("Completed %s: %s", self.name or 'presentation', self._systems[key].status)
        return self._systems[key]

    def as_groupoid(self, obj: str = '*') -> 'GroupoidPresentation':
        quiver = Quiver((obj,), tuple(Edge(g, obj, obj) for g in self.generators))
        return GroupoidPresentation(quiver, tuple(Relation(r, Word(), obj) for r in self.relators), self.name)

    def __str__(self):
        return render('presentation.j2', generators=self.generators, relators=[str(r) for r in self.relators])

    def to_dict(self) -> Dict[str, object]:
        return {"generators": list(self.generators), "relators": [str(r) for r in self.relators]}


@dataclass(frozen=True)
class GroupoidPresentation:
    """
    A groupoid presented by a quiver and relations between parallel paths.

    Attributes:
        quiver (Quiver): Objects and generating edges.
        relations (Tuple[Relation, ...]): Parallel path pairs declared equal.
        name (str): Display name.
    """
    quiver: Quiver
    relations: Tuple[Relation, ...] = ()
    name: str = ''

    def __post_init__(self):
        rels = []
        for r in self.relations:
            if not isinstance(r, Relation):
                lhs, rhs, *rest = r
                r = Relation(as_word(lhs), as_word(rhs), rest[0] if rest else None)
            at = r.at
            if at is None:
                if len(r.lhs):
                    at = self.quiver.endpoints(r.lhs)[0]
                elif len(r.rhs):
                    at = self.quiver.endpoints(r.rhs)[0]
                else:
                    raise PreconditionError("A relation between empty paths needs a base vertex.")
            if self.quiver.endpoints(r.lhs, at) != self.quiver.endpoints(r.rhs, at):
                raise PreconditionError(f"Relation {r.lhs} = {r.rhs} is not between parallel paths.", str(r.lhs))
            rels.append(Relation(r.lhs, r.rhs, at))
        object.__setattr__(self, 'relations', tuple(rels))

    # ----- constructors -----
    @classmethod
    def interval(cls) -> 'GroupoidPresentation':
        """The tree groupoid on objects 0, 1 generated by one arrow ι: 0 -> 1."""
        return cls(Quiver(('0', '1'), (Edge('ι', '0', '1'),)), (), 'I')

    @classmethod
    def discrete(cls, objects: Sequence[str], name: str = '') -> 'GroupoidPresentation':
        return cls(Quiver(tuple(objects)), (), name or 'discrete')

    @classmethod
    def loop(cls, edge: str = 'e', obj: str = '*') -> 'GroupoidPresentation':
        """The circle quiver: one object, one free loop."""
        return cls(Quiver((obj,), (Edge(edge, obj, obj),)), (), 'circle')

    @property
    def objects(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self.quiver.edges

    def endpoints(self, word: Word, at: Optional[str] = None) -> Tuple[str, str]:
        return self.quiver.endpoints(word, at)

    def with_relations(self, extra: Iterable[Relation], name: Optional[str] = None) -> 'GroupoidPresentation':
        return GroupoidPresentation(self.quiver, self.relations + tuple(extra), name or self.name)

    def rename(self, prefix: str) -> 'GroupoidPresentation':
        """Prefixes every vertex and edge name with `prefix.`."""
        vmap = {v: f"{prefix}.{v}" for v in self.objects}
        emap = {e.name: Word((GenSymbol(f"{prefix}.{e.name}"),)) for e in self.edges}
        quiver = Quiver(tuple(vmap.values()),
                        tuple(Edge(f"{prefix}.{e.name}", vmap[e.src], vmap[e.tgt]) for e in self.edges))
        rels = tuple(Relation(r.lhs.substitute(emap), r.rhs.substitute(emap), vmap[r.at]) for r in self.relations)
        return GroupoidPresentation(quiver, rels, self.name)

    def __str__(self):
        return render('groupoid.j2', name=self.name, objects=self.objects,
                      edges=self.edges, relations=[str(r) for r in self.relations])

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "edges": [{"name": e.name, "src": e.src, "tgt": e.tgt} for e in self.edges],
            "relations": [{"lhs": str(r.lhs), "rhs": str(r.rhs), "at": r.at} for r in self.relations],
        }


Presentable = Union[GroupoidPresentation, GroupPresentation]


def as_groupoid(P: Presentable) -> GroupoidPresentation:
    return P.as_groupoid() if isinstance(P, GroupPresentation) else P


@dataclass(frozen=True, eq=False)
class GroupoidMorphism:
    """
    A morphism of presented groupoids, given on objects and on generating edges.
    Each edge is sent to a composable path of the target between the images of
    its endpoints.
    """
    source: GroupoidPresentation
    target: GroupoidPresentation
    object_map: Mapping[str, str]
    edge_map: Mapping[str, Word]

    def __post_init__(self):
        object.__setattr__(self, 'object_map', dict(self.object_map))
        object.__setattr__(self, 'edge_map', {k: as_word(v) for k, v in self.edge_map.items()})
        for v in self.source.objects:
            if v not in self.object_map:
                raise PreconditionError(f"Object '{v}' has no image.", v)
            if self.object_map[v] not in self.target.objects:
                raise PreconditionError(f"Image of '{v}' is not an object of the target.", v)
        for e in self.source.edges:
            if e.name not in self.edge_map:
                raise PreconditionError(f"Edge '{e.name}' has no image.", e.name)
            ends = self.target.endpoints(self.edge_map[e.name], self.object_map[e.src])
            if ends != (self.object_map[e.src], self.object_map[e.tgt]):
                raise IncompatibleError(f"Image of '{e.name}' does not match the images of its endpoints.")

    @classmethod
    def identity(cls, P: GroupoidPresentation) -> 'GroupoidMorphism':
        return cls(P, P, {v: v for v in P.objects}, {e.name: Word((GenSymbol(e.name),)) for e in P.edges})

    def apply(self, word: Word) -> Word:
        return as_word(word).substitute(self.edge_map)

    def then(self, other: 'GroupoidMorphism') -> 'GroupoidMorphism':
        """This morphism followed by `other`."""
        if other.source is not self.target and other.source != self.target:
            raise IncompatibleError("Morphisms are not composable.")
        return GroupoidMorphism(self.source, other.target,
                                {v: other.object_map[w] for v, w in self.object_map.items()},
                                {e: other.apply(w) for e, w in self.edge_map.items()})

    def unsatisfied(self, settings: Optional[Settings] = None) -> List[Tuple[Relation, WordEquality]]:
        """Source relations whose images are not certified equal in the target."""
        failures = []
        for r in self.source.relations:
            answer = word_equal(self.target, self.apply(r.lhs), self.apply(r.rhs),
                                self.object_map[r.at], settings)
            if answer.verdict != 'equal':
                failures.append((r, answer))
        return failures


def components(G) -> List[FrozenSet[str]]:
    """
    Connected components of a presented or finite groupoid, as sets of object
    names ordered by their least member.
    """
    from .finite import FiniteGroupoid
    if isinstance(G, FiniteGroupoid):
        return G.components()
    graph = as_groupoid(G).quiver.graph() if not isinstance(G, Quiver) else G.graph()
    return sorted((frozenset(c) for c in nx.connected_components(graph)), key=lambda c: min(c))


@dataclass(frozen=True)
class Forest:
    """
    A spanning forest with one root per tree.

    Attributes:
        edges (FrozenSet[str]): Names of the tree edges.
        root (Dict[str, str]): The root of each vertex's tree.
        path (Dict[str, Word]): The tree path from the root to each vertex.
    """
    edges: FrozenSet[str]
    root: Mapping[str, str]
    path: Mapping[str, Word]


def spanning_forest(quiver: Quiver, roots: Iterable[str] = ()) -> Forest:
    """
    Canonical breadth-first spanning forest.

    The search starts from all `roots` at once, taken in lexicographic order;
    incident edges are visited by name. Vertices not reached from a root start a
    tree at the least remaining vertex, so every tree holds at most one given root.
    """
    incident: Dict[str, List[Edge]] = {v: [] for v in quiver.vertices}
    for e in sorted(quiver.edges, key=lambda e: e.name):
        incident[e.src].append(e)
        if e.tgt != e.src:
            incident[e.tgt].append(e)
    root: Dict[str, str] = {}
    path: Dict[str, Word] = {}
    tree: set = set()

    def grow(starts: List[str]):
        queue = list(starts)
        for r in starts:
            root[r], path[r] = r, Word()
        while queue:
            v = queue.pop(0)
            for e in incident[v]:
                w, sym = (e.tgt, GenSymbol(e.name, 1)) if e.src == v else (e.src, GenSymbol(e.name, -1))
                if w not in root:
                    root[w] = root[v]
                    path[w] = path[v] * Word((sym,))
                    tree.add(e.name)
                    queue.append(w)

    starts = sorted({r for r in roots})
    for r in starts:
        if r not in quiver.vertices:
            raise PreconditionError(f"Root '{r}' is not a vertex.", r)
    grow(starts)
    for v in sorted(quiver.vertices):
        if v not in root:
            grow([v])
    return Forest(frozenset(tree), root, path)


def _check_forest(quiver: Quiver, T: Iterable[str]) -> FrozenSet[str]:
    T = frozenset(T)
    edges = quiver.edge_map
    for name in T:
        if name not in edges:
            raise PreconditionError(f"Forest edge '{name}' is not an edge.", name)
    sub = nx.MultiGraph()
    sub.add_nodes_from(quiver.vertices)
    for name in T:
        sub.add_edge(edges[name].src, edges[name].tgt, key=name)
    if not nx.is_forest(sub):
        raise PreconditionError("The given edges do not form a forest.")
    return T


def collapse(word: Word, tree: FrozenSet[str]) -> Word:
    """Deletes tree letters and freely reduces."""
    return free_reduce(Word(tuple(s for s in word.letters if s.name not in tree)))


def vertex_group(P: Presentable, x: str, T: Optional[Iterable[str]] = None) -> GroupPresentation:
    """
    Presentation of the vertex group at x.

    Generators are the non-tree edges of x's component; each relation lhs = rhs
    in that component gives the relator lhs rhs^-1 with tree letters deleted.

    Args:
        P (GroupoidPresentation): The presented groupoid.
        x (str): The object.
        T (Optional[Iterable[str]]): A spanning forest; the canonical one rooted
            at x when omitted.

    Raises:
        PreconditionError: If T is not a forest or does not span x's component.
    """
    P = as_groupoid(P)
    if x not in P.objects:
        raise PreconditionError(f"'{x}' is not an object.", x)
    component = next(c for c in components(P) if x in c)
    tree = spanning_forest(P.quiver, [x]).edges if T is None else _check_forest(P.quiver, T)
    spanned = nx.node_connected_component(
        _forest_graph(P.quiver, tree), x)
    if set(spanned) != set(component):
        missing = sorted(set(component) - set(spanned))
        raise PreconditionError(f"The forest does not reach {', '.join(missing)} from {x}.", x)
    generators = tuple(e.name for e in P.edges if e.src in component and e.name not in tree)
    relators = []
    for r in P.relations:
        if r.at in component:
            w = collapse(r.lhs * r.rhs.inverse(), tree)
            if len(w):
                relators.append(w)
    return GroupPresentation(generators, tuple(relators), f"{P.name or 'G'}({x})")


def _forest_graph(quiver: Quiver, tree: FrozenSet[str]) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(quiver.vertices)
    for e in quiver.edges:
        if e.name in tree:
            g.add_edge(e.src, e.tgt, key=e.name)
    return g


def coproduct(Gs: Sequence[Presentable], rename: bool = False) -> GroupoidPresentation:
    """
    Disjoint union of presentations.

    Args:
        Gs: The summands.
        rename (bool): Prefix every name with the summand's position.

    Raises:
        PreconditionError: On a vertex or edge name clash without renaming.
    """
    parts = [as_groupoid(G).rename(str(k)) if rename else as_groupoid(G) for k, G in enumerate(Gs)]
    vertices: List[str] = []
    edges: List[Edge] = []
    relations: List[Relation] = []
    for P in parts:
        for v in P.objects:
            if v in vertices:
                raise PreconditionError(f"Vertex name '{v}' clashes; use rename=True.", v)
            vertices.append(v)
        for e in P.edges:
            if any(e.name == f.name for f in edges):
                raise PreconditionError(f"Edge name '{e.name}' clashes; use rename=True.", e.name)
            edges.append(e)
        relations.extend(P.relations)
    return GroupoidPresentation(Quiver(tuple(vertices), tuple(edges)), tuple(relations),
                                '+'.join(P.name for P in parts if P.name))


def injections(Gs: Sequence[Presentable], rename: bool = False) -> Tuple[GroupoidPresentation, List[GroupoidMorphism]]:
    """The coproduct together with its injections."""
    total = coproduct(Gs, rename)
    legs = []
    for k, G in enumerate(Gs):
        G = as_groupoid(G)
        name = (lambda n: f"{k}.{n}") if rename else (lambda n: n)
        legs.append(GroupoidMorphism(G, total, {v: name(v) for v in G.objects},
                                     {e.name: Word((GenSymbol(name(e.name)),)) for e in G.edges}))
    return total, legs


def word_equal(P: Presentable, w1: Word, w2: Word, at: Optional[str] = None,
               settings: Optional[Settings] = None, probes: Optional[Sequence[str]] = None) -> WordEquality:
    """
    Decides whether two parallel paths are equal in the presented groupoid.

    The question moves to the vertex group at the common source. A completed
    rewrite system certifies "equal" or "distinct"; otherwise a morphism to a
    probe group separating the words certifies "distinct"; otherwise the partial
    rules may still certify "equal". Anything else is "unknown" with the bound.

    Raises:
        PreconditionError: If the words are not parallel paths.
    """
    from .probes import separate

    settings = settings or default_settings()
    P = as_groupoid(P)
    w1, w2 = as_word(w1), as_word(w2)
    if at is None:
        at = P.endpoints(w1)[0] if len(w1) else (P.endpoints(w2)[0] if len(w2) else None)
    if P.endpoints(w1, at) != P.endpoints(w2, at):
        raise PreconditionError(f"'{w1}' and '{w2}' are not parallel.")
    tree = spanning_forest(P.quiver, [at]).edges
    group = vertex_group(P, at, tree)
    loop = collapse(w1 * w2.inverse(), tree)
    if not len(loop):
        return WordEquality('equal', 'free reduction')

    rs = group.system(settings)
    if rs.status == COMPLETED:
        if not len(rs.normal_form(loop)):
            return WordEquality('equal', 'completed rewriting')
        witness = separate(group, loop, probes or settings.probes, settings)
        return WordEquality('distinct', 'completed rewriting', witness=witness)

    witness = separate(group, loop, probes or settings.probes, settings)
    if witness is not None:
        return WordEquality('distinct', 'finite quotient', witness=witness)
    try:
        if not len(rs.reduce(loop, limit=settings.bound)):
            return WordEquality('equal', 'partial rewriting')
    except VanKampenError:
        pass
    logger.info("Word problem undecided for %s within bound %d.", loop, settings.bound)
    return WordEquality('unknown', 'bound exhausted', bound=settings.bound)


def to_dot(P: Union[Quiver, Presentable], name: str = 'G') -> str:
    """DOT graph: one node per object, one labelled arc per generating edge."""
    quiver = P if isinstance(P, Quiver) else as_groupoid(P).quiver
    return render('quiver.dot.j2', name=name, vertices=quiver.vertices, edges=quiver.edges)
