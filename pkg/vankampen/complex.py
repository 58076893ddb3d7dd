"""
Combinatorial 2-complexes: vertices, directed edges and 2-cells attached
along closed edge paths.

The `.cx2` text format is line oriented, with `#` comments:

    vertex v0 v1
    edge a : v0 -> v1
    cell s : a b a^-1 b
    base v0
    sub U : vertices=v0,v1 edges=a cells=

Fundamental groupoids on a set C of base points contract a spanning forest
with one tree per base point; a subcomplex U uses the base points C ∩ U.
"""
from dataclasses import dataclass, field
from itertools   import combinations
from typing      import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging
import os

import networkx as nx

from .config    import Settings, settings as default_settings
from .colimit   import coequaliser
from .errors    import BoundExceededError, HypothesisError, ParseError, PreconditionError
from .free_xmod import FreeCrossedModule
from .groupoid  import (Edge, Forest, GroupoidMorphism, GroupoidPresentation, GroupPresentation, Quiver,
                        Relation, collapse, spanning_forest, vertex_group)
from .probes    import compare, group_homomorphisms, probe_group
from .rewriting import COMPLETED
from .schema    import ComparisonReport, TripleReport
from .utils     import render
from .words     import GenSymbol, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cell:
    name: str
    word: Word


@dataclass(frozen=True)
class CombinatorialComplex:
    """
    Attributes:
        vertices (Tuple[str, ...]): Vertex names.
        edges (Tuple[Edge, ...]): Directed edges.
        cells (Tuple[Cell, ...]): 2-cells with closed attaching paths.
        name (str): Display name.
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()
    cells: Tuple[Cell, ...] = ()
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(self.vertices))
        object.__setattr__(self, 'edges', tuple(self.edges))
        object.__setattr__(self, 'cells', tuple(self.cells))
        names = [c.name for c in self.cells]
        if len(set(names)) != len(names):
            raise PreconditionError("Cell names must be unique.")
        quiver = self.quiver
        for c in self.cells:
            if not len(c.word):
                raise PreconditionError(f"Cell '{c.name}' has an empty attaching path.", c.name)
            start, end = quiver.endpoints(c.word)
            if start != end:
                raise PreconditionError(f"Cell '{c.name}' is not attached along a closed path.", c.name)

    @property
    def quiver(self) -> Quiver:
        return Quiver(self.vertices, self.edges)

    def components(self) -> List[FrozenSet[str]]:
        graph = self.quiver.graph()
        return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)

    def cell_base(self, c: Cell) -> str:
        return self.quiver.endpoints(c.word)[0]

    def presentation(self) -> GroupoidPresentation:
        """The edge-path groupoid on every vertex: each cell word equals 1."""
        return GroupoidPresentation(self.quiver, tuple(Relation(c.word, Word(), self.cell_base(c)) for c in self.cells),
                                    self.name)

    def subcomplex(self, vertices: Iterable[str], edges: Iterable[str], cells: Iterable[str],
                   name: str = '') -> 'CombinatorialComplex':
        """
        Raises:
            PreconditionError: For unknown names or when the parts are not
                closed under attachment.
        """
        vs, es, cs = set(vertices), set(edges), set(cells)
        known_e = {e.name: e for e in self.edges}
        known_c = {c.name: c for c in self.cells}
        for v in vs:
            if v not in self.vertices:
                raise PreconditionError(f"Subcomplex '{name}' names unknown vertex '{v}'.", v)
        for e in es:
            if e not in known_e:
                raise PreconditionError(f"Subcomplex '{name}' names unknown edge '{e}'.", e)
            if known_e[e].src not in vs or known_e[e].tgt not in vs:
                raise PreconditionError(f"Edge '{e}' of subcomplex '{name}' leaves its vertices.", e)
        for c in cs:
            if c not in known_c:
                raise PreconditionError(f"Subcomplex '{name}' names unknown cell '{c}'.", c)
            missing = [g for g in known_c[c].word.generators() if g not in es]
            if missing:
                raise PreconditionError(f"Cell '{c}' of subcomplex '{name}' uses edge '{missing[0]}' outside it.", c)
        return CombinatorialComplex(tuple(v for v in self.vertices if v in vs),
                                    tuple(e for e in self.edges if e.name in es),
                                    tuple(c for c in self.cells if c.name in cs), name)

    def intersect(self, other: 'CombinatorialComplex', name: str = '') -> 'CombinatorialComplex':
        es = {e.name for e in other.edges}
        cs = {c.name for c in other.cells}
        return CombinatorialComplex(tuple(v for v in self.vertices if v in other.vertices),
                                    tuple(e for e in self.edges if e.name in es),
                                    tuple(c for c in self.cells if c.name in cs),
                                    name or f"{self.name}∩{other.name}")

    def contains(self, other: 'CombinatorialComplex') -> bool:
        return set(other.vertices) <= set(self.vertices) and set(other.edges) <= set(self.edges) \
            and set(other.cells) <= set(self.cells)


@dataclass(frozen=True)
class CoverSpec:
    """Named subcomplexes; as a cover their union must be the whole complex."""
    pieces: Tuple[CombinatorialComplex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'pieces', tuple(self.pieces))

    def piece(self, name: str) -> CombinatorialComplex:
        for U in self.pieces:
            if U.name == name:
                return U
        raise PreconditionError(f"Unknown subcomplex '{name}'.", name)

    def check_covers(self, X: CombinatorialComplex):
        """
        Raises:
            PreconditionError: Naming a vertex, edge or cell outside every piece.
        """
        if not self.pieces:
            raise PreconditionError("The cover has no pieces.")
        for v in X.vertices:
            if not any(v in U.vertices for U in self.pieces):
                raise PreconditionError(f"Vertex '{v}' is not covered.", v)
        for e in X.edges:
            if not any(e in U.edges for U in self.pieces):
                raise PreconditionError(f"Edge '{e.name}' is not covered.", e.name)
        for c in X.cells:
            if not any(c in U.cells for U in self.pieces):
                raise PreconditionError(f"Cell '{c.name}' is not covered.", c.name)


@dataclass(frozen=True)
class ParsedComplex:
    complex: CombinatorialComplex
    cover: CoverSpec = field(default_factory=CoverSpec)
    base: Tuple[str, ...] = ()


# ----- text format -----

def _column(line: str, token: str) -> Optional[int]:
    i = line.find(token)
    return i + 1 if i >= 0 else None


def _split(line: str, lineno: int, keyword: str) -> Tuple[str, str]:
    head, sep, body = line.partition(':')
    if not sep:
        raise ParseError(f"'{keyword}' expects '<name> : ...'.", lineno)
    name = head[len(keyword):].strip()
    if not name or len(name.split()) != 1:
        raise ParseError(f"'{keyword}' expects a single name before ':'.", lineno)
    return name, body.strip()


def parse_complex(text: str, name: str = '') -> ParsedComplex:
    """
    Reads the `.cx2` format.

    Raises:
        ParseError: On malformed lines, unknown references and open cells,
            with line and column.
    """
    vertices: List[str] = []
    edges: List[Edge] = []
    cells: List[Tuple[Cell, int, str]] = []
    base: List[Tuple[str, int, str]] = []
    subs: List[Tuple[str, Dict[str, List[str]], int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].rstrip()
        if not line.strip():
            continue
        keyword = line.split()[0]
        if keyword == 'vertex':
            for v in line.split()[1:]:
                if v in vertices:
                    raise ParseError(f"Vertex '{v}' is declared twice.", lineno, _column(raw, v))
                vertices.append(v)
        elif keyword == 'edge':
            ename, body = _split(line, lineno, 'edge')
            parts = [p.strip() for p in body.split('->')]
            if len(parts) != 2 or not all(parts):
                raise ParseError(f"Edge '{ename}' expects '<src> -> <tgt>'.", lineno)
            for v in parts:
                if v not in vertices:
                    raise ParseError(f"Edge '{ename}' uses unknown vertex '{v}'.", lineno, _column(raw, v))
            if any(e.name == ename for e in edges):
                raise ParseError(f"Edge '{ename}' is declared twice.", lineno)
            edges.append(Edge(ename, parts[0], parts[1]))
        elif keyword == 'cell':
            cname, body = _split(line, lineno, 'cell')
            cells.append((Cell(cname, Word.parse(body, lineno)), lineno, raw))
        elif keyword == 'base':
            base.extend((v, lineno, raw) for v in line.split()[1:])
        elif keyword == 'sub':
            sname, body = _split(line, lineno, 'sub')
            fields: Dict[str, List[str]] = {'vertices': [], 'edges': [], 'cells': []}
            for item in body.split():
                key, sep, value = item.partition('=')
                if not sep or key not in fields:
                    raise ParseError(f"Subcomplex '{sname}' has a malformed field '{item}'.", lineno, _column(raw, item))
                fields[key] = [x for x in value.split(',') if x]
            subs.append((sname, fields, lineno, raw))
        else:
            raise ParseError(f"Unknown keyword '{keyword}'.", lineno, _column(raw, keyword))

    quiver = Quiver(tuple(vertices), tuple(edges))
    edge_names = {e.name for e in edges}
    for c, lineno, raw in cells:
        for g in c.word.generators():
            if g not in edge_names:
                raise ParseError(f"Cell '{c.name}' uses unknown edge '{g}'.", lineno, _column(raw, g))
        try:
            start, end = quiver.endpoints(c.word)
        except PreconditionError as e:
            raise ParseError(f"Cell '{c.name}': {e}", lineno)
        if start != end:
            raise ParseError(f"Cell '{c.name}' is not attached along a closed path ({start} to {end}).", lineno)
    for v, lineno, raw in base:
        if v not in vertices:
            raise ParseError(f"Base point '{v}' is not a vertex.", lineno, _column(raw, v))

    try:
        X = CombinatorialComplex(tuple(vertices), tuple(edges), tuple(c for c, _, _ in cells), name)
    except PreconditionError as e:
        raise ParseError(str(e))
    pieces = []
    for sname, fields, lineno, _ in subs:
        try:
            pieces.append(X.subcomplex(fields['vertices'], fields['edges'], fields['cells'], sname))
        except PreconditionError as e:
            raise ParseError(str(e), lineno)
    logger.debug("Parsed %s: %d vertices, %d edges, %d cells, %d subcomplexes.",
                 name or 'complex', len(vertices), len(edges), len(cells), len(pieces))
    return ParsedComplex(X, CoverSpec(tuple(pieces)), tuple(dict.fromkeys(v for v, _, _ in base)))


def format_complex(parsed: ParsedComplex) -> str:
    """The canonical `.cx2` text."""
    X = parsed.complex
    return render('complex.cx2.j2', vertices=X.vertices, edges=X.edges,
                  cells=[(c.name, str(c.word)) for c in X.cells], base=parsed.base,
                  subs=[(U.name, ','.join(U.vertices), ','.join(e.name for e in U.edges),
                         ','.join(c.name for c in U.cells)) for U in parsed.cover.pieces])


def load_complex(path: str) -> ParsedComplex:
    """Parses a `.cx2` file; the complex is named after the file."""
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    return parse_complex(text, os.path.splitext(os.path.basename(path))[0])


# ----- fundamental groupoids -----

def _check_base(X: CombinatorialComplex, C: Iterable[str]) -> Tuple[str, ...]:
    C = tuple(sorted(set(C)))
    for c in C:
        if c not in X.vertices:
            raise PreconditionError(f"Base point '{c}' is not a vertex of {X.name or 'the complex'}.", c)
    for comp in X.components():
        if not comp & set(C):
            raise HypothesisError(f"The base points miss the component {{{', '.join(sorted(comp))}}} "
                                  f"of {X.name or 'the complex'}.")
    return C


def _pi1(X: CombinatorialComplex, C: Iterable[str]) -> Tuple[GroupoidPresentation, Forest]:
    C = _check_base(X, C)
    forest = spanning_forest(X.quiver, C)
    generators = []
    for e in X.edges:
        if e.name not in forest.edges:
            generators.append(Edge(e.name, forest.root[e.src], forest.root[e.tgt]))
    relations = []
    for c in X.cells:
        w = collapse(c.word, forest.edges)
        if len(w):
            relations.append(Relation(w, Word(), forest.root[X.cell_base(c)]))
    return GroupoidPresentation(Quiver(C, tuple(generators)), tuple(relations), X.name), forest


def pi1_complex(X: CombinatorialComplex, C: Iterable[str]) -> GroupoidPresentation:
    """
    π₁(X, C): one generator per edge outside the canonical spanning forest
    rooted at C, one relation per 2-cell.

    Raises:
        HypothesisError: If C misses a component of X.
    """
    return _pi1(X, C)[0]


def check_cover_hypothesis(X: CombinatorialComplex, cover: CoverSpec, C: Iterable[str]):
    """
    C must meet every component of every piece and of every 2- and 3-fold
    intersection.

    Raises:
        HypothesisError: Naming the intersection and the missing component.
    """
    C = set(C)
    pieces = cover.pieces
    for k in (1, 2, 3):
        for group in combinations(pieces, k):
            U = group[0]
            for V in group[1:]:
                U = U.intersect(V)
            label = '∩'.join(P.name for P in group)
            for comp in U.components():
                if not comp & C:
                    raise HypothesisError(f"The base points miss the component {{{', '.join(sorted(comp))}}} "
                                          f"of {label}.")


def _rename(word: Word, prefix: str) -> Word:
    return Word(tuple(GenSymbol(f"{prefix}.{s.name}", s.exponent) for s in word.letters))


def pi1_via_cover(X: CombinatorialComplex, cover: CoverSpec, C: Iterable[str],
                  settings: Optional[Settings] = None) -> Tuple[GroupoidPresentation, ComparisonReport]:
    """
    π₁(X, C) as the coequaliser of the two maps from the fundamental groupoids
    of the pairwise intersections to those of the pieces, compared with
    `pi1_complex` by probe counts.

    Raises:
        PreconditionError: If the pieces do not cover X.
        HypothesisError: If C misses a component of a piece or of a 2- or
            3-fold intersection.
    """
    settings = settings or default_settings()
    C = _check_base(X, C)
    cover.check_covers(X)
    check_cover_hypothesis(X, cover, C)

    pieces = [_pi1(U, [c for c in C if c in U.vertices]) for U in cover.pieces]
    pairs = []
    for i, j in combinations(range(len(cover.pieces)), 2):
        U = cover.pieces[i].intersect(cover.pieces[j])
        if U.vertices:
            pairs.append((i, j, U, _pi1(U, [c for c in C if c in U.vertices])))

    def disjoint(parts: Sequence[GroupoidPresentation], name: str) -> GroupoidPresentation:
        vertices, edges, relations = [], [], []
        for k, P in enumerate(parts):
            vertices.extend(f"{k}.{v}" for v in P.objects)
            edges.extend(Edge(f"{k}.{e.name}", f"{k}.{e.src}", f"{k}.{e.tgt}") for e in P.edges)
            relations.extend(Relation(_rename(r.lhs, str(k)), _rename(r.rhs, str(k)), f"{k}.{r.at}")
                             for r in P.relations)
        return GroupoidPresentation(Quiver(tuple(vertices), tuple(edges)), tuple(relations), name)

    target = disjoint([P for P, _ in pieces], f"⊔π₁(U, C)")
    source = disjoint([P for _, _, _, (P, _) in pairs], f"⊔π₁(U∩V, C)")

    def leg(side: int) -> GroupoidMorphism:
        objects, images = {}, {}
        for k, (i, j, U, (P, forest)) in enumerate(pairs):
            piece = i if side == 0 else j
            tree = pieces[piece][1].edges
            for v in P.objects:
                objects[f"{k}.{v}"] = f"{piece}.{v}"
            for e in P.edges:
                edge = next(x for x in U.edges if x.name == e.name)
                path = forest.path[edge.src] * Word((GenSymbol(e.name),)) * forest.path[edge.tgt].inverse()
                images[f"{k}.{e.name}"] = _rename(collapse(path, tree), str(piece))
        return GroupoidMorphism(source, target, objects, images)

    cocone = coequaliser(leg(0), leg(1), f"{X.name or 'X'} by cover")
    direct = pi1_complex(X, C)
    report = compare(cocone.apex, direct, settings.probes, settings, left='cover', right='direct')
    logger.info("Cover of %s: %d pieces, %d intersections, agree=%s.",
                X.name or 'complex', len(cover.pieces), len(pairs), report.agree)
    return cocone.apex, report


# ----- crossed module of the 2-skeleton pair -----

def xmod_of_complex(X: CombinatorialComplex, C: Iterable[str], settings: Optional[Settings] = None) -> FreeCrossedModule:
    """
    The free crossed module π₂(X, X¹, c) -> π₁(X¹, c) at the least base point c:
    P is free on the edges outside the spanning tree and each 2-cell gives the
    relator of its attaching path with the tree contracted.

    Raises:
        HypothesisError: If X is not connected.
    """
    C = _check_base(X, C)
    if len(X.components()) != 1:
        raise HypothesisError(f"{X.name or 'The complex'} is not connected.")
    c0 = C[0]
    forest = spanning_forest(X.quiver, [c0])
    P = GroupPresentation(tuple(e.name for e in X.edges if e.name not in forest.edges), (), f"π₁({X.name}¹)")
    w = {}
    for c in X.cells:
        v = X.cell_base(c)
        w[c.name] = collapse(forest.path[v] * c.word * forest.path[v].inverse(), forest.edges)
    return FreeCrossedModule(P, w, settings, f"π₂({X.name}, {X.name}¹)")


# ----- connected triples -----

def _preferred_tree(quiver: Quiver, root: str, preferred: FrozenSet[str]) -> FrozenSet[str]:
    """A spanning tree of root's component whose restriction to `preferred` edges spans their component."""
    inner = spanning_forest(Quiver(quiver.vertices, tuple(e for e in quiver.edges if e.name in preferred)), [root])
    reached = {v for v, r in inner.root.items() if r == root}
    tree = set(e for e in inner.edges if quiver.edge_map[e].src in reached)
    # reached vertices collapse onto root; the rest of the tree is a BFS from there
    graph = nx.Graph()
    graph.add_node(root)
    for e in sorted(quiver.edges, key=lambda e: e.name):
        u, v = (root if x in reached else x for x in (e.src, e.tgt))
        if u != v and not graph.has_edge(u, v):
            graph.add_edge(u, v, name=e.name)
    tree.update(graph.edges[u, v]['name'] for u, v in nx.bfs_edges(graph, root))
    return frozenset(tree)


def _reached_by_cells(group: GroupPresentation, known: set) -> set:
    known = set(known)
    changed = True
    while changed:
        changed = False
        for r in group.relators:
            unknown = [s.name for s in r.letters if s.name not in known]
            if len(unknown) == 1:
                known.add(unknown[0])
                changed = True
    return known


def _separate_membership(group: GroupPresentation, sub: Sequence[str], targets: Sequence[str],
                         settings: Settings) -> Optional[str]:
    for name in settings.probes:
        H = probe_group(name)
        if H is None:
            continue
        try:
            for images in group_homomorphisms(group, H, settings.hom_cap):
                image = H.closure(images[g] for g in sub)
                for e in targets:
                    if images[e] not in image:
                        mapping = ', '.join(f"{g}->{H.elements[x]}" for g, x in images.items())
                        return f"{e} is outside the image under {name}: {mapping}"
        except BoundExceededError:
            logger.warning("Probe %s skipped: too many assignments.", name)
    return None


def check_connected_triple(X: CombinatorialComplex, A: CombinatorialComplex, C: Iterable[str],
                           settings: Optional[Settings] = None) -> TripleReport:
    """
    (i) C meets every component of A and of X. (ii) π₁(A, C) -> π₁(X, C) is
    full, read combinatorially: decided by reaching the generators of X through
    its cells, by finite quotients or by completed rewriting, else left open
    within bounds.
    """
    settings = settings or default_settings()
    C = tuple(sorted(set(C)))
    if not X.contains(A):
        raise PreconditionError(f"{A.name or 'A'} is not a subcomplex of {X.name or 'X'}.")
    if not C:
        return TripleReport(False, "C is empty", None, 'certified')
    outside = [c for c in C if c not in A.vertices]
    if outside:
        return TripleReport(False, f"base point {outside[0]} is not in {A.name or 'A'}", None, 'certified')
    for label, Y in (('A', A), ('X', X)):
        for comp in Y.components():
            if not comp & set(C):
                return TripleReport(False, f"C misses the component {{{', '.join(sorted(comp))}}} of {label}",
                                    None, 'certified')

    a_comp = {v: k for k, comp in enumerate(A.components()) for v in comp}
    x_comp = {v: k for k, comp in enumerate(X.components()) for v in comp}
    for c, d in combinations(C, 2):
        if x_comp[c] == x_comp[d] and a_comp[c] != a_comp[d]:
            return TripleReport(True, "", False, 'certified', f"no path from {c} to {d} in {A.name or 'A'}")

    a_edges = frozenset(e.name for e in A.edges)
    presentation = X.presentation()
    decided_bounded = False
    for comp in A.components():
        c = min(set(C) & comp)
        tree = _preferred_tree(X.quiver, c, a_edges)
        group = vertex_group(presentation, c, tree)
        sub = [g for g in group.generators if g in a_edges]
        targets = [g for g in group.generators if g not in _reached_by_cells(group, sub)]
        if not targets:
            continue
        witness = _separate_membership(group, sub, targets, settings)
        if witness is not None:
            return TripleReport(True, "", False, 'bounded', witness)
        quotient = GroupPresentation(group.generators, group.relators + tuple(Word.of(g) for g in sub))
        rs = quotient.system(settings)
        if rs.status == COMPLETED:
            for e in targets:
                if len(rs.normal_form(Word.of(e))):
                    return TripleReport(True, "", False, 'certified',
                                        f"{e} survives modulo the normal closure of the image")
        decided_bounded = True
        logger.info("Fullness at %s undecided for %s.", c, ', '.join(targets))
    if decided_bounded:
        return TripleReport(True, "", None, 'bounded')
    return TripleReport(True, "", True, 'certified')
