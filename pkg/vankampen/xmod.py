from dataclasses import dataclass
from functools   import cached_property
from typing      import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import concurrent.futures
import logging
import os

import yaml

from .config import Settings, settings as default_settings
from .errors import ParseError, PreconditionError
from .event  import Event, EventBroker, final_result
from .finite import FiniteGroup, FiniteGroupoid, group_from_table, named_group, trivial_group
from .schema import Violation, ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CrossedModuleOverGroupoid:
    """
    A crossed module over a finite groupoid.

    Each object x carries a group M(x) and a boundary mu_x: M(x) -> P(x, x).
    Composition in the base is diagrammatic, so an arrow p: x -> y acts
    M(y) -> M(x), written ^p m, and CM1 reads mu_x(^p m) = p mu_y(m) p^-1.

    Attributes:
        name (str): Display name.
        base (FiniteGroupoid): The groupoid P.
        groups (Tuple[FiniteGroup, ...]): M(x) for each object x.
        mu (Tuple[Tuple[int, ...], ...]): mu[x][m] is a loop arrow at x.
        action (Mapping[int, Tuple[int, ...]]): action[p][m] = ^p m.
    """
    name: str
    base: FiniteGroupoid
    groups: Tuple[FiniteGroup, ...]
    mu: Tuple[Tuple[int, ...], ...]
    action: Mapping[int, Tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, 'groups', tuple(self.groups))
        object.__setattr__(self, 'mu', tuple(tuple(m) for m in self.mu))
        object.__setattr__(self, 'action', {p: tuple(row) for p, row in dict(self.action).items()})
        if len(self.groups) != len(self.base.objects) or len(self.mu) != len(self.base.objects):
            raise ValueError("One group and one boundary map per object are required.")

    def act(self, p: int, m: int) -> int:
        return self.action[p][m]

    def boundary(self, x: int, m: int) -> int:
        return self.mu[x][m]

    def group(self, x: int) -> FiniteGroup:
        return self.groups[x]

    @property
    def size(self) -> int:
        return sum(G.order for G in self.groups)


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """
    A crossed module mu: M -> P of finite groups with a left action of P on M.

    Attributes:
        name (str): Display and catalog name.
        M (FiniteGroup): The group acted on.
        P (FiniteGroup): The base group.
        mu (Tuple[int, ...]): Image in P of each element of M.
        action (Tuple[Tuple[int, ...], ...]): action[p][m] = ^p m.
    """
    name: str
    M: FiniteGroup
    P: FiniteGroup
    mu: Tuple[int, ...]
    action: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'mu', tuple(self.mu))
        object.__setattr__(self, 'action', tuple(tuple(row) for row in self.action))
        if len(self.mu) != self.M.order:
            raise ValueError(f"{self.name}: mu needs one image per element of M.")
        if len(self.action) != self.P.order or any(len(row) != self.M.order for row in self.action):
            raise ValueError(f"{self.name}: the action table must be |P| x |M|.")

    # ----- constructors -----
    @classmethod
    def build(cls, name: str, M: FiniteGroup, P: FiniteGroup,
              mu: Callable[[int], int], act: Callable[[int, int], int]) -> 'CrossedModule':
        return cls(name, M, P, tuple(mu(m) for m in range(M.order)),
                   tuple(tuple(act(p, m) for m in range(M.order)) for p in range(P.order)))

    @classmethod
    def identity(cls, G: FiniteGroup) -> 'CrossedModule':
        """G -> G by the identity, acting by conjugation."""
        return cls.build(f"id({G.name})", G, G, lambda m: m, G.conj)

    @classmethod
    def normal_inclusion(cls, G: FiniteGroup, N: Sequence[int], name: Optional[str] = None) -> 'CrossedModule':
        """The inclusion of a normal subgroup, acting by conjugation."""
        if not G.is_normal(N):
            raise PreconditionError(f"The subgroup is not normal in {G.name}.")
        sub, embedding = G.subgroup(N, f"N{len(N)}")
        back = {x: i for i, x in enumerate(embedding)}
        return cls.build(name or f"{sub.name}<{G.name}", sub, G, lambda m: embedding[m],
                         lambda p, m: back[G.conj(p, embedding[m])])

    @classmethod
    def trivial_over(cls, P: FiniteGroup) -> 'CrossedModule':
        """1 -> P."""
        return cls.build(f"1->{P.name}", trivial_group(), P, lambda m: P.identity, lambda p, m: m)

    @classmethod
    def central(cls, M: FiniteGroup, P: FiniteGroup, mu: Optional[Sequence[int]] = None,
                name: Optional[str] = None) -> 'CrossedModule':
        """Abelian M with trivial action; mu defaults to the trivial map."""
        images = tuple(mu) if mu is not None else (P.identity,) * M.order
        return cls(name or f"{M.name}->{P.name}", M, P, images,
                   tuple(tuple(range(M.order)) for _ in range(P.order)))

    @classmethod
    def inner_automorphisms(cls, G: FiniteGroup) -> 'CrossedModule':
        """G -> Aut(G), g to conjugation by g; Aut(G) acts by evaluation."""
        from .finite import automorphism_group
        A, autos = automorphism_group(G)
        position = {f: i for i, f in enumerate(autos)}
        conj = lambda g: position[tuple(G.conj(g, x) for x in range(G.order))]
        return cls.build(f"{G.name}->Aut({G.name})", G, A, conj, lambda a, m: autos[a][m])

    # ----- structure -----
    def act(self, p: int, m: int) -> int:
        return self.action[p][m]

    @cached_property
    def over_groupoid(self) -> CrossedModuleOverGroupoid:
        """The same data over P viewed as a one-object groupoid."""
        return CrossedModuleOverGroupoid(self.name, self.P.groupoid, (self.M,), (self.mu,),
                                         {p: self.action[p] for p in range(self.P.order)})

    @property
    def squares(self) -> int:
        """Number of squares of the associated double groupoid."""
        return self.M.order * self.P.order ** 3

    def to_dict(self) -> Dict[str, Any]:
        M, P = self.M, self.P
        return {
            "name": self.name,
            "M": M.to_dict(),
            "P": P.to_dict(),
            "mu": {M.elements[m]: P.elements[self.mu[m]] for m in range(M.order)},
            "action": {P.elements[p]: {M.elements[m]: M.elements[self.action[p][m]] for m in range(M.order)}
                       for p in range(P.order)},
        }

    def __repr__(self):
        return f"CrossedModule('{self.name}', |M|={self.M.order}, |P|={self.P.order})"


AnyXMod = Union[CrossedModule, CrossedModuleOverGroupoid]


def mutate_action(X: CrossedModule, p: int, m: int, value: Optional[int] = None) -> CrossedModule:
    """
    A copy of X with the single action entry ^p m replaced (by the next element
    of M when `value` is omitted).
    """
    if X.M.order < 2:
        raise PreconditionError("Cannot mutate the action on a trivial group.")
    new = (X.action[p][m] + 1) % X.M.order if value is None else value
    if new == X.action[p][m]:
        raise PreconditionError("The mutation must change the entry.")
    action = [list(row) for row in X.action]
    action[p][m] = new
    return CrossedModule(f"{X.name}*", X.M, X.P, X.mu, tuple(tuple(r) for r in action))


# ----- validation -----

LAWS = ('shape', 'mu_loop', 'mu_hom', 'action_identity', 'action_composition',
        'action_automorphism', 'CM1', 'CM2')


class XModValidator:
    """
    Exhaustive check of the crossed-module axioms: boundary is a morphism,
    the action is a functor into automorphisms, CM1 and CM2.

    `run(stream=True)` yields start, violation and end events; the laws are
    checked in parallel workers.
    """
    def __init__(self, X: AnyXMod, settings: Optional[Settings] = None):
        if isinstance(X, CrossedModule):
            self.X = X.over_groupoid
        elif isinstance(X, CrossedModuleOverGroupoid):
            self.X = X
        else:
            raise PreconditionError(f"Exhaustive validation needs finite data, got {type(X).__name__}.")
        self.settings = settings or default_settings()

    def _names(self):
        X = self.X
        B = X.base
        return (lambda p: B.arrows[p]), (lambda x, m: X.groups[x].elements[m])

    def check(self, law: str) -> Tuple[List[Violation], int]:
        X = self.X
        B = X.base
        arrow, elem = self._names()
        out: List[Violation] = []
        checked = 0
        objs = range(len(B.objects))
        if law == 'shape':
            for p in range(len(B.arrows)):
                checked += 1
                row = X.action.get(p)
                n_src, n_tgt = X.groups[B.src[p]].order, X.groups[B.tgt[p]].order
                if row is None or len(row) != n_tgt or any(not 0 <= v < n_src for v in row):
                    out.append(Violation('shape', {"p": arrow(p)}, "action row missing or out of range"))
            for x in objs:
                checked += 1
                if len(X.mu[x]) != X.groups[x].order:
                    out.append(Violation('shape', {"object": B.objects[x]}, "boundary map has the wrong length"))
            return out, checked
        if law == 'mu_loop':
            for x in objs:
                for m, f in enumerate(X.mu[x]):
                    checked += 1
                    if B.src[f] != x or B.tgt[f] != x:
                        out.append(Violation(law, {"m": elem(x, m), "mu(m)": arrow(f)}))
            return out, checked
        if law == 'mu_hom':
            for x in objs:
                G = X.groups[x]
                for m in range(G.order):
                    for n in range(G.order):
                        checked += 1
                        if X.mu[x][G.mul(m, n)] != B.table.get((X.mu[x][m], X.mu[x][n])):
                            out.append(Violation(law, {"m": elem(x, m), "n": elem(x, n)}))
            return out, checked
        if law == 'action_identity':
            for x in objs:
                e = B.identities[x]
                for m in range(X.groups[x].order):
                    checked += 1
                    if X.act(e, m) != m:
                        out.append(Violation(law, {"object": B.objects[x], "m": elem(x, m)},
                                             f"^1 m = {elem(x, X.act(e, m))}"))
            return out, checked
        if law == 'action_composition':
            for (p, q), pq in B.table.items():
                z = B.tgt[q]
                for m in range(X.groups[z].order):
                    checked += 1
                    lhs, rhs = X.act(pq, m), X.act(p, X.act(q, m))
                    if lhs != rhs:
                        x = B.src[p]
                        out.append(Violation(law, {"p": arrow(p), "q": arrow(q), "m": elem(z, m)},
                                             f"^(pq)m = {elem(x, lhs)}, ^p(^q m) = {elem(x, rhs)}"))
            return out, checked
        if law == 'action_automorphism':
            for p in range(len(B.arrows)):
                x, y = B.src[p], B.tgt[p]
                Gx, Gy = X.groups[x], X.groups[y]
                row = X.action[p]
                checked += 1
                if len(set(row)) != Gx.order or Gx.order != Gy.order:
                    out.append(Violation(law, {"p": arrow(p)}, "^p is not a bijection"))
                for m in range(Gy.order):
                    for n in range(Gy.order):
                        checked += 1
                        if row[Gy.mul(m, n)] != Gx.mul(row[m], row[n]):
                            out.append(Violation(law, {"p": arrow(p), "m": elem(y, m), "n": elem(y, n)},
                                                 "^p(mn) != ^p m ^p n"))
            return out, checked
        if law == 'CM1':
            for p in range(len(B.arrows)):
                x, y = B.src[p], B.tgt[p]
                for m in range(X.groups[y].order):
                    checked += 1
                    lhs = X.mu[x][X.act(p, m)]
                    rhs = B.compose(B.compose(p, X.mu[y][m]), B.inv(p))
                    if lhs != rhs:
                        out.append(Violation(law, {"p": arrow(p), "m": elem(y, m)},
                                             f"mu(^p m) = {arrow(lhs)}, p mu(m) p^-1 = {arrow(rhs)}"))
            return out, checked
        if law == 'CM2':
            for x in objs:
                G = X.groups[x]
                for m in range(G.order):
                    for n in range(G.order):
                        checked += 1
                        lhs = G.conj(m, n)
                        rhs = X.act(X.mu[x][m], n)
                        if lhs != rhs:
                            out.append(Violation(law, {"m": elem(x, m), "n": elem(x, n)},
                                                 f"m n m^-1 = {elem(x, lhs)}, ^(mu m) n = {elem(x, rhs)}"))
            return out, checked
        raise ValueError(f"Unknown law: {law}")

    def run(self, stream: bool = False):
        if stream:
            return self._run_stream()
        return final_result(self._run_stream())

    def _run_stream(self) -> Iterator[Event]:
        source = f"XMod:{self.X.name}"
        yield Event(source, "start", {"laws": list(LAWS)})
        shape, checked = self.check('shape')
        if shape:
            for v in shape:
                yield Event(source, "violation", v.to_dict())
            yield Event(source, "end", {"result": ValidationReport(self.X.name, tuple(shape), checked)})
            return

        broker = EventBroker()
        found: Dict[str, List[Violation]] = {}
        counts: Dict[str, int] = {}

        def worker(law: str):
            try:
                violations, n = self.check(law)
                broker.emit(source, "_done", {"law": law, "violations": violations, "checked": n})
            except Exception as e:
                broker.emit(source, "error", {"law": law, "message": str(e)})
                broker.emit(source, "_done", {"law": law, "violations": [], "checked": 0})

        laws = LAWS[1:]
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.settings.workers) as executor:
            for law in laws:
                executor.submit(worker, law)
            finished = 0
            while finished < len(laws):
                event: Event = broker.get()
                if event.type != "_done":
                    yield event
                    continue
                finished += 1
                law = event.payload["law"]
                found[law] = event.payload["violations"]
                counts[law] = event.payload["checked"]
                for v in found[law]:
                    yield Event(source, "violation", v.to_dict())
                yield Event(source, "progress", {"law": law, "checked": counts[law], "violations": len(found[law])})

        violations = tuple(v for law in laws for v in found.get(law, []))
        report = ValidationReport(self.X.name, violations, checked + sum(counts.values()), True)
        logger.info("%s: %d violations in %d checks.", self.X.name, len(violations), report.checked)
        yield Event(source, "end", {"result": report})


def validate_xmod(X: AnyXMod, settings: Optional[Settings] = None) -> ValidationReport:
    """
    Exhaustively checks the action laws, CM1 and CM2.

    Raises:
        PreconditionError: If X is not given by finite tables.
    """
    return XModValidator(X, settings).run(stream=False)


# ----- morphisms -----

@dataclass(frozen=True, eq=False)
class XModMorphism:
    """
    A morphism of crossed modules: maps on the M part and on the P part that
    commute with the boundaries and the actions. Maps are element tables for
    finite sources, or callables for presented ones.
    """
    source: Any
    target: CrossedModule
    m_map: Union[Tuple[int, ...], Callable[[Any], int]]
    p_map: Union[Tuple[int, ...], Callable[[Any], int]]

    def on_m(self, m) -> int:
        return self.m_map(m) if callable(self.m_map) else self.m_map[m]

    def on_p(self, p) -> int:
        return self.p_map(p) if callable(self.p_map) else self.p_map[p]

    def check(self) -> ValidationReport:
        """Checks morphism laws exhaustively; needs a finite source."""
        X, Y = self.source, self.target
        if not isinstance(X, CrossedModule):
            raise PreconditionError("Exhaustive morphism checks need a finite source.")
        out = []
        n = 0
        for m in range(X.M.order):
            n += 1
            if Y.mu[self.on_m(m)] != self.on_p(X.mu[m]):
                out.append(Violation('boundary', {"m": X.M.elements[m]}))
            for k in range(X.M.order):
                n += 1
                if self.on_m(X.M.mul(m, k)) != Y.M.mul(self.on_m(m), self.on_m(k)):
                    out.append(Violation('m_hom', {"m": X.M.elements[m], "n": X.M.elements[k]}))
        for p in range(X.P.order):
            for q in range(X.P.order):
                n += 1
                if self.on_p(X.P.mul(p, q)) != Y.P.mul(self.on_p(p), self.on_p(q)):
                    out.append(Violation('p_hom', {"p": X.P.elements[p], "q": X.P.elements[q]}))
            for m in range(X.M.order):
                n += 1
                if self.on_m(X.act(p, m)) != Y.act(self.on_p(p), self.on_m(m)):
                    out.append(Violation('equivariance', {"p": X.P.elements[p], "m": X.M.elements[m]}))
        return ValidationReport(f"{X.name}->{Y.name}", tuple(out), n)


def morphisms(X: CrossedModule, Y: CrossedModule,
              p_maps: Optional[Sequence[Tuple[int, ...]]] = None) -> Iterator[XModMorphism]:
    """
    Enumerates crossed-module morphisms X -> Y.

    Args:
        p_maps: Restrict the P part to these maps (all morphisms P -> P' by default).
    """
    p_candidates = list(p_maps) if p_maps is not None else list(X.P.homomorphisms(Y.P))
    m_candidates = list(X.M.homomorphisms(Y.M))
    for fp in p_candidates:
        for fm in m_candidates:
            if any(Y.mu[fm[m]] != fp[X.mu[m]] for m in range(X.M.order)):
                continue
            if any(fm[X.act(p, m)] != Y.act(fp[p], fm[m]) for p in X.P.generators for m in X.M.generators):
                continue
            yield XModMorphism(X, Y, fm, fp)


# ----- serialization -----

def _load_group(data: Any, label: str) -> FiniteGroup:
    if isinstance(data, str):
        return named_group(data)
    if isinstance(data, dict):
        try:
            return group_from_table(str(data.get('name', label)), data['elements'], data['table'])
        except KeyError as e:
            raise ParseError(f"Group '{label}' needs '{e.args[0]}'.")
    raise ParseError(f"Group '{label}' must be a name or a table.")


def xmod_from_dict(data: Mapping[str, Any]) -> CrossedModule:
    """
    Builds a crossed module from its dictionary form.

    `mu` maps element names of M to element names of P. `action` is either a
    table p -> (m -> ^p m), or "conjugation" (M names a subgroup of P) or
    "trivial".
    """
    try:
        name = str(data.get('name', 'X'))
        M, P = _load_group(data['M'], 'M'), _load_group(data['P'], 'P')
        mu_data = data['mu']
    except KeyError as e:
        raise ParseError(f"Crossed module needs '{e.args[0]}'.")
    if mu_data == 'identity':
        mu = tuple(P.index(M.elements[m]) for m in range(M.order))
    elif mu_data == 'trivial':
        mu = (P.identity,) * M.order
    else:
        mu = tuple(P.index(str(mu_data[M.elements[m]])) for m in range(M.order))
    action_data = data.get('action', 'trivial')
    if action_data == 'trivial':
        action = tuple(tuple(range(M.order)) for _ in range(P.order))
    elif action_data == 'conjugation':
        back = {mu[m]: m for m in range(M.order)}
        if len(back) != M.order:
            raise ParseError("Conjugation action needs an injective boundary.")
        try:
            action = tuple(tuple(back[P.conj(p, mu[m])] for m in range(M.order)) for p in range(P.order))
        except KeyError:
            raise ParseError("The image of the boundary is not normal; conjugation does not act.")
    else:
        action = tuple(tuple(M.index(str(action_data[P.elements[p]][M.elements[m]])) for m in range(M.order))
                       for p in range(P.order))
    return CrossedModule(name, M, P, mu, action)


def load_xmod(data: str) -> CrossedModule:
    """
    Loads a crossed module from a YAML (or JSON) file path or text, or by
    catalog name.
    """
    from .catalog import entry
    if os.path.isfile(data):
        with open(data, 'r', encoding='utf-8') as f:
            text = f.read()
    else:
        text = data
    try:
        config = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ParseError(str(e), mark.line + 1 if mark else None, mark.column + 1 if mark else None)
    if isinstance(config, str):
        return entry(config)
    if not isinstance(config, dict):
        raise ParseError("A crossed module file must hold a mapping.")
    return xmod_from_dict(config)


def dump_xmod(X: CrossedModule) -> str:
    return yaml.safe_dump(X.to_dict(), sort_keys=False, allow_unicode=True)
