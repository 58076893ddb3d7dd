"""
Finite crossed complexes truncated at a dimension bound.

Dimensions 1 and 2 are a crossed module over a groupoid. Each higher level
carries an abelian group per object, a boundary into the level below at the
same object, and an action of the base arrows (p: x -> y acts C(y) -> C(x)).
"""
from dataclasses import dataclass, field
from typing      import Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from .config import Settings, settings as default_settings
from .errors import PreconditionError
from .event  import Event, final_result
from .finite import FiniteGroup
from .schema import ValidationReport, Violation
from .xmod   import CrossedModule, CrossedModuleOverGroupoid, XModValidator

logger = logging.getLogger(__name__)

LEVEL_LAWS = ('abelian', 'boundary_hom', 'boundary_square', 'trivial_action',
              'action_identity', 'action_composition', 'action_automorphism', 'equivariance')


@dataclass(frozen=True, eq=False)
class ChainLevel:
    """
    Attributes:
        groups (Tuple[FiniteGroup, ...]): C_n(x) for each object x.
        boundary (Tuple[Tuple[int, ...], ...]): boundary[x][c] in the level below at x.
        action (Mapping[int, Tuple[int, ...]]): action[p][c] = ^p c.
    """
    groups: Tuple[FiniteGroup, ...]
    boundary: Tuple[Tuple[int, ...], ...]
    action: Mapping[int, Tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, 'groups', tuple(self.groups))
        object.__setattr__(self, 'boundary', tuple(tuple(b) for b in self.boundary))
        object.__setattr__(self, 'action', {p: tuple(row) for p, row in dict(self.action).items()})

    @classmethod
    def uniform(cls, C: FiniteGroup, X: CrossedModuleOverGroupoid, boundary: Optional[Sequence[int]] = None,
                below: Optional['ChainLevel'] = None) -> 'ChainLevel':
        """
        The same group at every object with trivial action; the boundary
        defaults to the zero map into the level below (or into M at dimension 3).
        """
        n = len(X.base.objects)
        if boundary is None:
            targets = below.groups if below is not None else X.groups
            bounds = tuple((targets[x].identity,) * C.order for x in range(n))
        else:
            bounds = (tuple(boundary),) * n
        return cls((C,) * n, bounds, {p: tuple(range(C.order)) for p in range(len(X.base.arrows))})


@dataclass(frozen=True, eq=False)
class CrossedComplexData:
    """
    Attributes:
        bound (int): The top dimension N >= 2.
        dim2 (CrossedModuleOverGroupoid): Dimensions 1 and 2.
        levels (Tuple[ChainLevel, ...]): Dimensions 3 to N.
    """
    bound: int
    dim2: Union[CrossedModule, CrossedModuleOverGroupoid]
    levels: Tuple[ChainLevel, ...] = field(default=())

    def __post_init__(self):
        if isinstance(self.dim2, CrossedModule):
            object.__setattr__(self, 'dim2', self.dim2.over_groupoid)
        object.__setattr__(self, 'levels', tuple(self.levels))
        if self.bound < 2:
            raise PreconditionError("A crossed complex has dimension bound at least 2.", str(self.bound))
        if len(self.levels) != self.bound - 2:
            raise PreconditionError(f"Dimension bound {self.bound} needs {self.bound - 2} levels above 2, "
                                    f"got {len(self.levels)}.", str(self.bound))

    @property
    def name(self) -> str:
        return f"{self.dim2.name}[{self.bound}]"


class CrossedComplexValidator:
    """
    Checks the crossed module in dimension 2, then each higher level: abelian
    groups, boundaries that are equivariant homomorphisms composing trivially,
    and a base action on which the image of the dimension-2 boundary is trivial.
    """
    def __init__(self, C: CrossedComplexData, settings: Optional[Settings] = None):
        self.C = C
        self.settings = settings or default_settings()

    def _below(self, k: int):
        """Groups of the level under levels[k], as a per-object sequence."""
        return self.C.dim2.groups if k == 0 else self.C.levels[k - 1].groups

    def _below_act(self, k: int, p: int, c: int) -> int:
        return self.C.dim2.act(p, c) if k == 0 else self.C.levels[k - 1].action[p][c]

    def check(self, k: int, law: str) -> Tuple[List[Violation], int]:
        X = self.C.dim2
        B = X.base
        L = self.C.levels[k]
        dim = k + 3
        below = self._below(k)
        out: List[Violation] = []
        checked = 0
        objs = range(len(B.objects))

        def where(**witness):
            return {"dimension": dim, **witness}

        if law == 'abelian':
            for x in objs:
                checked += 1
                if not L.groups[x].is_abelian():
                    out.append(Violation(law, where(object=B.objects[x])))
        elif law == 'boundary_hom':
            for x in objs:
                G, H, d = L.groups[x], below[x], L.boundary[x]
                for a in range(G.order):
                    for b in range(G.order):
                        checked += 1
                        if d[G.mul(a, b)] != H.mul(d[a], d[b]):
                            out.append(Violation(law, where(a=G.elements[a], b=G.elements[b])))
        elif law == 'boundary_square':
            for x in objs:
                G, d = L.groups[x], L.boundary[x]
                for c in range(G.order):
                    checked += 1
                    if k == 0:
                        ok = X.mu[x][d[c]] == B.identities[x]
                    else:
                        lower = self.C.levels[k - 1]
                        ok = lower.boundary[x][d[c]] == self._below(k - 1)[x].identity
                    if not ok:
                        out.append(Violation(law, where(c=G.elements[c]), "the composite of two boundaries is not trivial"))
        elif law == 'trivial_action':
            for x in objs:
                M, G = X.groups[x], L.groups[x]
                for m in range(M.order):
                    for c in range(G.order):
                        checked += 1
                        if L.action[X.mu[x][m]][c] != c:
                            out.append(Violation(law, where(m=M.elements[m], c=G.elements[c])))
        elif law == 'action_identity':
            for x in objs:
                for c in range(L.groups[x].order):
                    checked += 1
                    if L.action[B.identities[x]][c] != c:
                        out.append(Violation(law, where(object=B.objects[x], c=L.groups[x].elements[c])))
        elif law == 'action_composition':
            for (p, q), pq in B.table.items():
                for c in range(L.groups[B.tgt[q]].order):
                    checked += 1
                    if L.action[pq][c] != L.action[p][L.action[q][c]]:
                        out.append(Violation(law, where(p=B.arrows[p], q=B.arrows[q], c=L.groups[B.tgt[q]].elements[c])))
        elif law == 'action_automorphism':
            for p in range(len(B.arrows)):
                Gx, Gy, row = L.groups[B.src[p]], L.groups[B.tgt[p]], L.action[p]
                checked += 1
                if len(set(row)) != Gx.order or Gx.order != Gy.order:
                    out.append(Violation(law, where(p=B.arrows[p]), "^p is not a bijection"))
                    continue
                for a in range(Gy.order):
                    for b in range(Gy.order):
                        checked += 1
                        if row[Gy.mul(a, b)] != Gx.mul(row[a], row[b]):
                            out.append(Violation(law, where(p=B.arrows[p], a=Gy.elements[a], b=Gy.elements[b])))
        elif law == 'equivariance':
            for p in range(len(B.arrows)):
                x, y = B.src[p], B.tgt[p]
                for c in range(L.groups[y].order):
                    checked += 1
                    if L.boundary[x][L.action[p][c]] != self._below_act(k, p, L.boundary[y][c]):
                        out.append(Violation(law, where(p=B.arrows[p], c=L.groups[y].elements[c])))
        else:
            raise ValueError(f"Unknown law: {law}")
        return out, checked

    def _shape(self, k: int) -> List[Violation]:
        X, L = self.C.dim2, self.C.levels[k]
        B = X.base
        below = self._below(k)
        n = len(B.objects)
        if len(L.groups) != n or len(L.boundary) != n:
            return [Violation('shape', {"dimension": k + 3}, "one group and one boundary per object")]
        out = []
        for x in range(n):
            if len(L.boundary[x]) != L.groups[x].order or any(not 0 <= v < below[x].order for v in L.boundary[x]):
                out.append(Violation('shape', {"dimension": k + 3, "object": B.objects[x]}, "boundary out of range"))
        for p in range(len(B.arrows)):
            row = L.action.get(p)
            if row is None or len(row) != L.groups[B.tgt[p]].order:
                out.append(Violation('shape', {"dimension": k + 3, "p": B.arrows[p]}, "action row missing"))
        return out

    def run(self, stream: bool = False):
        if stream:
            return self._run_stream()
        return final_result(self._run_stream())

    def _run_stream(self) -> Iterator[Event]:
        source = f"CrossedComplex:{self.C.name}"
        yield Event(source, "start", {"bound": self.C.bound})
        base = XModValidator(self.C.dim2, self.settings).run(stream=False)
        violations = list(base.violations)
        checked = base.checked
        for v in base.violations:
            yield Event(source, "violation", v.to_dict())
        yield Event(source, "progress", {"dimension": 2, "checked": base.checked, "violations": len(base.violations)})
        for k in range(len(self.C.levels)):
            found = self._shape(k)
            n = 1
            if not found:
                for law in LEVEL_LAWS:
                    vs, c = self.check(k, law)
                    found.extend(vs)
                    n += c
            for v in found:
                yield Event(source, "violation", v.to_dict())
            violations.extend(found)
            checked += n
            yield Event(source, "progress", {"dimension": k + 3, "checked": n, "violations": len(found)})
        report = ValidationReport(self.C.name, tuple(violations), checked, True)
        logger.info("%s: %d violations in %d checks.", self.C.name, len(violations), checked)
        yield Event(source, "end", {"result": report})


def validate_crossed_complex(C: CrossedComplexData, settings: Optional[Settings] = None) -> ValidationReport:
    return CrossedComplexValidator(C, settings).run(stream=False)
