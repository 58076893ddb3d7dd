"""
Fox free differential calculus over ZG.

Derivatives follow the left convention: d(uv)/ds = du/ds + u dv/ds,
ds/ds = 1 and d(s^-1)/ds = -s^-1, with every term projected to G by a
completed rewrite system.
"""
from dataclasses import dataclass
from itertools   import combinations, product
from typing      import Dict, List, Optional, Sequence, Tuple, Union
import concurrent.futures
import logging

from .config    import Settings, settings as default_settings
from .errors    import NotCompletedError, PreconditionError
from .groupoid  import GroupPresentation
from .groupring import GroupRingElement
from .rewriting import COMPLETED, RewriteSystem, enumerate_normal_forms
from .utils     import render
from .words     import Word, as_word

logger = logging.getLogger(__name__)

KernelVector = Tuple[GroupRingElement, ...]


def fox_derivative(w: Union[Word, str], s: str, proj: RewriteSystem) -> GroupRingElement:
    """
    Args:
        w: The word to differentiate.
        s (str): The generator.
        proj (RewriteSystem): A completed system of G.

    Returns:
        GroupRingElement: dw/ds in ZG.
    """
    w = as_word(w)
    terms: List[Tuple[Word, int]] = []
    for i, x in enumerate(w.letters):
        if x.name != s:
            continue
        prefix = Word(w.letters[:i])
        if x.exponent == 1:
            terms.append((prefix, 1))
        else:
            terms.append((prefix * Word((x,)), -1))
    return GroupRingElement(proj, terms)


@dataclass(frozen=True, eq=False)
class FoxMatrix:
    """
    Row r, column s holds dr/ds in ZG.

    Attributes:
        relators (Tuple[str, ...]): Row names.
        generators (Tuple[str, ...]): Column names.
        rows (Tuple[Tuple[GroupRingElement, ...], ...]): The entries.
        system (RewriteSystem): The completed system of G.
    """
    relators: Tuple[str, ...]
    generators: Tuple[str, ...]
    rows: Tuple[Tuple[GroupRingElement, ...], ...]
    system: RewriteSystem

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.generators)

    def entry(self, r: str, s: str) -> GroupRingElement:
        return self.rows[self.relators.index(r)][self.generators.index(s)]

    def apply(self, v: Sequence[GroupRingElement]) -> KernelVector:
        """The row vector v times the matrix."""
        if len(v) != len(self.rows):
            raise PreconditionError(f"Expected {len(self.rows)} coordinates, got {len(v)}.")
        zero = GroupRingElement.zero(self.system)
        out = []
        for j in range(len(self.generators)):
            total = zero
            for vr, row in zip(v, self.rows):
                if vr:
                    total = total + vr * row[j]
            out.append(total)
        return tuple(out)

    def __str__(self):
        return render('fox.j2', relators=self.relators, generators=self.generators,
                      rows=[[str(x) for x in row] for row in self.rows])

    def to_dict(self) -> Dict[str, object]:
        return {
            "relators": list(self.relators),
            "generators": list(self.generators),
            "rows": [[x.to_dict() for x in row] for row in self.rows],
        }


def relator_names(P: GroupPresentation) -> Tuple[str, ...]:
    return tuple(f"r{i + 1}" for i in range(len(P.relators)))


def boundary_matrix(P: GroupPresentation, names: Optional[Sequence[str]] = None,
                    settings: Optional[Settings] = None) -> FoxMatrix:
    """
    The Fox matrix of a presentation, the boundary of its operator chains
    ZG^(R) -> ZG^(S).

    Raises:
        NotCompletedError: If G has no completed rewrite system within bounds.
    """
    system = P.system(settings)
    if system.status != COMPLETED:
        raise NotCompletedError(f"{P.name or 'The presentation'} has no completed rewrite system within bounds.")
    names = tuple(names) if names is not None else relator_names(P)
    if len(names) != len(P.relators):
        raise PreconditionError("One name per relator is required.")
    rows = tuple(tuple(fox_derivative(r, s, system) for s in P.generators) for r in P.relators)
    return FoxMatrix(names, P.generators, rows, system)


def fundamental_identity(w: Union[Word, str], generators: Sequence[str],
                         proj: RewriteSystem) -> Tuple[GroupRingElement, GroupRingElement]:
    """Both sides of sum_s (dw/ds)(s - 1) = w - 1."""
    w = as_word(w)
    one = GroupRingElement.one(proj)
    lhs = GroupRingElement.zero(proj)
    for s in generators:
        lhs = lhs + fox_derivative(w, s, proj) * (GroupRingElement.of(proj, s) - one)
    return lhs, GroupRingElement.of(proj, w) - one


# ----- suffix reading -----

def suffix_boundary(w: Union[Word, str], proj: RewriteSystem) -> Dict[str, GroupRingElement]:
    """
    Reads a relator as a sum over its letters x^e of e * x^(suffix), the
    exponent being the part of the relator after the letter. Returns the
    exponents collected per generator.
    """
    w = as_word(w)
    out: Dict[str, GroupRingElement] = {}
    for i, x in enumerate(w.letters):
        term = GroupRingElement.of(proj, Word(w.letters[i + 1:]), x.exponent)
        out[x.name] = out.get(x.name, GroupRingElement.zero(proj)) + term
    return {s: e for s, e in out.items() if e}


def to_suffix_exponents(entry: GroupRingElement, s: str) -> GroupRingElement:
    """
    Translates a Fox entry dr/ds of a relator r = 1 into suffix exponents:
    a term +g comes from a letter s after prefix g, with suffix (g s)^-1; a
    term -g comes from s^-1 after prefix g s, with suffix g^-1. Exact when the
    terms of the entry do not cancel.
    """
    system = entry.system
    s_word = as_word(s)
    terms = []
    for g, c in entry.terms.items():
        if c > 0:
            terms.append(((g * s_word).inverse(), c))
        else:
            terms.append((g.inverse(), c))
    return GroupRingElement(system, terms)


# ----- kernel search -----

def _coordinates(labels: Sequence[Word], support_bound: int, coeff_bound: int,
                 system: RewriteSystem) -> List[GroupRingElement]:
    coeffs = [c for c in range(-coeff_bound, coeff_bound + 1) if c]
    out = [GroupRingElement.zero(system)]
    for k in range(1, support_bound + 1):
        for support in combinations(labels, k):
            for cs in product(coeffs, repeat=k):
                out.append(GroupRingElement(system, dict(zip(support, cs))))
    return out


def pi2_kernel_search(Mx: FoxMatrix, support_bound: int, coeff_bound: int, radius: Optional[int] = None,
                      settings: Optional[Settings] = None) -> List[KernelVector]:
    """
    Every nonzero vector v with at most `support_bound` terms per coordinate,
    coefficients in [-coeff_bound, coeff_bound] and group elements of length at
    most `radius` such that v times the Fox matrix is zero. An empty list means
    none within these bounds.

    Raises:
        PreconditionError: If a bound is not positive.
    """
    settings = settings or default_settings()
    radius = settings.kernel_radius if radius is None else radius
    if support_bound <= 0 or coeff_bound <= 0:
        raise PreconditionError("Kernel search bounds must be positive.")
    if not Mx.rows:
        return []
    labels = enumerate_normal_forms(Mx.system, radius)
    coords = _coordinates(labels, support_bound, coeff_bound, Mx.system)
    n = len(Mx.rows)
    logger.info("Kernel search over %d^%d candidate vectors.", len(coords), n)

    def scan(first: GroupRingElement) -> List[KernelVector]:
        found = []
        for rest in product(coords, repeat=n - 1):
            v = (first,) + rest
            if not any(v):
                continue
            if not any(Mx.apply(v)):
                found.append(v)
        return found

    with concurrent.futures.ThreadPoolExecutor(max_workers=settings.workers) as executor:
        chunks = list(executor.map(scan, coords))
    found = [v for chunk in chunks for v in chunk]
    logger.info("Kernel search found %d vectors.", len(found))
    return found


def _flatten(v: KernelVector) -> List[Tuple[Tuple[int, Word], int]]:
    out = []
    for i, x in enumerate(v):
        for w in x.support():
            out.append(((i, w), x.terms[w]))
    return out


def _multiple(w: KernelVector, v: KernelVector) -> Optional[int]:
    fw, fv = dict(_flatten(w)), dict(_flatten(v))
    if set(fw) != set(fv):
        return None
    ratios = set()
    for key, c in fv.items():
        if fw[key] % c:
            return None
        ratios.add(fw[key] // c)
    return ratios.pop() if len(ratios) == 1 else None


def kernel_basis_candidate(vectors: Sequence[KernelVector]) -> Optional[KernelVector]:
    """
    The vector with positive leading coefficient of which every given vector is
    an integer multiple, or None when there is no such vector among them.
    """
    candidates = [v for v in vectors if _flatten(v) and _flatten(v)[0][1] > 0]
    candidates.sort(key=lambda v: (sum(abs(c) for _, c in _flatten(v)), str([str(x) for x in v])))
    for v in candidates:
        if all(_multiple(w, v) is not None for w in vectors):
            return v
    return None


def show_vector(v: KernelVector, names: Optional[Sequence[str]] = None) -> str:
    names = names or [f"r{i + 1}" for i in range(len(v))]
    return ', '.join(f"{n}: {x}" for n, x in zip(names, v))


def vector_to_dict(v: KernelVector, names: Sequence[str]) -> Dict[str, object]:
    return {n: x.to_dict() for n, x in zip(names, v)}
