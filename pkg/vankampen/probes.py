"""
Morphisms from presented groupoids into small finite groupoids.

Finite probes make questions about presented groupoids decidable: counting
morphisms compares presentations, and a morphism that separates two words
certifies that they differ.
"""
from dataclasses import dataclass
from itertools   import product
from typing      import Dict, Iterator, Mapping, Optional, Sequence, Tuple
import logging

from .config   import Settings, settings as default_settings
from .errors   import BoundExceededError, PreconditionError
from .finite   import FiniteGroup, FiniteGroupoid, cyclic, symmetric
from .groupoid import GroupPresentation, Presentable, as_groupoid
from .schema   import ComparisonReport
from .words    import Word

logger = logging.getLogger(__name__)

PROBES = {
    'Z2': lambda: cyclic(2).groupoid,
    'Z3': lambda: cyclic(3).groupoid,
    'Z4': lambda: cyclic(4).groupoid,
    'Z5': lambda: cyclic(5).groupoid,
    'S3': lambda: symmetric(3).groupoid,
    'I':  FiniteGroupoid.interval,
}
_cache: Dict[str, FiniteGroupoid] = {}


def probe(name: str) -> FiniteGroupoid:
    """A probe groupoid from the catalog, by name."""
    if name not in PROBES:
        raise PreconditionError(f"Unknown probe '{name}'. Known probes: {', '.join(PROBES)}.", name)
    if name not in _cache:
        _cache[name] = PROBES[name]()
    return _cache[name]


def probe_group(name: str) -> Optional[FiniteGroup]:
    """The probe's vertex group when the probe has a single object, else None."""
    T = probe(name)
    return T.vertex_group(0) if T.is_group else None


@dataclass(frozen=True)
class Assignment:
    """A morphism into a finite groupoid: images of objects and of generating edges."""
    objects: Mapping[str, int]
    arrows: Mapping[str, int]

    def describe(self, T: FiniteGroupoid) -> str:
        return ', '.join(f"{e}->{T.arrows[a]}" for e, a in self.arrows.items()) or 'the unique map'


def evaluate_path(T: FiniteGroupoid, word: Word, arrows: Mapping[str, int], start: int) -> int:
    """Image of an edge path in T, given the images of the edges."""
    result = T.identity(start)
    for s in word.letters:
        f = arrows[s.name]
        result = T.compose(result, f if s.exponent == 1 else T.inv(f))
    return result


def homomorphisms(P: Presentable, T: FiniteGroupoid, cap: Optional[int] = None) -> Iterator[Assignment]:
    """
    Enumerates the morphisms P -> T by brute force over endpoint-compatible
    images of the generating edges.

    Raises:
        BoundExceededError: When more than `cap` candidate assignments would be tried.
    """
    P = as_groupoid(P)
    objects = P.objects
    edges = P.edges
    tried = 0
    for obj_images in product(range(len(T.objects)), repeat=len(objects)):
        omap = dict(zip(objects, obj_images))
        candidates = [T.hom(omap[e.src], omap[e.tgt]) for e in edges]
        size = 1
        for c in candidates:
            size *= len(c)
        tried += size
        if cap is not None and tried > cap:
            raise BoundExceededError(f"More than {cap} assignments into {T.name}.")
        for choice in product(*candidates):
            amap = dict(zip((e.name for e in edges), choice))
            if all(evaluate_path(T, r.lhs, amap, omap[r.at]) == evaluate_path(T, r.rhs, amap, omap[r.at])
                   for r in P.relations):
                yield Assignment(omap, amap)


def count_morphisms(P: Presentable, T: FiniteGroupoid, cap: Optional[int] = None) -> int:
    return sum(1 for _ in homomorphisms(P, T, cap))


def group_homomorphisms(G: GroupPresentation, H: FiniteGroup,
                        cap: Optional[int] = None) -> Iterator[Dict[str, int]]:
    """Morphisms from a presented group to a finite group, as generator images."""
    size = H.order ** len(G.generators)
    if cap is not None and size > cap:
        raise BoundExceededError(f"{size} assignments into {H.name} exceed {cap}.")
    for choice in product(range(H.order), repeat=len(G.generators)):
        images = dict(zip(G.generators, choice))
        if all(H.evaluate(r, images) == H.identity for r in G.relators):
            yield images


def separate(G: GroupPresentation, word: Word, probes: Sequence[str],
             settings: Optional[Settings] = None) -> Optional[str]:
    """
    Looks for a morphism from G to a probe group under which `word` is not the
    identity.

    Returns:
        A description of the separating morphism, or None.
    """
    settings = settings or default_settings()
    for name in probes:
        H = probe_group(name)
        if H is None:
            continue
        try:
            for images in group_homomorphisms(G, H, settings.hom_cap):
                value = H.evaluate(word, images)
                if value != H.identity:
                    mapping = ', '.join(f"{g}->{H.elements[x]}" for g, x in images.items())
                    return f"{name}: {mapping or 'trivial'} sends {word} to {H.elements[value]}"
        except BoundExceededError:
            logger.warning("Probe %s skipped: too many assignments.", name)
    return None


def compare(P: Presentable, Q: Presentable, probes: Optional[Sequence[str]] = None,
            settings: Optional[Settings] = None, left: str = 'left', right: str = 'right') -> ComparisonReport:
    """Counts morphisms from P and from Q into every probe."""
    settings = settings or default_settings()
    counts: Dict[str, Tuple[int, int]] = {}
    for name in probes or settings.probes:
        T = probe(name)
        counts[name] = (count_morphisms(P, T, settings.hom_cap), count_morphisms(Q, T, settings.hom_cap))
        logger.debug("Probe %s: %s vs %s", name, *counts[name])
    return ComparisonReport(left, right, counts)
