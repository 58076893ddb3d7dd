"""
Named finite crossed modules.

Entries are built on demand and cached; `catalog(max_order)` filters by the
larger of |M| and |P|.
"""
from functools import lru_cache
from typing    import Callable, Dict, FrozenSet, List, Tuple
import logging

from .errors import PreconditionError
from .finite import FiniteGroup, cyclic, named_group, trivial_group
from .xmod   import CrossedModule

logger = logging.getLogger(__name__)

IDENTITY_GROUPS = ('Z2', 'Z3', 'Z4', 'S3', 'D4', 'Q8', 'V4')
INCLUSION_GROUPS = ('Z4', 'S3', 'D4', 'Q8')
AUT_GROUPS = ('Z3', 'Z4', 'S3', 'D4')

ALIASES = {'A3<S3': 'Z3<S3'}


def _label(G: FiniteGroup, N: FrozenSet[int]) -> str:
    n = len(N)
    if any(G.element_order(x) == n for x in N):
        return f"Z{n}"
    return 'V4' if n == 4 else f"N{n}"


def _inclusions(G: FiniteGroup) -> List[Tuple[str, int, Callable[[], CrossedModule]]]:
    out = []
    used: Dict[str, int] = {}
    for N in G.normal_subgroups():
        if len(N) in (1, G.order):
            continue
        label = _label(G, N)
        used[label] = used.get(label, 0) + 1
        if used[label] > 1:
            label = f"{label}.{used[label]}"
        name = f"{label}<{G.name}"
        out.append((name, len(N), lambda N=N, name=name: CrossedModule.normal_inclusion(G, N, name)))
    return out


@lru_cache(maxsize=None)
def _builders() -> Dict[str, Tuple[Tuple[int, int], Callable[[], CrossedModule]]]:
    """Entry name to ((|M|, |P|), builder)."""
    table: Dict[str, Tuple[Tuple[int, int], Callable[[], CrossedModule]]] = {}
    table['1->1'] = ((1, 1), lambda: CrossedModule.trivial_over(trivial_group()))
    for name in IDENTITY_GROUPS:
        G = named_group(name)
        table[f"id({name})"] = ((G.order, G.order), lambda G=G: CrossedModule.identity(G))
        table[f"1->{name}"] = ((1, G.order), lambda G=G: CrossedModule.trivial_over(G))
    for name in INCLUSION_GROUPS:
        G = named_group(name)
        for entry_name, size, build in _inclusions(G):
            table[entry_name] = ((size, G.order), build)
    for name in AUT_GROUPS:
        G = named_group(name)
        table[f"{name}->Aut({name})"] = ((G.order, len(G.automorphisms())),
                                         lambda G=G: CrossedModule.inner_automorphisms(G))
    Z2, Z4 = cyclic(2), cyclic(4)
    table['Z2->Z2:trivial'] = ((2, 2), lambda: CrossedModule.central(Z2, Z2, name='Z2->Z2:trivial'))
    table['Z2->1'] = ((2, 1), lambda: CrossedModule.central(Z2, trivial_group(), name='Z2->1'))
    table['Z4->Z2'] = ((4, 2), lambda: CrossedModule.central(Z4, Z2, tuple(x % 2 for x in range(4)), 'Z4->Z2'))
    return table


def names(max_order: int = 8) -> List[str]:
    return [name for name, ((m, p), _) in _builders().items() if max(m, p) <= max_order]


@lru_cache(maxsize=None)
def entry(name: str) -> CrossedModule:
    """
    A catalog entry by name, e.g. "id(S3)", "Z3<S3" (also "A3<S3"), "1->D4",
    "S3->Aut(S3)", "Z2->Z2:trivial".

    Raises:
        PreconditionError: For an unknown name.
    """
    name = ALIASES.get(name, name)
    builders = _builders()
    if name not in builders:
        raise PreconditionError(f"Unknown catalog entry '{name}'.", name)
    X = builders[name][1]()
    logger.debug("Built catalog entry %s.", name)
    return X


def catalog(max_order: int = 8) -> List[CrossedModule]:
    """
    Every catalog entry whose groups have at most `max_order` elements:
    identity crossed modules, normal inclusions, trivial 1 -> G, inner
    automorphisms G -> Aut(G) and central examples.
    """
    return [entry(name) for name in names(max_order)]
