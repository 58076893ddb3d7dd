"""
Induced crossed modules f_*X along a morphism f: P -> Q of finite groups.

The candidate is presented as a group on symbols m@q (m != 1 in M, q in Q)
subject to

    (m@q)(m'@q) = (mm')@q          (^p m)@q = m@(q f(p))
    (m@q)(m'@q')(m@q)^-1 = m'@(q f(mu m) q^-1 q')

and enumerated with sympy's coset enumeration. Q acts by q'.(m@q) = m@(q'q)
and the boundary sends m@q to q f(mu m) q^-1.
"""
from collections import deque
from typing      import List, Optional, Sequence, Tuple
import logging

from sympy.combinatorics.coset_table  import coset_enumeration_r
from sympy.combinatorics.fp_groups    import FpGroup
from sympy.combinatorics.free_groups  import free_group

from .config  import Settings, settings as default_settings
from .errors  import BoundExceededError, PreconditionError
from .finite  import FiniteGroup, cyclic
from .schema  import ProbeResult, UniversalReport
from .xmod    import CrossedModule, morphisms, validate_xmod

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]


def _check_hom(f: Sequence[int], P: FiniteGroup, Q: FiniteGroup):
    if len(f) != P.order:
        raise PreconditionError(f"f needs one image per element of {P.name}.")
    for x in range(P.order):
        for y in range(P.order):
            if f[P.mul(x, y)] != Q.mul(f[x], f[y]):
                raise PreconditionError(f"f is not a homomorphism at ({P.elements[x]}, {P.elements[y]}).",
                                        P.elements[x])


def induced_xmod(f: Sequence[int], X: CrossedModule, Q: FiniteGroup, bound: Optional[int] = None,
                 settings: Optional[Settings] = None) -> Tuple[CrossedModule, UniversalReport]:
    """
    Builds f_*X and checks its universal property against crossed modules over Q.

    Args:
        f (Sequence[int]): Image in Q of each element of X.P.
        X (CrossedModule): A finite crossed module over P.
        Q (FiniteGroup): The target group of f.
        bound (Optional[int]): Coset limit; defaults to the configured bound.

    Returns:
        The candidate and the per-probe report. A failing report is returned
        as is, with the candidate.

    Raises:
        PreconditionError: If f is not a homomorphism P -> Q or the bound is not positive.
        BoundExceededError: If the enumeration needs more than `bound` cosets.
    """
    settings = settings or default_settings()
    bound = bound if bound is not None else settings.bound
    if bound <= 0:
        raise PreconditionError(f"The coset bound must be positive, got {bound}.", "bound")
    P, M = X.P, X.M
    f = tuple(f)
    _check_hom(f, P, Q)

    if M.order == 1:
        Y = CrossedModule.trivial_over(Q)
    else:
        Y = _enumerate(f, X, Q, bound)
        report = validate_xmod(Y, settings)
        if not report.ok:
            logger.warning("Induced candidate %s fails %s.", Y.name, ", ".join(report.laws()))
    return Y, induced_report(f, X, Q, Y)


def _enumerate(f: Tuple[int, ...], X: CrossedModule, Q: FiniteGroup, bound: int) -> CrossedModule:
    P, M = X.P, X.M
    symbols = [(m, q) for m in range(M.order) if m != M.identity for q in range(Q.order)]
    index = {s: i for i, s in enumerate(symbols)}
    F, *gens = free_group(', '.join(f"x{i}" for i in range(len(symbols))))

    def gen(m: int, q: int):
        return None if m == M.identity else gens[index[(m, q)]]

    def product(*xs):
        out = F.identity
        for x in xs:
            if x is not None:
                out = out * x
        return out

    relators = set()
    for m, q in symbols:
        for k in range(M.order):
            if k == M.identity:
                continue
            relators.add(product(gen(m, q), gen(k, q), _inv(gen(M.mul(m, k), q))))
        for p in P.generators:
            relators.add(product(gen(X.act(p, m), q), _inv(gen(m, Q.mul(q, f[p])))))
        twist = Q.mul(Q.mul(q, f[X.mu[m]]), Q.inv(q))
        for k, r in symbols:
            relators.add(product(gen(m, q), gen(k, r), _inv(gen(m, q)), _inv(gen(k, Q.mul(twist, r)))))
    relators.discard(F.identity)
    G = FpGroup(F, sorted(relators, key=str))

    try:
        C = coset_enumeration_r(G, [], max_cosets=bound)
    except ValueError as e:
        raise BoundExceededError(f"Induced crossed module of {X.name} needs more than {bound} elements.") from e
    C.compress()
    C.standardize()
    logger.debug("Coset enumeration of %d symbols and %d relators: %d elements.",
                 len(symbols), len(relators), len(C.table))

    column = {C.A.index(g): (i, 1) for i, g in enumerate(gens)}
    column.update({C.A.index(g ** -1): (i, -1) for i, g in enumerate(gens)})
    lookup = {letter: j for j, letter in column.items()}
    table = C.table

    words: List[Optional[Tuple[Letter, ...]]] = [None] * len(table)
    words[0] = ()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for j, letter in sorted(column.items()):
            d = table[c][j]
            if words[d] is None:
                words[d] = words[c] + (letter,)
                queue.append(d)

    def trace(start: int, word: Sequence[Letter]) -> int:
        for letter in word:
            start = table[start][lookup[letter]]
        return start

    def show(word: Sequence[Letter]) -> str:
        if not word:
            return '1'
        parts = []
        for i, e in word:
            m, q = symbols[i]
            parts.append(f"{M.elements[m]}@{Q.elements[q]}" + ('' if e == 1 else '^-1'))
        return '.'.join(parts)

    n = len(table)
    group = FiniteGroup(f"ind({M.name})", tuple(show(w) for w in words),
                        tuple(tuple(trace(c, words[d]) for d in range(n)) for c in range(n)))

    def boundary(c: int) -> int:
        out = Q.identity
        for i, e in words[c]:
            m, q = symbols[i]
            x = Q.mul(Q.mul(q, f[X.mu[m]]), Q.inv(q))
            out = Q.mul(out, x if e == 1 else Q.inv(x))
        return out

    def act(p: int, c: int) -> int:
        moved = []
        for i, e in words[c]:
            m, q = symbols[i]
            moved.append((index[(m, Q.mul(p, q))], e))
        return trace(0, moved)

    return CrossedModule.build(f"{X.name}^{Q.name}", group, Q, boundary, act)


def _inv(x):
    return None if x is None else x ** -1


def induced_probes(Q: FiniteGroup) -> List[CrossedModule]:
    """Crossed modules over Q used to test the universal property."""
    out = [CrossedModule.identity(Q), CrossedModule.trivial_over(Q)]
    for N in Q.normal_subgroups():
        if 1 < len(N) < Q.order:
            out.append(CrossedModule.normal_inclusion(Q, sorted(N)))
    out.append(CrossedModule.central(cyclic(2), Q, name=f"Z2->{Q.name}"))
    out.append(CrossedModule.central(cyclic(3), Q, name=f"Z3->{Q.name}"))
    return out


def induced_report(f: Tuple[int, ...], X: CrossedModule, Q: FiniteGroup, Y: CrossedModule,
                   probes: Optional[Sequence[CrossedModule]] = None) -> UniversalReport:
    """
    For each probe T over Q: morphisms X -> T over f against morphisms
    Y -> T over the identity of Q.
    """
    identity = tuple(range(Q.order))
    results = []
    for T in probes if probes is not None else induced_probes(Q):
        over_f = sum(1 for _ in morphisms(X, T, p_maps=[f]))
        over_id = sum(1 for _ in morphisms(Y, T, p_maps=[identity]))
        status = 'ok' if over_f == over_id else 'failed'
        results.append(ProbeResult(T.name, status, over_f, over_id))
    return UniversalReport(f"induced {Y.name}", tuple(results))
