"""
Free crossed modules on a relator function w: R -> P.

An element is stored as a pair (coordinates in ZG^(R), boundary in P), where
G = P / <<w(R)>>, with product

    (m1, p1)(m2, p2) = (m1 + phi(p1) m2, p1 p2)

and P acting by ^p (m, q) = (phi(p) m, p q p^-1). The generator of r is
(e_r, w(r)). Words of the free pre-crossed module have letters (r, p)^±1
standing for ^p gen(r); `PeifferOracle` decides their equality in the free
crossed module for a finite window of labels p.
"""
from dataclasses import dataclass, field
from typing      import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import logging
import random

from .config    import Settings, settings as default_settings
from .errors    import BoundExceededError, IncompatibleError, PreconditionError
from .groupoid  import GroupPresentation
from .groupring import GroupRingElement
from .rewriting import COMPLETED, RewriteSystem, enumerate_normal_forms
from .schema    import ProbeResult, UniversalReport, ValidationReport, Violation
from .words     import GenSymbol, Word, as_word
from .xmod      import CrossedModule, XModMorphism, morphisms

logger = logging.getLogger(__name__)

Letter = Tuple[str, Word, int]
PreWord = Tuple[Letter, ...]


@dataclass(frozen=True, eq=False)
class FreeCrossedModuleElement:
    """
    Attributes:
        ambient (FreeCrossedModule): The free crossed module it belongs to.
        coord (Tuple[GroupRingElement, ...]): One coordinate per relator.
        bdry (Word): The boundary, a normal form in P.
        word (Optional[PreWord]): A pre-crossed word evaluating to it, when known.
    """
    ambient: 'FreeCrossedModule'
    coord: Tuple[GroupRingElement, ...]
    bdry: Word
    word: Optional[PreWord] = field(default=None, compare=False)

    def _check(self, other: 'FreeCrossedModuleElement'):
        if not isinstance(other, FreeCrossedModuleElement):
            raise TypeError(f"Expected a free crossed module element, got {type(other).__name__}.")
        if other.ambient is not self.ambient:
            raise IncompatibleError("Elements of different free crossed modules.")

    def __mul__(self, other: 'FreeCrossedModuleElement') -> 'FreeCrossedModuleElement':
        self._check(other)
        F = self.ambient
        coord = tuple(m1 + m2.act(self.bdry) for m1, m2 in zip(self.coord, other.coord))
        word = self.word + other.word if self.word is not None and other.word is not None else None
        return FreeCrossedModuleElement(F, coord, F.base_nf(self.bdry * other.bdry), word)

    def inverse(self) -> 'FreeCrossedModuleElement':
        F = self.ambient
        p_inv = self.bdry.inverse()
        coord = tuple(-(m.act(p_inv)) for m in self.coord)
        word = tuple((r, p, -e) for r, p, e in reversed(self.word)) if self.word is not None else None
        return FreeCrossedModuleElement(F, coord, F.base_nf(p_inv), word)

    def act(self, p: Union[Word, str]) -> 'FreeCrossedModuleElement':
        """^p x for p in P."""
        F = self.ambient
        p = as_word(p)
        coord = tuple(m.act(p) for m in self.coord)
        word = tuple((r, F.base_nf(p * q), e) for r, q, e in self.word) if self.word is not None else None
        return FreeCrossedModuleElement(F, coord, F.base_nf(p * self.bdry * p.inverse()), word)

    def boundary(self) -> Word:
        return self.bdry

    @property
    def is_identity(self) -> bool:
        return not len(self.bdry) and not any(self.coord)

    def __eq__(self, other):
        if not isinstance(other, FreeCrossedModuleElement):
            return NotImplemented
        return self.ambient is other.ambient and self.coord == other.coord and self.bdry == other.bdry

    def __hash__(self):
        return hash((self.coord, self.bdry))

    def __str__(self):
        parts = ', '.join(f"{r}: {m}" for r, m in zip(self.ambient.relators, self.coord))
        return f"({parts} | {self.bdry})"

    def to_dict(self) -> Dict[str, object]:
        return {"coord": {r: m.to_dict() for r, m in zip(self.ambient.relators, self.coord)},
                "bdry": str(self.bdry)}


class FreeCrossedModule:
    """
    The free crossed P-module on w: R -> P.

    Raises:
        BoundExceededError: If P or G = P / <<w(R)>> has no completed rewrite
            system within the configured bounds.
        PreconditionError: If some w(r) uses a generator outside P.
    """
    def __init__(self, P: GroupPresentation, w: Mapping[str, Union[Word, str]],
                 settings: Optional[Settings] = None, name: Optional[str] = None):
        self.settings = settings or default_settings()
        self.P = P
        self.relators: Tuple[str, ...] = tuple(w)
        self.w: Dict[str, Word] = {}
        for r, word in w.items():
            word = as_word(word)
            for g in word.generators():
                if g not in P.generators:
                    raise PreconditionError(f"Relator '{r}' uses '{g}', which is not a generator of P.", r)
            self.w[r] = word
        self.name = name or f"C({', '.join(self.relators) or '∅'})"

        self.base_system: RewriteSystem = P.system(self.settings)
        if self.base_system.status != COMPLETED:
            raise BoundExceededError(f"P = {P} has no completed rewrite system within bounds.")
        self.quotient = GroupPresentation(P.generators, P.relators + tuple(self.w.values()), f"{P.name or 'P'}/w(R)")
        self.system: RewriteSystem = self.quotient.system(self.settings)
        if self.system.status != COMPLETED:
            raise BoundExceededError(f"{self.quotient} has no completed rewrite system within bounds.")
        self.w = {r: self.base_nf(word) for r, word in self.w.items()}
        logger.debug("Free crossed module %s over %s, quotient system with %d rules.",
                     self.name, P, len(self.system.rules))

    # ----- elements -----
    def base_nf(self, p: Word) -> Word:
        return self.base_system.normal_form(p)

    def phi(self, p: Union[Word, str]) -> GroupRingElement:
        """The image of p in G, as a group ring element."""
        return GroupRingElement.of(self.system, as_word(p))

    def identity(self) -> FreeCrossedModuleElement:
        return FreeCrossedModuleElement(self, tuple(GroupRingElement.zero(self.system) for _ in self.relators),
                                        Word(), ())

    def generator(self, r: str) -> FreeCrossedModuleElement:
        """gen(r) = (e_r, w(r))."""
        if r not in self.w:
            raise PreconditionError(f"Unknown relator '{r}'.", r)
        coord = tuple(GroupRingElement.one(self.system) if s == r else GroupRingElement.zero(self.system)
                      for s in self.relators)
        return FreeCrossedModuleElement(self, coord, self.w[r], ((r, Word(), 1),))

    def letter(self, r: str, p: Union[Word, str] = '1', exponent: int = 1) -> FreeCrossedModuleElement:
        x = self.generator(r).act(p)
        return x if exponent == 1 else x.inverse()

    def evaluate(self, word: Sequence[Letter]) -> FreeCrossedModuleElement:
        """The element represented by a pre-crossed word."""
        result = self.identity()
        for r, p, e in word:
            result = result * self.letter(r, p, e)
        return result

    def element(self, coord: Mapping[str, GroupRingElement], bdry: Union[Word, str] = '1') -> FreeCrossedModuleElement:
        """A pair given directly, e.g. a kernel vector with trivial boundary."""
        zero = GroupRingElement.zero(self.system)
        return FreeCrossedModuleElement(self, tuple(coord.get(r, zero) for r in self.relators),
                                        self.base_nf(as_word(bdry)))

    def labels(self, radius: int) -> List[Word]:
        """Normal forms of P up to the given length."""
        return enumerate_normal_forms(self.base_system, radius)

    def random_word(self, rng: random.Random, length: int = 3, radius: int = 1) -> PreWord:
        labels = self.labels(radius)
        return tuple((rng.choice(self.relators), rng.choice(labels), rng.choice((1, -1)))
                     for _ in range(rng.randint(0, length)))

    def random_element(self, rng: random.Random, length: int = 3, radius: int = 1) -> FreeCrossedModuleElement:
        return self.evaluate(self.random_word(rng, length, radius))

    def __repr__(self):
        return f"FreeCrossedModule('{self.name}', relators={len(self.relators)})"


def free_crossed_module(P: GroupPresentation, w: Mapping[str, Union[Word, str]],
                        settings: Optional[Settings] = None) -> FreeCrossedModule:
    return FreeCrossedModule(P, w, settings)


def fcm_arithmetic(x: FreeCrossedModuleElement, y: Optional[FreeCrossedModuleElement], op: str,
                   p: Optional[Union[Word, str]] = None) -> Union[FreeCrossedModuleElement, Word]:
    """
    Args:
        op (str): "mul", "inv", "act" (by the word p) or "boundary".

    Raises:
        IncompatibleError: For elements of different free crossed modules.
    """
    if op == 'mul':
        return x * y
    if op == 'inv':
        return x.inverse()
    if op == 'act':
        if p is None:
            raise PreconditionError("act needs a word.", 'p')
        return x.act(p)
    if op == 'boundary':
        return x.boundary()
    raise ValueError(f"Unsupported operation: {op}")


# ----- Peiffer oracle -----

class PeifferOracle:
    """
    Decides equality of pre-crossed words whose labels lie in a finite window.

    The group generated by the letters (r, p), p in the window, is presented
    by the Peiffer relations (r, p)^e (s, q) (r, p)^-e = (s, p w(r)^e p^-1 q).
    When the label on the right lies in the window the relation is kept as it
    stands; when it falls outside, every conjugate reaching that label is set
    equal to the others. The presentation is completed by Knuth-Bendix.

    Raises:
        BoundExceededError: If the completion does not finish within bounds.
    """
    def __init__(self, F: FreeCrossedModule, window: Sequence[Union[Word, str]],
                 settings: Optional[Settings] = None):
        settings = settings or F.settings
        self.F = F
        self.window = tuple(dict.fromkeys(F.base_nf(as_word(p)) for p in window))
        self.names: Dict[Tuple[str, Word], str] = {}
        for r in F.relators:
            for k, p in enumerate(self.window):
                self.names[(r, p)] = f"{r}@{k}"
        reached: Dict[Tuple[str, Word], List[Word]] = {}
        for (r, p), x in self.names.items():
            for e in (1, -1):
                shift = p * (F.w[r] if e == 1 else F.w[r].inverse()) * p.inverse()
                for (s, q), y in self.names.items():
                    target = (s, F.base_nf(shift * q))
                    conjugate = Word((GenSymbol(x, e), GenSymbol(y), GenSymbol(x, -e)))
                    reached.setdefault(target, []).append(conjugate)
        relators = []
        for target, conjugates in reached.items():
            z = self.names.get(target)
            head = Word((GenSymbol(z),)) if z is not None else conjugates[0]
            relators.extend(c * head.inverse() for c in conjugates if c != head)
        raw = RewriteSystem.from_relators(tuple(self.names.values()), relators)
        self.system = raw.complete(settings.max_rules, settings.max_len)
        if self.system.status != COMPLETED:
            raise BoundExceededError(f"The Peiffer presentation of {F.name} on {len(self.window)} labels "
                                     f"did not complete within bounds.")
        logger.debug("Peiffer oracle on %d letters: %d relations, %d rules.",
                     len(self.names), len(relators), len(self.system.rules))

    def translate(self, word: Sequence[Letter]) -> Word:
        letters = []
        for r, p, e in word:
            name = self.names.get((r, self.F.base_nf(as_word(p))))
            if name is None:
                raise PreconditionError(f"Label {p} of relator {r} is outside the window.", str(p))
            letters.append(GenSymbol(name, e))
        return Word(tuple(letters))

    def key(self, word: Sequence[Letter]) -> Word:
        return self.system.normal_form(self.translate(word))

    def equivalent(self, u: Sequence[Letter], v: Sequence[Letter]) -> bool:
        return self.key(u) == self.key(v)


def pre_crossed_words(letters: Sequence[Tuple[str, Word]], max_length: int,
                      reduced: bool = False) -> Iterator[PreWord]:
    """Every word of length at most `max_length` in the given letters and their inverses, shortest first."""
    signed = [(r, p, e) for r, p in letters for e in (1, -1)]
    level: List[PreWord] = [()]
    yield ()
    for _ in range(max_length):
        nxt = []
        for w in level:
            for x in signed:
                if reduced and w and w[-1][:2] == x[:2] and w[-1][2] == -x[2]:
                    continue
                nxt.append(w + (x,))
        yield from nxt
        level = nxt


def check_faithfulness(F: FreeCrossedModule, oracle: PeifferOracle, labels: Sequence[Union[Word, str]],
                       max_length: int, reduced: bool = False) -> ValidationReport:
    """
    Compares the pair representation with the Peiffer oracle on every
    pre-crossed word up to `max_length` with labels in `labels`: two words must
    have the same representation exactly when the oracle identifies them.
    """
    labels = [F.base_nf(as_word(p)) for p in labels]
    letters = [(r, p) for r in F.relators for p in labels]
    by_key: Dict[Word, Tuple[FreeCrossedModuleElement, PreWord]] = {}
    by_rep: Dict[FreeCrossedModuleElement, Tuple[Word, PreWord]] = {}
    cache: Dict[PreWord, FreeCrossedModuleElement] = {(): F.identity()}
    out: List[Violation] = []
    checked = 0
    for word in pre_crossed_words(letters, max_length, reduced):
        if word:
            r, p, e = word[-1]
            cache[word] = cache[word[:-1]] * F.letter(r, p, e)
        rep = cache[word]
        key = oracle.key(word)
        checked += 1
        seen = by_key.setdefault(key, (rep, word))
        if seen[0] != rep:
            out.append(Violation('faithfulness', {"u": _show(word), "v": _show(seen[1])},
                                 "Peiffer-equivalent words with different representations"))
        seen = by_rep.setdefault(rep, (key, word))
        if seen[0] != key:
            out.append(Violation('faithfulness', {"u": _show(word), "v": _show(seen[1])},
                                 "equal representations of Peiffer-inequivalent words"))
    logger.info("Faithfulness on %s: %d words, %d classes.", F.name, checked, len(by_key))
    return ValidationReport(f"{F.name} vs Peiffer oracle", tuple(out), checked, True)


def _show(word: PreWord) -> str:
    if not word:
        return '1'
    return ' '.join(f"({r},{p})" + ('' if e == 1 else '^-1') for r, p, e in word)


# ----- universal property -----

def extend_universal(F: FreeCrossedModule, eta: Mapping[str, Union[int, str]], X: CrossedModule,
                     phi: Mapping[str, Union[int, str]]) -> XModMorphism:
    """
    The morphism F -> X over eta: P -> X.P sending gen(r) to phi(r).

    The M part is evaluated on pre-crossed words (or elements that carry one):
    a letter (r, p)^e goes to (^eta(p) phi(r))^e. Generators determine it, so
    it is unique.

    Raises:
        PreconditionError: If eta does not respect the relators of P, or if
            mu(phi(r)) != eta(w(r)) for some r (naming r).
    """
    Q, M = X.P, X.M
    images = {g: (Q.index(v) if isinstance(v, str) else int(v)) for g, v in eta.items()}
    missing = [g for g in F.P.generators if g not in images]
    if missing:
        raise PreconditionError(f"eta has no image for generator '{missing[0]}'.", missing[0])
    for rel in F.P.relators:
        if Q.evaluate(rel, images) != Q.identity:
            raise PreconditionError(f"eta does not respect the relator {rel} of P.", str(rel))
    targets = {}
    for r in F.relators:
        if r not in phi:
            raise PreconditionError(f"phi has no image for relator '{r}'.", r)
        m = M.index(phi[r]) if isinstance(phi[r], str) else int(phi[r])
        if X.mu[m] != Q.evaluate(F.w[r], images):
            raise PreconditionError(
                f"mu(phi({r})) = {Q.elements[X.mu[m]]} but eta(w({r})) = {Q.elements[Q.evaluate(F.w[r], images)]}.", r)
        targets[r] = m

    def on_p(p: Union[Word, str]) -> int:
        return Q.evaluate(as_word(p), images)

    def on_m(x: Union[FreeCrossedModuleElement, Sequence[Letter]]) -> int:
        word = x.word if isinstance(x, FreeCrossedModuleElement) else x
        if word is None:
            raise PreconditionError("The element carries no pre-crossed word to evaluate.")
        result = M.identity
        for r, p, e in word:
            y = X.act(on_p(p), targets[r])
            result = M.mul(result, y if e == 1 else M.inv(y))
        return result

    return XModMorphism(F, X, on_m, on_p)


# ----- pushouts -----

@dataclass(frozen=True)
class FreeCorner:
    """
    The corner (1 -> F(R)) => (1 -> P), (F(R) -> F(R)) given by w: R -> P;
    its pushout is the free crossed module on w.
    """
    P: GroupPresentation
    w: Mapping[str, Word]


@dataclass(frozen=True, eq=False)
class XModPushout:
    apex: Union[FreeCrossedModule, CrossedModule]
    legs: Tuple[Optional[XModMorphism], Optional[XModMorphism]] = (None, None)
    report: Optional[UniversalReport] = None


XMOD_PROBES = ('1->1', '1->Z2', 'id(Z2)', 'Z2->1', 'Z2->Z2:trivial', '1->Z3', 'id(Z3)', 'Z2<Z4', 'Z4->Z2')


def then(f: XModMorphism, g: XModMorphism) -> XModMorphism:
    """f followed by g, for finite crossed modules."""
    X = f.source
    return XModMorphism(X, g.target, tuple(g.on_m(f.on_m(m)) for m in range(X.M.order)),
                        tuple(g.on_p(f.on_p(p)) for p in range(X.P.order)))


def _tables(f: XModMorphism) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    X = f.source
    return tuple(f.on_m(m) for m in range(X.M.order)), tuple(f.on_p(p) for p in range(X.P.order))


def _bijective(f: XModMorphism) -> bool:
    m, p = _tables(f)
    return len(set(m)) == f.target.M.order == len(m) and len(set(p)) == f.target.P.order == len(p)


def _inverse(f: XModMorphism) -> XModMorphism:
    m, p = _tables(f)
    m_inv, p_inv = [0] * len(m), [0] * len(p)
    for i, j in enumerate(m):
        m_inv[j] = i
    for i, j in enumerate(p):
        p_inv[j] = i
    return XModMorphism(f.target, f.source, tuple(m_inv), tuple(p_inv))


def pushout_report(f: XModMorphism, g: XModMorphism, apex: CrossedModule, i: XModMorphism, j: XModMorphism,
                   probes: Sequence[str] = XMOD_PROBES) -> UniversalReport:
    """
    For each probe T: pairs (u: Y -> T, v: Z -> T) with u f = v g against
    morphisms h: apex -> T, through h -> (h i, h j).
    """
    from .catalog import entry
    Y, Z = f.target, g.target
    results = []
    for name in probes:
        T = entry(name)
        pairs = {(_tables(u), _tables(v))
                 for u in morphisms(Y, T) for v in morphisms(Z, T)
                 if _tables(then(f, u)) == _tables(then(g, v))}
        hs = list(morphisms(apex, T))
        images = {(_tables(then(i, h)), _tables(then(j, h))) for h in hs}
        if len(images) != len(hs):
            results.append(ProbeResult(name, 'failed', len(pairs), len(hs), "two morphisms agree on both legs"))
        elif images != pairs:
            results.append(ProbeResult(name, 'failed', len(pairs), len(hs), "restriction is not onto the cocones"))
        else:
            results.append(ProbeResult(name, 'ok', len(pairs), len(hs)))
    return UniversalReport(f"pushout {apex.name}", tuple(results))


def pushout_xmod(corner: Union[FreeCorner, Tuple[XModMorphism, XModMorphism]],
                 settings: Optional[Settings] = None, max_order: int = 4) -> XModPushout:
    """
    Pushout of crossed modules.

    A FreeCorner gives the free crossed module exactly. A pair f: X -> Y,
    g: X -> Z of finite morphisms gets a candidate apex (Z or Y when the other
    leg is invertible, otherwise the first catalog entry up to `max_order`
    with compatible legs that passes) and a universal-property report.

    Raises:
        PreconditionError: For other shapes, or when no catalog candidate passes.
    """
    if isinstance(corner, FreeCorner):
        return XModPushout(FreeCrossedModule(corner.P, corner.w, settings))
    try:
        f, g = corner
    except (TypeError, ValueError):
        raise PreconditionError("Unsupported pushout shape.")
    if not all(isinstance(h, XModMorphism) and isinstance(h.source, CrossedModule) for h in (f, g)):
        raise PreconditionError("Unsupported pushout shape: finite crossed-module morphisms expected.")
    if f.source is not g.source:
        raise IncompatibleError("The morphisms of a pushout corner need a common source.")

    Y, Z = f.target, g.target
    if _bijective(f):
        i, j = then(_inverse(f), g), _identity(Z)
        return XModPushout(Z, (i, j), pushout_report(f, g, Z, i, j))
    if _bijective(g):
        i, j = _identity(Y), then(_inverse(g), f)
        return XModPushout(Y, (i, j), pushout_report(f, g, Y, i, j))

    from .catalog import catalog
    for W in sorted(catalog(max_order), key=lambda W: (W.M.order * W.P.order, W.name)):
        for i in morphisms(Y, W):
            for j in morphisms(Z, W):
                if _tables(then(f, i)) != _tables(then(g, j)):
                    continue
                report = pushout_report(f, g, W, i, j)
                if report.ok:
                    logger.info("Pushout candidate %s passes every probe.", W.name)
                    return XModPushout(W, (i, j), report)
    raise PreconditionError(f"No catalog crossed module up to order {max_order} is a pushout of this corner.")


def _identity(X: CrossedModule) -> XModMorphism:
    return XModMorphism(X, X, tuple(range(X.M.order)), tuple(range(X.P.order)))


# ----- invariants on random elements -----

def sample_invariants(F: FreeCrossedModule, count: int = 100, seed: Optional[int] = None) -> ValidationReport:
    """
    Crossed module laws on random bounded elements, plus centrality of
    those with trivial boundary.
    """
    rng = random.Random(F.settings.seed if seed is None else seed)
    out: List[Violation] = []
    checked = 0
    labels = F.labels(1)
    for _ in range(count):
        x, y = F.random_element(rng), F.random_element(rng)
        p = rng.choice(labels)
        checked += 3
        if x.act(p).boundary() != F.base_nf(p * x.boundary() * p.inverse()):
            out.append(Violation('CM1', {"x": str(x), "p": str(p)}))
        if x * y * x.inverse() != y.act(x.boundary()):
            out.append(Violation('CM2', {"x": str(x), "y": str(y)}))
        if not len(x.boundary()) and x * y != y * x:
            out.append(Violation('kernel_central', {"k": str(x), "y": str(y)}))
    return ValidationReport(F.name, tuple(out), checked, False)
