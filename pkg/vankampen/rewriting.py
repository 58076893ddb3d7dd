from dataclasses import dataclass, field
from typing      import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

from .errors import NotCompletedError, BoundExceededError, PreconditionError
from .words  import GenSymbol, Word, free_reduce, as_word

logger = logging.getLogger(__name__)

RAW = 'raw'
COMPLETED = 'completed'
BOUND_EXCEEDED = 'bound_exceeded'
STATUSES = (RAW, COMPLETED, BOUND_EXCEEDED)

Letters = Tuple[int, ...]


def _contains(big: Letters, small: Letters) -> bool:
    n, k = len(big), len(small)
    return any(big[i:i + k] == small for i in range(n - k + 1))


@dataclass(frozen=True)
class RewriteSystem:
    """
    A string rewriting system over signed generators, ordered by shortlex.

    Letters are ranked a < a^-1 < b < b^-1 < ... following the precedence of
    `alphabet`. Every rule must strictly decrease that order, which makes
    rewriting terminate. The cancellation rules x x^-1 -> 1 and x^-1 x -> 1 are
    part of every system built by the constructors.

    Attributes:
        alphabet (Tuple[str, ...]): Generator names in precedence order.
        rules (Tuple[Tuple[Word, Word], ...]): Ordered (lhs, rhs) pairs.
        status (str): "raw", "completed" or "bound_exceeded".
    """
    alphabet: Tuple[str, ...]
    rules: Tuple[Tuple[Word, Word], ...] = ()
    status: str = RAW
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)
    _table: Dict[Letters, Letters] = field(default=None, init=False, repr=False, compare=False)
    _lengths: Tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)
    _cache: Dict[Letters, Letters] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("Alphabet names must be unique.")
        if self.status not in STATUSES:
            raise ValueError(f"Invalid status: {self.status}")
        object.__setattr__(self, 'alphabet', alphabet)
        object.__setattr__(self, 'rules', tuple((as_word(l), as_word(r)) for l, r in self.rules))
        object.__setattr__(self, '_index', {name: i for i, name in enumerate(alphabet)})
        table: Dict[Letters, Letters] = {}
        for lhs, rhs in self.rules:
            l, r = self.encode(lhs), self.encode(rhs)
            if not _shortlex_less(r, l):
                raise PreconditionError(f"Rule {lhs} -> {rhs} does not decrease shortlex order.", str(lhs))
            table[l] = r
        object.__setattr__(self, '_table', table)
        object.__setattr__(self, '_lengths', tuple(sorted({len(l) for l in table})))
        object.__setattr__(self, '_cache', {})

    # ----- construction -----
    @classmethod
    def free(cls, generators: Sequence[str]) -> 'RewriteSystem':
        """The completed system of the free group: cancellation rules only."""
        return cls(tuple(generators), _cancellation_rules(generators), COMPLETED)

    @classmethod
    def from_relators(cls, generators: Sequence[str], relators: Iterable[Word]) -> 'RewriteSystem':
        """
        The raw system of the group presentation <generators | relators>: each
        freely reduced relator r becomes the oriented rule r = 1.
        """
        rules = list(_cancellation_rules(generators))
        probe = cls(tuple(generators), tuple(rules), RAW)
        for r in relators:
            w = free_reduce(as_word(r))
            if len(w):
                lhs, rhs = probe.orient(w, Word())
                rules.append((lhs, rhs))
        return cls(tuple(generators), tuple(rules), RAW)

    # ----- encoding -----
    def encode(self, w: Word) -> Letters:
        try:
            return tuple(2 * self._index[s.name] + (0 if s.exponent == 1 else 1) for s in w.letters)
        except KeyError as e:
            raise PreconditionError(f"Generator {e.args[0]} is not in the alphabet.", e.args[0])

    def decode(self, letters: Letters) -> Word:
        return Word(tuple(GenSymbol(self.alphabet[x // 2], -1 if x % 2 else 1) for x in letters))

    def key(self, w: Word) -> Tuple[int, Letters]:
        """Shortlex sort key."""
        letters = self.encode(w)
        return (len(letters), letters)

    def orient(self, u: Word, v: Word) -> Tuple[Word, Word]:
        """Returns (larger, smaller) under shortlex."""
        return (u, v) if self.key(v) < self.key(u) else (v, u)

    # ----- rewriting -----
    def _reduce(self, letters: Letters, limit: Optional[int] = None) -> Letters:
        cached = self._cache.get(letters)
        if cached is not None:
            return cached
        result = _rewrite(self._table, self._lengths, letters, limit)
        if len(self._cache) < 100_000:
            self._cache[letters] = result
        return result

    def reduce(self, w: Word, limit: Optional[int] = None) -> Word:
        """
        Rewrites w to an irreducible word. Valid for any status; only completed
        systems guarantee the result is canonical.

        Args:
            w (Word): The word to rewrite.
            limit (Optional[int]): Maximum number of rule applications.

        Raises:
            BoundExceededError: When more than `limit` rules are applied.
        """
        return self.decode(self._reduce(self.encode(as_word(w)), limit))

    def normal_form(self, w: Word) -> Word:
        """The unique irreducible descendant of w. Requires a completed system."""
        if self.status != COMPLETED:
            raise NotCompletedError(f"Normal forms need a completed system (status is {self.status}).")
        return self.reduce(w)

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def is_irreducible(self, w: Word) -> bool:
        letters = self.encode(as_word(w))
        return not any(_contains(letters, l) for l in self._table)

    # ----- completion -----
    def critical_pairs(self) -> List[Tuple[Word, Word]]:
        """
        Every unresolved critical pair, as the two distinct irreducible results.
        Empty exactly when the system is locally confluent.
        """
        unresolved = []
        for l1, r1, l2, r2, k in _overlaps(self._table):
            a = self._reduce(r1 + l2[k:])
            b = self._reduce(l1[:-k] + r2)
            if a != b:
                unresolved.append((self.decode(a), self.decode(b)))
        for l1, r1 in self._table.items():
            for l2, r2 in self._table.items():
                if l1 != l2 and _contains(l1, l2):
                    i = next(i for i in range(len(l1) - len(l2) + 1) if l1[i:i + len(l2)] == l2)
                    a = self._reduce(r1)
                    b = self._reduce(l1[:i] + r2 + l1[i + len(l2):])
                    if a != b:
                        unresolved.append((self.decode(a), self.decode(b)))
        return unresolved

    def complete(self, max_rules: int = 200, max_len: int = 24) -> 'RewriteSystem':
        return complete(self, max_rules, max_len)

    def __str__(self):
        body = ', '.join(f"{l} -> {'1' if not len(r) else r}" for l, r in self.rules)
        return f"RewriteSystem[{self.status}]({body})"


def _shortlex_less(u: Letters, v: Letters) -> bool:
    return (len(u), u) < (len(v), v)


def _cancellation_rules(generators: Sequence[str]) -> Tuple[Tuple[Word, Word], ...]:
    rules = []
    for g in generators:
        rules.append((Word((GenSymbol(g, 1), GenSymbol(g, -1))), Word()))
        rules.append((Word((GenSymbol(g, -1), GenSymbol(g, 1))), Word()))
    return tuple(rules)


def _overlaps(table: Dict[Letters, Letters]) -> Iterator[Tuple[Letters, Letters, Letters, Letters, int]]:
    """Proper overlaps: a nonempty proper suffix of l1 equal to a prefix of l2."""
    items = list(table.items())
    for l1, r1 in items:
        for l2, r2 in items:
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    yield l1, r1, l2, r2, k


def _rewrite(table: Dict[Letters, Letters], lengths: Sequence[int], letters: Letters,
             limit: Optional[int] = None) -> Letters:
    # `out` stays irreducible, so a new redex can only end at the letter just pushed.
    out: List[int] = []
    pending = list(reversed(letters))
    steps = 0
    while pending:
        out.append(pending.pop())
        for k in lengths:
            if k > len(out):
                break
            rhs = table.get(tuple(out[-k:]))
            if rhs is not None:
                del out[-k:]
                pending.extend(reversed(rhs))
                steps += 1
                if limit is not None and steps > limit:
                    raise BoundExceededError(f"Rewriting exceeded {limit} rule applications.")
                break
    return tuple(out)


def complete(rs: RewriteSystem, max_rules: int = 200, max_len: int = 24) -> RewriteSystem:
    """
    Bounded Knuth-Bendix completion under shortlex order.

    Args:
        rs (RewriteSystem): A system whose rules decrease shortlex order.
        max_rules (int): Give up once more rules than this are present.
        max_len (int): Give up once a rule's left-hand side is longer than this.

    Returns:
        RewriteSystem: An interreduced system with status "completed", or the
        rules reached so far with status "bound_exceeded".
    """
    key = lambda letters: (len(letters), letters)
    rules: Dict[Letters, Letters] = {}
    lengths: List[int] = []
    pending: List[Tuple[Letters, Letters]] = [(rs.encode(l), rs.encode(r)) for l, r in rs.rules]

    def reduce(letters: Letters) -> Letters:
        return _rewrite(rules, lengths, letters)

    def refresh():
        lengths[:] = sorted({len(l) for l in rules})

    def finish(status: str) -> RewriteSystem:
        final = {l: reduce(r) for l, r in rules.items()}
        ordered = sorted(final.items(), key=lambda item: key(item[0]))
        logger.debug("Completion finished with %d rules (%s).", len(ordered), status)
        return RewriteSystem(rs.alphabet,
                             tuple((rs.decode(l), rs.decode(r)) for l, r in ordered),
                             status)

    rounds = 0
    while True:
        rounds += 1
        while pending:
            u, v = pending.pop(0)
            u, v = reduce(u), reduce(v)
            if u == v:
                continue
            lhs, rhs = (u, v) if key(v) < key(u) else (v, u)
            if len(lhs) > max_len:
                logger.warning("Completion stopped: rule of length %d exceeds max_len %d.", len(lhs), max_len)
                return finish(BOUND_EXCEEDED)
            for l in [l for l in rules if _contains(l, lhs)]:
                pending.append((l, rules.pop(l)))
            rules[lhs] = rhs
            refresh()
            for l, r in list(rules.items()):
                if l != lhs and _contains(r, lhs):
                    rules[l] = reduce(r)
            if len(rules) > max_rules:
                logger.warning("Completion stopped: more than %d rules.", max_rules)
                return finish(BOUND_EXCEEDED)

        for l1, r1, l2, r2, k in _overlaps(rules):
            a = reduce(r1 + l2[k:])
            b = reduce(l1[:-k] + r2)
            if a != b:
                pending.append((a, b))
        if not pending:
            return finish(COMPLETED)
        logger.debug("Completion round %d: %d rules, %d new critical pairs.", rounds, len(rules), len(pending))


def normal_form(rs: RewriteSystem, w: Word) -> Word:
    return rs.normal_form(w)


def enumerate_normal_forms(rs: RewriteSystem, max_length: int, limit: Optional[int] = None) -> List[Word]:
    """
    Lists the irreducible words of length at most `max_length` in shortlex order.

    For a completed system these are exactly one representative per group element
    in that ball. Prefixes of irreducible words are irreducible, so the search grows
    words letter by letter.

    Raises:
        BoundExceededError: When more than `limit` words are produced.
    """
    table, lengths = rs._table, rs._lengths
    level: List[Letters] = [()]
    found: List[Letters] = [()]
    for _ in range(max_length):
        nxt: List[Letters] = []
        for w in level:
            for x in range(2 * len(rs.alphabet)):
                cand = w + (x,)
                if any(k <= len(cand) and cand[-k:] in table for k in lengths):
                    continue
                nxt.append(cand)
        if not nxt:
            break
        found.extend(nxt)
        if limit is not None and len(found) > limit:
            raise BoundExceededError(f"More than {limit} normal forms.")
        level = nxt
    return [rs.decode(w) for w in found]
