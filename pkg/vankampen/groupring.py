from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .errors    import IncompatibleError, PreconditionError
from .rewriting import RewriteSystem, COMPLETED
from .words     import Word, as_word


class GroupRingElement:
    """
    An element of the integral group ring ZG, where G is presented by a completed
    rewrite system.

    Terms map normal-form words to nonzero integers. Every constructor
    canonicalizes its input, so equal elements compare and hash equal.
    """
    __slots__ = ('system', 'terms')

    def __init__(self, system: RewriteSystem, terms: Union[Mapping[Word, int], Iterable[Tuple[Word, int]], None] = None):
        if system.status != COMPLETED:
            raise PreconditionError("Group ring arithmetic needs a completed rewrite system.")
        self.system = system
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        combined: Dict[Word, int] = {}
        for word, coeff in items:
            nf = system.normal_form(as_word(word))
            combined[nf] = combined.get(nf, 0) + int(coeff)
        self.terms: Dict[Word, int] = {w: c for w, c in combined.items() if c != 0}

    @classmethod
    def zero(cls, system: RewriteSystem) -> 'GroupRingElement':
        return cls(system)

    @classmethod
    def one(cls, system: RewriteSystem) -> 'GroupRingElement':
        return cls(system, {Word(): 1})

    @classmethod
    def of(cls, system: RewriteSystem, word: Union[Word, str], coeff: int = 1) -> 'GroupRingElement':
        return cls(system, [(as_word(word), coeff)])

    def _check(self, other: 'GroupRingElement'):
        if not isinstance(other, GroupRingElement):
            raise TypeError(f"Expected a GroupRingElement, got {type(other).__name__}.")
        if other.system is not self.system and other.system != self.system:
            raise IncompatibleError("Group ring elements over different rewrite systems.")

    def __add__(self, other: 'GroupRingElement') -> 'GroupRingElement':
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElement(self.system, terms)

    def __neg__(self) -> 'GroupRingElement':
        return GroupRingElement(self.system, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: 'GroupRingElement') -> 'GroupRingElement':
        return self + (-other)

    def __mul__(self, other: Union['GroupRingElement', int]) -> 'GroupRingElement':
        if isinstance(other, int):
            return GroupRingElement(self.system, {w: c * other for w, c in self.terms.items()})
        self._check(other)
        terms: List[Tuple[Word, int]] = []
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                terms.append((u * v, a * b))
        return GroupRingElement(self.system, terms)

    def __rmul__(self, other: int) -> 'GroupRingElement':
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def act(self, word: Union[Word, str]) -> 'GroupRingElement':
        """Left multiplication by the group element `word`."""
        g = as_word(word)
        return GroupRingElement(self.system, [(g * w, c) for w, c in self.terms.items()])

    def right_act(self, word: Union[Word, str]) -> 'GroupRingElement':
        g = as_word(word)
        return GroupRingElement(self.system, [(w * g, c) for w, c in self.terms.items()])

    def augmentation(self) -> int:
        """The sum of the coefficients."""
        return sum(self.terms.values())

    def involution(self) -> 'GroupRingElement':
        """The anti-automorphism g -> g^-1."""
        return GroupRingElement(self.system, [(w.inverse(), c) for w, c in self.terms.items()])

    def support(self) -> Tuple[Word, ...]:
        return tuple(sorted(self.terms, key=self.system.key))

    def coefficient(self, word: Union[Word, str]) -> int:
        return self.terms.get(self.system.normal_form(as_word(word)), 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return other == 0 and not self.terms or self.terms == {Word(): other}
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.system == other.system and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for w in self.support():
            c = self.terms[w]
            sign = '-' if c < 0 else '+'
            body = f"{abs(c)}*{w}" if abs(c) != 1 else str(w)
            parts.append(f"{sign} {body}")
        text = ' '.join(parts)
        return text[2:] if text.startswith('+ ') else '-' + text[2:]

    def __repr__(self):
        return f"GroupRingElement({self})"

    def to_dict(self) -> List[Dict[str, object]]:
        return [{"word": str(w), "coeff": self.terms[w]} for w in self.support()]


def ring_combine(x: GroupRingElement, y: Optional[GroupRingElement], op: str,
                 word: Optional[Union[Word, str]] = None) -> GroupRingElement:
    """
    Combines group ring elements.

    Args:
        x (GroupRingElement): The left operand.
        y (Optional[GroupRingElement]): The right operand for "add" and "mul".
        op (str): "add", "mul" or "scalar_act".
        word (Optional[Word]): The group element for "scalar_act".

    Raises:
        IncompatibleError: If the operands use different rewrite systems.
    """
    if op == 'add':
        return x + y
    if op == 'mul':
        return x * y
    if op == 'scalar_act':
        if word is None:
            raise PreconditionError("scalar_act needs a word.", 'word')
        return x.act(word)
    raise ValueError(f"Unsupported operation: {op}")
