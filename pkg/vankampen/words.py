from dataclasses import dataclass
from typing      import Iterable, Iterator, List, Tuple, Union
import re

from .errors import ParseError

_TOKEN = re.compile(r"^(?P<name>(?!\d)[\w.']+)(?:\^(?P<exp>[+-]?\d+))?$")


@dataclass(frozen=True, order=True)
class GenSymbol:
    """
    A signed generator: `name` or `name^-1`.

    Attributes:
        name (str): The generator's name.
        exponent (int): +1 or -1.
    """
    name: str
    exponent: int = 1

    def __post_init__(self):
        if not self.name:
            raise ValueError("A generator name cannot be empty.")
        if self.exponent not in (1, -1):
            raise ValueError(f"Exponent must be +1 or -1, got {self.exponent}.")

    def inverse(self) -> 'GenSymbol':
        return GenSymbol(self.name, -self.exponent)

    def __str__(self):
        return self.name if self.exponent == 1 else f"{self.name}^-1"


@dataclass(frozen=True)
class Word:
    """
    A finite sequence of signed generators. The empty word prints as `1`.

    Words are immutable; products and inverses build new words. Parsing accepts
    whitespace separated tokens `a`, `a^-1`, `a^n` (any nonzero n) and `1`.
    """
    letters: Tuple[GenSymbol, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(self.letters))

    @classmethod
    def parse(cls, text: str, line: int = None) -> 'Word':
        """
        Reads a word in the token grammar shared by every file format.

        Args:
            text (str): The tokens, e.g. "a b a^-1 b".
            line (int, optional): Line number reported in diagnostics.

        Raises:
            ParseError: On a malformed token.
        """
        letters: List[GenSymbol] = []
        column = 1
        for token in re.split(r'(\s+)', text):
            if not token or token.isspace():
                column += len(token)
                continue
            if token == '1':
                column += 1
                continue
            match = _TOKEN.match(token)
            if not match:
                raise ParseError(f"Malformed word token '{token}'.", line, column)
            exponent = int(match.group('exp') or 1)
            if exponent == 0:
                raise ParseError(f"Zero exponent in token '{token}'.", line, column)
            sign = 1 if exponent > 0 else -1
            letters.extend(GenSymbol(match.group('name'), sign) for _ in range(abs(exponent)))
            column += len(token)
        return cls(tuple(letters))

    @classmethod
    def of(cls, *tokens: Union[str, GenSymbol, Tuple[str, int]]) -> 'Word':
        """Builds a word from names, `(name, exponent)` pairs or symbols."""
        letters = []
        for token in tokens:
            if isinstance(token, GenSymbol):
                letters.append(token)
            elif isinstance(token, tuple):
                letters.append(GenSymbol(*token))
            else:
                letters.extend(cls.parse(token).letters)
        return cls(tuple(letters))

    @classmethod
    def empty(cls) -> 'Word':
        return cls(())

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[GenSymbol]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: 'Word') -> 'Word':
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> 'Word':
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self) -> 'Word':
        return Word(tuple(s.inverse() for s in reversed(self.letters)))

    def generators(self) -> Tuple[str, ...]:
        """Generator names occurring in the word, in order of first appearance."""
        seen = dict.fromkeys(s.name for s in self.letters)
        return tuple(seen)

    def is_reduced(self) -> bool:
        return all(x.name != y.name or x.exponent == y.exponent
                   for x, y in zip(self.letters, self.letters[1:]))

    def reduced(self) -> 'Word':
        return free_reduce(self)

    def substitute(self, images) -> 'Word':
        """
        Replaces every generator by its image word; generators missing from
        `images` are kept.
        """
        out: List[GenSymbol] = []
        for s in self.letters:
            image = images.get(s.name)
            if image is None:
                out.append(s)
            else:
                out.extend(image.letters if s.exponent == 1 else image.inverse().letters)
        return Word(tuple(out))

    def __str__(self):
        if not self.letters:
            return '1'
        return ' '.join(str(s) for s in self.letters)

    def __repr__(self):
        return f"Word('{self}')"


def free_reduce(w: Word) -> Word:
    """
    Cancels adjacent inverse pairs until none remain.

    Example:
        >>> str(free_reduce(Word.parse("a b b^-1 a")))
        'a a'
    """
    stack: List[GenSymbol] = []
    for s in w.letters:
        if stack and stack[-1].name == s.name and stack[-1].exponent == -s.exponent:
            stack.pop()
        else:
            stack.append(s)
    return Word(tuple(stack))


def as_word(w: Union[Word, str, Iterable[GenSymbol]]) -> Word:
    """Accepts a Word, its textual form, or a sequence of symbols."""
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w)
    return Word(tuple(w))
