"""Free-group words, cyclic words, surface presentations and finite quotients.

A letter is a nonzero int: ``+(i+1)`` for generator ``i`` and ``-(i+1)`` for
its inverse.  Words are kept freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, subgroup_from_generators


class WordError(ValueError):
    pass


class WordSyntaxError(WordError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class RelatorViolation(WordError):
    pass


class NotSurjective(WordError):
    pass


class Alphabet:
    """Ordered generator names; the letter order is ``x1 < x1^-1 < x2 < ...``."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise WordError("duplicate generator names")
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def letter(self, name: str, sign: int = 1) -> int:
        return sign * (self._index[name] + 1)

    @classmethod
    def surface(cls, genus: int) -> "Alphabet":
        return cls([f"a{i}" for i in range(1, genus + 1)] + [f"b{i}" for i in range(1, genus + 1)])


TWO_LETTERS = Alphabet(["a", "b"])


def letter_key(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (letter < 0)


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise WordError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """A freely reduced word over an alphabet."""

    __slots__ = ("letters", "alphabet")

    def __init__(self, letters: Iterable[int] = (), alphabet: Alphabet = TWO_LETTERS):
        self.letters = free_reduce(letters)
        self.alphabet = alphabet
        if any(abs(x) > alphabet.rank for x in self.letters):
            raise WordError("letter outside alphabet")

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int]], alphabet: Alphabet = TWO_LETTERS) -> "Word":
        """Build from ``(generator_index, exponent)`` pairs."""
        letters = []
        for gen, exp in runs:
            letters.extend([(gen + 1) * (1 if exp > 0 else -1)] * abs(exp))
        return cls(letters, alphabet)

    def runs(self) -> list[tuple[int, int]]:
        out: list[list[int]] = []
        for x in self.letters:
            g, s = abs(x) - 1, (1 if x > 0 else -1)
            if out and out[-1][0] == g:
                out[-1][1] += s
            else:
                out.append([g, s])
        return [(g, e) for g, e in out]

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self):
        return hash((self.letters, self.alphabet))

    def __mul__(self, other: "Word") -> "Word":
        self._same(other)
        return Word(self.letters + other.letters, self.alphabet)

    def __invert__(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.alphabet)

    inverse = __invert__

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        return Word(self.letters * n, self.alphabet)

    def _same(self, other):
        if other.alphabet != self.alphabet:
            raise WordError("alphabet mismatch")

    def generators(self) -> set[int]:
        return {abs(x) - 1 for x in self.letters}

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def reduce(w) -> Word:
    """Freely reduce a word (or a raw letter sequence over two letters)."""
    if isinstance(w, Word):
        return Word(w.letters, w.alphabet)
    return Word(w)


def _cyclic_core(letters: tuple[int, ...]) -> tuple[int, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[i:j]


def least_rotation(seq: Sequence) -> int:
    """Offset of the lexicographically least rotation."""
    n = len(seq)
    if not n:
        return 0
    s = tuple(seq)
    return min(range(n), key=lambda k: s[k:] + s[:k])


class CyclicWord:
    """Conjugacy class of a free-group element, stored as its least rotation."""

    __slots__ = ("letters", "alphabet")

    def __init__(self, w: Word):
        core = _cyclic_core(w.letters)
        if core:
            k = least_rotation([letter_key(x) for x in core])
            core = core[k:] + core[:k]
        self.letters = core
        self.alphabet = w.alphabet

    @property
    def word(self) -> Word:
        return Word(self.letters, self.alphabet)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self):
        return hash((self.letters, self.alphabet))

    def __str__(self):
        return format_word(self.word)

    def __repr__(self):
        return f"CyclicWord({str(self)!r})"

    def inverse(self) -> "CyclicWord":
        return CyclicWord(~self.word)

    def power(self, n: int) -> "CyclicWord":
        return CyclicWord(self.word ** n)

    def rotations(self) -> list[tuple[int, ...]]:
        n = len(self.letters)
        return [self.letters[k:] + self.letters[:k] for k in range(n)]


def cyclic_reduce(w: Word) -> CyclicWord:
    return CyclicWord(w)


def are_conjugate(u: Word, v: Word) -> bool:
    return CyclicWord(u) == CyclicWord(v)


def primitive_period(seq: Sequence) -> int:
    """Smallest ``p`` dividing ``len(seq)`` with ``seq`` invariant under rotation by ``p``."""
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and all(seq[i] == seq[(i + p) % n] for i in range(n)):
            return p
    return n


def is_primitive(w) -> bool:
    """True iff the cyclic word is not a proper power."""
    cw = w if isinstance(w, CyclicWord) else CyclicWord(w)
    if not cw.letters:
        raise WordError("the empty word has no root")
    return primitive_period(cw.letters) == len(cw.letters)


# ---------------------------------------------------------------------------
# syntax

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_]*\d*)(?:\^(-?\d+))?\s*")


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse ``"a1^-2 a2"`` style text.  ``"1"`` or ``""`` is the empty word."""
    tokens = []
    pos = 0
    stripped = text.strip()
    if stripped in ("", "1"):
        return Word((), alphabet or TWO_LETTERS)
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected {text[pos]!r}", pos)
        tokens.append((m.group(1), int(m.group(2)) if m.group(2) else 1, m.start(1)))
        pos = m.end()
    if alphabet is None:
        alphabet = infer_alphabet(name for name, _, _ in tokens)
    letters = []
    for name, exp, start in tokens:
        if name not in alphabet:
            raise WordSyntaxError(f"unknown generator {name!r}", start)
        x = alphabet.index(name) + 1
        letters.extend([x if exp > 0 else -x] * abs(exp))
    return Word(letters, alphabet)


def infer_alphabet(names: Iterable[str]) -> Alphabet:
    names = set(names)
    if names <= {"a", "b"}:
        return TWO_LETTERS
    m = [re.fullmatch(r"([ab])(\d+)", n) for n in names]
    if all(m):
        genus = max(int(x.group(2)) for x in m)
        return Alphabet.surface(genus)
    return Alphabet(sorted(names))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    for gen, exp in w.runs():
        name = w.alphabet.names[gen]
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# presentations and quotients


def commutator(x: Word, y: Word) -> Word:
    """``x y x^-1 y^-1``."""
    return x * y * ~x * ~y


@dataclass(frozen=True)
class SurfacePresentation:
    """``<a1..ag, b1..bg | [a1,b1]...[ag,bg]>``; generator order a1..ag then b1..bg."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise WordError("genus must be positive")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.surface(self.genus)

    def alpha(self, i: int) -> Word:
        return Word([i], self.alphabet)

    def beta(self, i: int) -> Word:
        return Word([self.genus + i], self.alphabet)

    @property
    def relator(self) -> Word:
        out = Word((), self.alphabet)
        for i in range(1, self.genus + 1):
            out = out * commutator(self.alpha(i), self.beta(i))
        return out


class FiniteQuotient:
    """A homomorphism from a free or surface group onto (or into) a finite group."""

    def __init__(self, source, target: FiniteGroup, images: Sequence[int]):
        self.source = source
        self.alphabet = source.alphabet if isinstance(source, SurfacePresentation) else source
        self.target = target
        self.images = tuple(int(g) for g in images)
        if len(self.images) != self.alphabet.rank:
            raise WordError(f"expected {self.alphabet.rank} images, got {len(self.images)}")
        self.surjective = subgroup_from_generators(target, set(self.images)).order == target.order

    def __repr__(self):
        return f"FiniteQuotient({self.alphabet.rank} generators -> {self.target.name})"

    def letter_image(self, x: int) -> int:
        g = self.images[abs(x) - 1]
        return g if x > 0 else int(self.target.inv[g])

    def evaluate(self, w: Word) -> int:
        if w.alphabet != self.alphabet:
            raise WordError("alphabet mismatch")
        G = self.target
        out = 0
        for x in w.letters:
            out = int(G.mul[out, self.letter_image(x)])
        return out

    def support(self) -> list[int]:
        """Generator indices with non-identity image."""
        return [i for i, g in enumerate(self.images) if g != 0]


def make_quotient(pres, G: FiniteGroup, images: Sequence[int], require_surjective: bool = False) -> FiniteQuotient:
    q = FiniteQuotient(pres, G, images)
    if isinstance(pres, SurfacePresentation):
        if q.evaluate(pres.relator) != 0:
            raise RelatorViolation("generator images do not satisfy the surface relator")
    if require_surjective and not q.surjective:
        raise NotSurjective("generator images do not generate the target group")
    return q


def evaluate(q: FiniteQuotient, w: Word) -> int:
    return q.evaluate(w)
