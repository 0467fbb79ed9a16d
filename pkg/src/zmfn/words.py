"""Free words, integer vectors and elements of Z^m x F_n.

Letters are signed generator indices: ``i`` stands for ``x_i`` and ``-i``
for its inverse ``X_i``.  Words are kept freely reduced at all times.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class RankError(ValueError):
    """A letter or vector does not fit the ambient ranks."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def letter_key(letter: int) -> int:
    # x1 < X1 < x2 < X2 < ...
    return 2 * abs(letter) - (letter > 0)


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """A reduced word in the free group of the given rank."""

    __slots__ = ("letters", "rank")

    def __init__(self, letters: Iterable[int] = (), rank: int = 0):
        letters = tuple(letters)
        for x in letters:
            if x == 0 or abs(x) > rank:
                raise RankError(f"letter {x} out of range for rank {rank}")
        object.__setattr__(self, "letters", _reduce(letters))
        object.__setattr__(self, "rank", rank)

    @classmethod
    def _trusted(cls, letters: tuple[int, ...], rank: int) -> "Word":
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "rank", rank)
        return w

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls._trusted((), rank)

    @classmethod
    def generator(cls, i: int, rank: int) -> "Word":
        return cls((i,), rank)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.rank == other.rank

    def __hash__(self):
        return hash((self.letters, self.rank))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
        return Word._trusted(_reduce(self.letters + other.letters), self.rank)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        if not k or not base:
            return Word.identity(self.rank)
        core, conj = cyclic_reduce(base)
        return conj * Word._trusted(core.letters * k, self.rank) * conj.inverse()

    def inverse(self) -> "Word":
        return Word._trusted(tuple(-x for x in reversed(self.letters)), self.rank)

    def sort_key(self):
        return tuple(letter_key(x) for x in self.letters)

    def __lt__(self, other: "Word"):
        return (len(self), self.sort_key()) < (len(other), other.sort_key())

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r}, rank={self.rank})"


def reduce_word(raw: Sequence[int], rank: int) -> Word:
    return Word(raw, rank)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    terms = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        x = letters[i]
        name = f"{'x' if x > 0 else 'X'}{abs(x)}"
        terms.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return " ".join(terms)


def abelianize(w: Word, rank: int | None = None) -> tuple[int, ...]:
    """Exponent-sum vector of ``w``."""
    n = w.rank if rank is None else rank
    v = [0] * n
    for x in w.letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conj)`` with ``w = conj * core * conj^-1``, core cyclically reduced."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return Word._trusted(letters[i:j + 1], w.rank), Word._trusted(letters[:i], w.rank)


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


def primitive_root(w: Word) -> tuple[Word, int]:
    """Decompose ``w = root^e`` with ``e`` maximal."""
    if not w:
        raise ValueError("the trivial word has no primitive root")
    core, conj = cyclic_reduce(w)
    letters = core.letters
    size = len(letters)
    for period in range(1, size + 1):
        if size % period == 0 and letters == letters[:period] * (size // period):
            root = conj * Word._trusted(letters[:period], w.rank) * conj.inverse()
            return root, size // period
    raise AssertionError("unreachable")


def power_exponent(g: Word, root: Word) -> int | None:
    """The ``k`` with ``g = root^k`` for a non-proper-power ``root``, else None."""
    if not g:
        return 0
    r, e = primitive_root(g)
    if r == root:
        return e
    if r == root.inverse():
        return -e
    return None


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


@dataclass(frozen=True)
class Element:
    """An element ``(a, u)`` of Z^m x F_n."""

    abelian: tuple[int, ...]
    free: Word

    def __post_init__(self):
        object.__setattr__(self, "abelian", tuple(int(x) for x in self.abelian))

    @property
    def m(self) -> int:
        return len(self.abelian)

    @property
    def n(self) -> int:
        return self.free.rank

    @classmethod
    def identity(cls, m: int, n: int) -> "Element":
        return cls((0,) * m, Word.identity(n))

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def inverse(self) -> "Element":
        return invert(self)

    def __str__(self):
        return format_element(self)


def multiply(g: Element, h: Element) -> Element:
    if g.m != h.m or g.n != h.n:
        raise RankError(f"rank mismatch: ({g.m}, {g.n}) vs ({h.m}, {h.n})")
    return Element(tuple(x + y for x, y in zip(g.abelian, h.abelian)), g.free * h.free)


def invert(g: Element) -> Element:
    return Element(tuple(-x for x in g.abelian), g.free.inverse())


def format_element(g: Element) -> str:
    return f"({','.join(str(x) for x in g.abelian)}; {format_word(g.free)})"


_TERM = re.compile(r"([xX])(\d+)(?:\s*\^\s*(-?\d+))?")
_INT = re.compile(r"-?\d+")


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_word_at(text: str, pos: int, rank: int, stop: str) -> tuple[Word, int]:
    pos = _skip(text, pos)
    if text.startswith("1", pos) and not _TERM.match(text, pos):
        end = _skip(text, pos + 1)
        if end != len(text) and text[end] not in stop:
            raise ParseError("unexpected text after '1'", text, end)
        return Word.identity(rank), end
    letters: list[int] = []
    while True:
        pos = _skip(text, pos)
        if pos == len(text) or text[pos] in stop:
            break
        match = _TERM.match(text, pos)
        if not match:
            raise ParseError("expected a term like x1, X2 or x1^3", text, pos)
        index = int(match.group(2))
        if not 1 <= index <= rank:
            raise ParseError(f"generator index {index} out of range for rank {rank}", text, pos)
        exp = int(match.group(3)) if match.group(3) is not None else 1
        if exp == 0:
            raise ParseError("exponent must be nonzero", text, pos)
        sign = 1 if match.group(1) == "x" else -1
        if exp < 0:
            sign, exp = -sign, -exp
        letters.extend([sign * index] * exp)
        pos = match.end()
    if not letters:
        raise ParseError("empty word (write 1 for the identity)", text, pos)
    return Word(letters, rank), pos


def parse_word(text: str, rank: int) -> Word:
    word, pos = _parse_word_at(text, 0, rank, "")
    return word


def parse_element(text: str, m: int, n: int) -> Element:
    """Parse ``(a1,...,am; word)``; for m = 0 the form is ``(; word)``."""
    pos = _skip(text, 0)
    if not text.startswith("(", pos):
        raise ParseError("expected '('", text, pos)
    pos = _skip(text, pos + 1)
    entries: list[int] = []
    if not text.startswith(";", pos):
        while True:
            match = _INT.match(text, pos)
            if not match:
                raise ParseError("expected an integer", text, pos)
            entries.append(int(match.group()))
            pos = _skip(text, match.end())
            if text.startswith(",", pos):
                pos = _skip(text, pos + 1)
                continue
            break
    if not text.startswith(";", pos):
        raise ParseError("expected ';'", text, pos)
    if len(entries) != m:
        raise ParseError(f"expected {m} abelian entries, got {len(entries)}", text, pos)
    word, pos = _parse_word_at(text, pos + 1, n, ")")
    if not text.startswith(")", pos):
        raise ParseError("expected ')'", text, pos)
    if _skip(text, pos + 1) != len(text):
        raise ParseError("trailing characters", text, pos + 1)
    return Element(tuple(entries), word)
