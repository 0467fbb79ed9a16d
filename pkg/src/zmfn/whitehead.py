"""Whitehead's algorithm for automorphic equivalence of words in F_n.

Automorphisms are passed around as tuples of generator images and act on
the right: ``apply_images(compose_images(f, g), w) == apply_images(g, apply_images(f, w))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence, Union

from .words import Word, cyclic_reduce, letter_key

Images = tuple[Word, ...]


@dataclass(frozen=True)
class Permutation:
    """x_i -> x_{perm[i]}^{signs[i]} (0-based ``perm``)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"bad signs: {self.signs}")

    @property
    def rank(self) -> int:
        return len(self.perm)

    def images(self) -> Images:
        n = self.rank
        return tuple(Word(((self.perm[i] + 1) * self.signs[i],), n) for i in range(n))

    def inverse(self) -> "Permutation":
        n = self.rank
        perm = [0] * n
        signs = [1] * n
        for i in range(n):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return Permutation(tuple(perm), tuple(signs))

    def __str__(self):
        return "perm(" + ", ".join(
            f"x{i + 1}->{'x' if s > 0 else 'X'}{p + 1}" for i, (p, s) in enumerate(zip(self.perm, self.signs))
        ) + ")"


@dataclass(frozen=True)
class Multiplier:
    """The Whitehead automorphism (A, a): fixes a; y -> y a, a^-1 y or a^-1 y a."""

    a: int
    A: frozenset[int]
    rank: int

    def __post_init__(self):
        if self.a not in self.A or -self.a in self.A:
            raise ValueError("need a in A and a^-1 not in A")
        if any(x == 0 or abs(x) > self.rank for x in self.A):
            raise ValueError(f"letters out of range for rank {self.rank}")

    def images(self) -> Images:
        n, a = self.rank, self.a
        out = []
        for i in range(1, n + 1):
            if i == abs(a):
                out.append(Word((i,), n))
                continue
            letters = []
            if -i in self.A:
                letters.append(-a)
            letters.append(i)
            if i in self.A:
                letters.append(a)
            out.append(Word(letters, n))
        return tuple(out)

    def inverse(self) -> "Multiplier":
        return Multiplier(-self.a, (self.A - {self.a}) | {-self.a}, self.rank)

    def __str__(self):
        members = " ".join(_letter_name(x) for x in sorted(self.A, key=letter_key))
        return f"mult(a={_letter_name(self.a)}, A={{{members}}})"


WhiteheadAut = Union[Permutation, Multiplier]


def _letter_name(x: int) -> str:
    return f"{'x' if x > 0 else 'X'}{abs(x)}"


@lru_cache(maxsize=None)
def enumerate_whitehead_auts(n: int) -> tuple[WhiteheadAut, ...]:
    """Signed permutations, then multipliers with A != {a}, in a fixed order."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    auts: list[WhiteheadAut] = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            auts.append(Permutation(perm, signs))
    letters = sorted((s * i for i in range(1, n + 1) for s in (1, -1)), key=letter_key)
    for a in letters:
        others = [x for x in letters if abs(x) != abs(a)]
        for mask in range(1, 1 << len(others)):
            A = frozenset([a] + [x for k, x in enumerate(others) if mask >> k & 1])
            auts.append(Multiplier(a, A, n))
    return tuple(auts)


def identity_images(n: int) -> Images:
    return tuple(Word((i,), n) for i in range(1, n + 1))


def apply_images(images: Sequence[Word], w: Word) -> Word:
    """Substitute ``images[i-1]`` for x_i in ``w``."""
    rank = images[0].rank if images else 0
    out: list[int] = []
    inverses = [None] * len(images)
    for x in w.letters:
        if x > 0:
            seq = images[x - 1].letters
        else:
            seq = inverses[-x - 1]
            if seq is None:
                seq = inverses[-x - 1] = tuple(-y for y in reversed(images[-x - 1].letters))
        for y in seq:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return Word._trusted(tuple(out), rank)


def compose_images(first: Sequence[Word], then: Sequence[Word]) -> Images:
    return tuple(apply_images(then, img) for img in first)


@lru_cache(maxsize=4096)
def _aut_images(t: WhiteheadAut) -> Images:
    return t.images()


def apply_aut(t: WhiteheadAut, w: Word) -> Word:
    return apply_images(_aut_images(t), w)


def compose_trace(trace: Iterable[WhiteheadAut], n: int) -> Images:
    images = identity_images(n)
    for t in trace:
        images = compose_images(images, _aut_images(t))
    return images


def inverse_trace(trace: Sequence[WhiteheadAut]) -> list[WhiteheadAut]:
    return [t.inverse() for t in reversed(trace)]


@dataclass(frozen=True)
class CyclicWord:
    """A conjugacy class of F_n, stored as its least rotation (x1 < X1 < x2 < ...)."""

    word: Word

    @classmethod
    def of(cls, w: Word) -> "CyclicWord":
        return cls(canonical_rotation(cyclic_reduce(w)[0]))

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return str(self.word)


def canonical_rotation(core: Word) -> Word:
    letters = core.letters
    if not letters:
        return core
    best = min(range(len(letters)), key=lambda r: [letter_key(x) for x in letters[r:] + letters[:r]])
    return Word._trusted(letters[best:] + letters[:best], core.rank)


def cyclic_length(w: Word) -> int:
    return len(cyclic_reduce(w)[0])


def minimize_cyclic(w: Word, auts: Sequence[WhiteheadAut] | None = None) -> tuple[CyclicWord, list[WhiteheadAut]]:
    """Greedily apply length-decreasing Whitehead automorphisms to the cyclic word of ``w``.

    Returns the minimal cyclic word and the automorphisms used, in order.
    ``auts`` overrides the candidate list (and therefore the tie-break order).
    """
    n = w.rank
    current = cyclic_reduce(w)[0]
    trace: list[WhiteheadAut] = []
    if n == 0 or len(current) <= 1:
        return CyclicWord(canonical_rotation(current)), trace
    candidates = enumerate_whitehead_auts(n) if auts is None else auts
    improved = True
    while improved:
        improved = False
        for t in candidates:
            image = cyclic_reduce(apply_aut(t, current))[0]
            if len(image) < len(current):
                current = image
                trace.append(t)
                improved = True
                break
    return CyclicWord(canonical_rotation(current)), trace


def _orbit_path(start: Word, goal: Word, n: int) -> list[WhiteheadAut] | None:
    """BFS over minimal cyclic words of one length; returns the automorphisms on the path."""
    if start == goal:
        return []
    auts = enumerate_whitehead_auts(n)
    parent: dict[Word, tuple[Word, WhiteheadAut] | None] = {start: None}
    queue = deque([start])
    size = len(start)
    while queue:
        cur = queue.popleft()
        for t in auts:
            image = cyclic_reduce(apply_aut(t, cur))[0]
            if len(image) != size:
                continue
            nxt = canonical_rotation(image)
            if nxt in parent:
                continue
            parent[nxt] = (cur, t)
            if nxt == goal:
                path = []
                node = nxt
                while parent[node] is not None:
                    prev, step = parent[node]
                    path.append(step)
                    node = prev
                return path[::-1]
            queue.append(nxt)
    return None


def inner_images(g: Word) -> Images:
    """Images of y -> g^-1 y g."""
    gi = g.inverse()
    return tuple(gi * Word((i,), g.rank) * g for i in range(1, g.rank + 1))


def aut_equivalent(u: Word, v: Word) -> Images | None:
    """Generator images of an automorphism sending ``u`` exactly to ``v``, or None."""
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    n = u.rank
    if u == v:
        return identity_images(n)
    if not u or not v or n == 0:
        return None
    min_u, trace_u = minimize_cyclic(u)
    min_v, trace_v = minimize_cyclic(v)
    if len(min_u) != len(min_v):
        return None
    path = _orbit_path(min_u.word, min_v.word, n)
    if path is None:
        return None
    phi = compose_trace(list(trace_u) + path + inverse_trace(trace_v), n)

    # u.phi is now conjugate to v; conjugate once more to land on v exactly
    x = apply_images(phi, u)
    core_x, conj_x = cyclic_reduce(x)
    core_v, conj_v = cyclic_reduce(v)
    letters = core_x.letters
    for r in range(len(letters)):
        if letters[r:] + letters[:r] == core_v.letters:
            s = Word._trusted(letters[:r], n)
            break
    else:
        raise AssertionError("orbit search returned a non-conjugate image")
    g = conj_x * s * conj_v.inverse()
    phi = compose_images(phi, inner_images(g))
    if apply_images(phi, u) != v:
        raise AssertionError("automorphism witness failed to verify")
    return phi


def is_primitive(w: Word) -> tuple[bool, Images | None]:
    """Whether ``w`` belongs to a free basis, with images of an automorphism sending w to x1."""
    if not w:
        raise ValueError("the trivial word is not primitive")
    phi = aut_equivalent(w, Word((1,), w.rank))
    return phi is not None, phi


def invert_automorphism(images: Sequence[Word]) -> Images:
    """Inverse of an automorphism given by generator images."""
    from .stallings import express

    n = len(images)
    out = []
    for i in range(1, n + 1):
        pre = express(images, Word((i,), n), n)
        if pre is None:
            raise ValueError("not an automorphism")
        out.append(pre)
    inverse = tuple(out)
    if compose_images(images, inverse) != identity_images(n):
        raise ValueError("not an automorphism")
    return inverse
