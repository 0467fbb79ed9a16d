"""Three-valued deciders for ``u phi = v`` with phi an endomorphism or monomorphism of F_n.

No general algorithm is implemented here.  Sound filters certify "no",
cheap constructions and an exhaustive search over short image tuples
certify "yes", and everything else is reported as unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Iterator

from .stallings import is_injective_endo
from .whitehead import Images, apply_images, compose_images, identity_images, is_primitive
from .words import Word, abelianize, letter_key, primitive_root, vec_gcd


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witness: Any = None
    reason: str | None = None
    bound: int | None = None

    @classmethod
    def yes(cls, witness) -> "Decision":
        return cls(Verdict.YES, witness=witness)

    @classmethod
    def no(cls, reason: str) -> "Decision":
        return cls(Verdict.NO, reason=reason)

    @classmethod
    def unknown(cls, bound: int, reason: str | None = None) -> "Decision":
        return cls(Verdict.UNKNOWN, bound=bound, reason=reason)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN


# reason codes for certified "no" answers on the free side
TRIVIAL_SOURCE = "trivial-source"   # u = 1, v != 1
TRIVIAL_TARGET = "trivial-target"   # mono only: u != 1, v = 1
ABELIAN_ZERO = "abelian-zero"       # u^ab = 0, v^ab != 0
ABELIAN_GCD = "abelian-gcd"         # gcd(u^ab) does not divide v^ab
POWER = "power"                     # u = r^k (k > 1) but v is not a k-th power


def default_bound(v: Word) -> int:
    return max(2 * len(v), 4)


def is_kth_power(v: Word, k: int) -> bool:
    if not v:
        return True
    return primitive_root(v)[1] % k == 0


def free_filter(u: Word, v: Word, injective: bool = False) -> str | None:
    """First sound obstruction to ``u phi = v``, or None."""
    if not u:
        return TRIVIAL_SOURCE if v else None
    if injective and not v:
        return TRIVIAL_TARGET
    uab, vab = abelianize(u), abelianize(v)
    d = vec_gcd(uab)
    if d == 0:
        if any(vab):
            return ABELIAN_ZERO
    elif any(x % d for x in vab):
        return ABELIAN_GCD
    k = primitive_root(u)[1]
    if k > 1 and v and not is_kth_power(v, k):
        return POWER
    return None


@lru_cache(maxsize=64)
def _words_of_length(n: int, length: int) -> tuple[Word, ...]:
    letters = sorted((s * i for i in range(1, n + 1) for s in (1, -1)), key=letter_key)
    out: list[tuple[int, ...]] = [()]
    for _ in range(length):
        out = [w + (x,) for w in out for x in letters if not w or w[-1] != -x]
    return tuple(Word._trusted(w, n) for w in out)


def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(0, min(cap, total) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def image_tuples(n: int, slots: int, bound: int) -> Iterator[tuple[Word, ...]]:
    """All tuples of ``slots`` words of length <= bound: by total length, then lexicographically."""
    for total in range(0, slots * bound + 1):
        for lengths in _compositions(total, slots, bound):
            yield from product(*(_words_of_length(n, k) for k in lengths))


def _search(u: Word, v: Word, bound: int, injective: bool) -> Images | None:
    n = u.rank
    vab = abelianize(v)
    if injective:
        used = list(range(n))
    else:
        used = sorted({abs(x) - 1 for x in u.letters})
    uab = abelianize(u)
    trivial = Word.identity(n)
    for chosen in image_tuples(n, len(used), bound):
        images = [trivial] * n
        for slot, img in zip(used, chosen):
            images[slot] = img
        # u^ab M = v^ab is necessary
        ab = [0] * n
        for j in used:
            c = uab[j]
            if c:
                for i, x in enumerate(abelianize(images[j])):
                    ab[i] += c * x
        if tuple(ab) != vab:
            continue
        if apply_images(images, u) != v:
            continue
        if injective and not is_injective_endo(images, n):
            continue
        return tuple(images)
    return None


def _check_rank(u: Word, v: Word, bound: int) -> None:
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    if bound < 1:
        raise ValueError("bound must be at least 1")


@lru_cache(maxsize=65536)
def endo_image_decide(u: Word, v: Word, bound: int | None = None) -> Decision:
    """Decide whether some endomorphism of F_n sends u to v."""
    bound = default_bound(v) if bound is None else bound
    _check_rank(u, v, bound)
    n = u.rank
    reason = free_filter(u, v)
    if reason:
        return Decision.no(reason)
    if not v:
        return Decision.yes((Word.identity(n),) * n)
    primitive, sigma = is_primitive(u)
    if primitive:
        rho = (v,) + (Word.identity(n),) * (n - 1)
        phi = compose_images(sigma, rho)
        assert apply_images(phi, u) == v
        return Decision.yes(phi)
    phi = _search(u, v, bound, injective=False)
    if phi is not None:
        return Decision.yes(phi)
    return Decision.unknown(bound)


@lru_cache(maxsize=65536)
def mono_image_decide(u: Word, v: Word, bound: int | None = None) -> Decision:
    """Decide whether some injective endomorphism of F_n sends u to v."""
    bound = default_bound(v) if bound is None else bound
    _check_rank(u, v, bound)
    n = u.rank
    if u == v:
        return Decision.yes(identity_images(n))
    reason = free_filter(u, v, injective=True)
    if reason:
        return Decision.no(reason)
    phi = _search(u, v, bound, injective=True)
    if phi is not None:
        return Decision.yes(phi)
    return Decision.unknown(bound)
