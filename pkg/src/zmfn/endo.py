"""Endomorphisms of Z^m x F_n.

Every endomorphism has one of two shapes (acting on the right):

* type I:  (a, u) -> (a Q + u^ab P, u phi) for an endomorphism phi of F_n;
* type II: (a, u) -> (a Q + u^ab P, w^(a.l + u^ab.h)) with w not a proper
  power and l != 0.

Q is m x m and P is n x m.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

from . import intmat
from .intmat import Matrix
from .stallings import is_injective_endo, is_surjective_endo
from .whitehead import apply_images, identity_images, invert_automorphism
from .words import (
    Element,
    Word,
    abelianize,
    format_word,
    parse_word,
    power_exponent,
    primitive_root,
)


class RelationError(ValueError):
    """Generator images that do not respect the defining relations."""


class UnsupportedRank(ValueError):
    pass


def _check_matrix(M: Matrix, rows: int, cols: int, name: str) -> None:
    if len(M) != rows or any(len(r) != cols for r in M):
        raise ValueError(f"{name} must be {rows}x{cols}")


@dataclass(frozen=True)
class TypeI:
    phi: tuple[Word, ...]
    Q: Matrix
    P: Matrix

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        object.__setattr__(self, "Q", intmat.as_matrix(self.Q))
        object.__setattr__(self, "P", intmat.as_matrix(self.P))
        n = len(self.phi)
        if any(w.rank != n for w in self.phi):
            raise ValueError("phi images must have rank equal to the number of images")
        m = len(self.Q)
        _check_matrix(self.Q, m, m, "Q")
        _check_matrix(self.P, n, m, "P")

    kind = "I"

    @property
    def m(self) -> int:
        return len(self.Q)

    @property
    def n(self) -> int:
        return len(self.phi)


@dataclass(frozen=True)
class TypeII:
    w: Word
    l: tuple[int, ...]
    h: tuple[int, ...]
    Q: Matrix
    P: Matrix

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        object.__setattr__(self, "Q", intmat.as_matrix(self.Q))
        object.__setattr__(self, "P", intmat.as_matrix(self.P))
        if not self.w or primitive_root(self.w)[1] != 1:
            raise ValueError("w must be a nontrivial word that is not a proper power")
        if not any(self.l):
            raise ValueError("l must be nonzero")
        if self.w.rank != len(self.h):
            raise ValueError("h must have length n")
        m = len(self.l)
        _check_matrix(self.Q, m, m, "Q")
        _check_matrix(self.P, len(self.h), m, "P")

    kind = "II"

    @property
    def m(self) -> int:
        return len(self.l)

    @property
    def n(self) -> int:
        return len(self.h)


Endomorphism = Union[TypeI, TypeII]


def type_ii(w: Word, l: Sequence[int], h: Sequence[int], Q: Matrix, P: Matrix) -> TypeII:
    """Build a type II endomorphism in normal form.

    ``w`` may be any nontrivial word: it is replaced by its primitive root with the
    exponent folded into l and h, and then by whichever of root / inverse root
    is lexicographically smaller.
    """
    root, e = primitive_root(w)
    l = [e * x for x in l]
    h = [e * x for x in h]
    inv = root.inverse()
    if inv.sort_key() < root.sort_key():
        root, l, h = inv, [-x for x in l], [-x for x in h]
    return TypeII(root, tuple(l), tuple(h), Q, P)


def identity(m: int, n: int) -> TypeI:
    return TypeI(identity_images(n), intmat.identity(m), intmat.zeros(n, m))


def generators(m: int, n: int) -> list[Element]:
    """t_1..t_m followed by x_1..x_n."""
    gens = [Element(tuple(int(i == j) for j in range(m)), Word.identity(n)) for i in range(m)]
    gens += [Element((0,) * m, Word((j,), n)) for j in range(1, n + 1)]
    return gens


def apply_endo(psi: Endomorphism, g: Element) -> Element:
    if g.m != psi.m or g.n != psi.n:
        raise ValueError(f"element of ranks ({g.m}, {g.n}) for endomorphism of ranks ({psi.m}, {psi.n})")
    uab = abelianize(g.free)
    m = psi.m
    abelian = tuple(x + y for x, y in zip(intmat.vecmat(g.abelian, psi.Q, m), intmat.vecmat(uab, psi.P, m)))
    if isinstance(psi, TypeI):
        free = apply_images(psi.phi, g.free) if psi.n else g.free
    else:
        k = sum(x * y for x, y in zip(g.abelian, psi.l)) + sum(x * y for x, y in zip(uab, psi.h))
        free = psi.w ** k
    return Element(abelian, free)


def generator_images(psi: Endomorphism) -> list[Element]:
    return [apply_endo(psi, g) for g in generators(psi.m, psi.n)]


def recognize(images: Sequence[Element], m: int, n: int) -> Endomorphism:
    """The endomorphism with the given images of t_1..t_m, x_1..x_n."""
    images = list(images)
    if len(images) != m + n:
        raise ValueError(f"expected {m + n} images, got {len(images)}")
    for g in images:
        if g.m != m or g.n != n:
            raise ValueError("image of the wrong ranks")
    Q = tuple(g.abelian for g in images[:m])
    P = tuple(g.abelian for g in images[m:])
    t_free = [g.free for g in images[:m]]
    x_free = [g.free for g in images[m:]]
    if not any(t_free):
        return TypeI(tuple(x_free), Q, P)
    root = primitive_root(next(f for f in t_free if f))[0]
    exps = [power_exponent(f, root) for f in t_free + x_free]
    if any(e is None for e in exps):
        raise RelationError(
            "the images of t_i are central, so every free part must be a power of a common root"
        )
    return type_ii(root, exps[:m], exps[m:], Q, P)


def compose(first: Endomorphism, then: Endomorphism) -> Endomorphism:
    """``first`` acts first: g -> then(first(g))."""
    if (first.m, first.n) != (then.m, then.n):
        raise ValueError("rank mismatch")
    return recognize([apply_endo(then, g) for g in generator_images(first)], first.m, first.n)


def abelianization_matrix(phi_images: Sequence[Word]) -> Matrix:
    return tuple(abelianize(w) for w in phi_images)


@dataclass(frozen=True)
class Classification:
    is_mono: bool
    is_epi: bool
    kind: str

    @property
    def is_auto(self) -> bool:
        return self.is_mono and self.is_epi


def classify(psi: Endomorphism) -> Classification:
    if psi.n < 2:
        raise UnsupportedRank("classification by type needs n >= 2")
    if isinstance(psi, TypeII):
        return Classification(False, False, "II")
    d = intmat.det(psi.Q)
    mono = d != 0 and is_injective_endo(psi.phi, psi.n)
    epi = abs(d) == 1 and is_surjective_endo(psi.phi, psi.n)
    return Classification(mono, epi, "I")


def linear_matrix(psi: Endomorphism) -> Matrix:
    """For n <= 1 the group is Z^(m+n); the matrix of psi acting on row vectors."""
    if psi.n > 1:
        raise UnsupportedRank("only defined for n <= 1")
    rows = [list(r) for r in psi.Q] + [list(r) for r in psi.P]
    if psi.n == 1:
        if isinstance(psi, TypeII):
            sign = 1 if psi.w.letters == (1,) else -1
            extra = [sign * x for x in psi.l + psi.h]
        else:
            extra = [0] * psi.m + [abelianize(psi.phi[0])[0]]
        for row, x in zip(rows, extra):
            row.append(x)
    return intmat.as_matrix(rows)


def inverse(psi: Endomorphism) -> TypeI:
    """Two-sided inverse of an automorphism (type I, phi invertible, Q unimodular)."""
    if not isinstance(psi, TypeI):
        raise ValueError("type II endomorphisms are never invertible")
    phi_inv = invert_automorphism(psi.phi) if psi.n else ()
    Q_inv = intmat.inverse_unimodular(psi.Q)
    M_inv = abelianization_matrix(phi_inv)
    m = psi.m
    P_inv = intmat.neg(intmat.matmul(intmat.matmul(M_inv, psi.P, m), Q_inv, m))
    return TypeI(phi_inv, Q_inv, P_inv)


def to_dict(psi: Endomorphism) -> dict:
    data: dict = {"type": psi.kind, "m": psi.m, "n": psi.n}
    if isinstance(psi, TypeI):
        data["phi"] = [format_word(w) for w in psi.phi]
    else:
        data["w"] = format_word(psi.w)
        data["l"] = list(psi.l)
        data["h"] = list(psi.h)
    data["Q"] = [list(r) for r in psi.Q]
    data["P"] = [list(r) for r in psi.P]
    return data


def from_dict(data: dict) -> Endomorphism:
    m, n = int(data["m"]), int(data["n"])
    Q = intmat.as_matrix(data["Q"])
    P = intmat.as_matrix(data["P"])
    if m == 0:
        P = ((),) * n
    if data["type"] == "I":
        phi = tuple(parse_word(s, n) for s in data["phi"])
        if len(phi) != n:
            raise ValueError(f"phi must list {n} images")
        return TypeI(phi, Q, P)
    if data["type"] == "II":
        return TypeII(parse_word(data["w"], n), tuple(data["l"]), tuple(data["h"]), Q, P)
    raise ValueError(f"unknown endomorphism type {data['type']!r}")


def dumps(psi: Endomorphism) -> str:
    return json.dumps(to_dict(psi))


def loads(text: str) -> Endomorphism:
    return from_dict(json.loads(text))


def describe(psi: Endomorphism) -> str:
    """Human-readable generator images."""
    lines = [f"type {psi.kind} endomorphism of Z^{psi.m} x F_{psi.n}"]
    names = [f"t{i}" for i in range(1, psi.m + 1)] + [f"x{j}" for j in range(1, psi.n + 1)]
    for name, img in zip(names, generator_images(psi)):
        lines.append(f"  {name} -> {img}")
    return "\n".join(lines)
