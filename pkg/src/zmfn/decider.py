"""Whitehead problems for elements of Z^m x F_n.

The free condition ``u phi = v`` and the abelian condition
``a Q + u^ab P = b`` are independent, so each query splits into one free-group
question and one integer linear question, and the witness is assembled from
the two answers.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intmat
from .diophantine import AbelianInstance, Family, pure_abelian_whitehead, solve_linear_pair
from .endo import (
    Endomorphism,
    TypeI,
    UnsupportedRank,
    apply_endo,
    classify,
    linear_matrix,
    recognize,
    type_ii,
)
from .intmat import ext_gcd
from .search import Decision, endo_image_decide, mono_image_decide
from .whitehead import aut_equivalent
from .words import Element, Word, abelianize, primitive_root, vec_gcd

ABELIAN_UNSOLVABLE = "abelian-unsolvable"
NOT_AUT_EQUIVALENT = "not-aut-equivalent"


class WitnessDefect(AssertionError):
    """An assembled witness failed verification (a bug, never a user error)."""


@dataclass(frozen=True)
class WhiteheadQuery:
    family: Family
    source: Element
    target: Element
    bound: int | None = None

    def __post_init__(self):
        if (self.source.m, self.source.n) != (self.target.m, self.target.n):
            raise ValueError("source and target must live in the same group")


def _bezout_vector(v: tuple[int, ...]) -> list[int]:
    """A vector s with v . s = gcd(v)."""
    s = [0] * len(v)
    g = 0
    for i, x in enumerate(v):
        g2, p, q = ext_gcd(g, x)
        s = [p * y for y in s]
        s[i] = q
        g = g2
    return s


def type2_feasible(a: tuple[int, ...], uab: tuple[int, ...], v: Word):
    """Type II free data (w, l, h) with w^(a.l + uab.h) = v and l != 0, or None."""
    m, n = len(a), len(uab)
    if m < 1:
        return None
    alpha, mu = vec_gcd(a), vec_gcd(uab)
    if v:
        w, e = primitive_root(v)
    else:
        w, e = Word((1,), v.rank), 0

    if alpha == 0 and mu == 0:
        if e:
            return None
        return w, [1] + [0] * (m - 1), [0] * n
    if alpha == 0:
        if e % mu:
            return None
        h = [e // mu * x for x in _bezout_vector(uab)]
        return w, [1] + [0] * (m - 1), h
    if e == 0 and m >= 2:
        i = next(k for k, x in enumerate(a) if x)
        j = 1 if i == 0 else 0
        l = [0] * m
        l[i], l[j] = -a[j], a[i]
        return w, l, [0] * n
    if mu == 0:
        if e % alpha or e == 0:
            return None
        return w, [e // alpha * x for x in _bezout_vector(a)], [0] * n

    g, s, t = ext_gcd(alpha, mu)
    if e % g:
        return None
    sa, su = _bezout_vector(a), _bezout_vector(uab)
    l = [e // g * s * x for x in sa]
    h = [e // g * t * x for x in su]
    if not any(l):
        # move along (mu e_1, -a_1 su) which keeps a.l + uab.h fixed
        l[0] += mu
        h = [y - a[0] * x for y, x in zip(h, su)]
    return w, l, h


def family_ok(psi: Endomorphism, family: Family) -> bool:
    if family is Family.ENDO:
        return True
    if psi.n >= 2:
        c = classify(psi)
        return c.is_auto if family is Family.AUTO else c.is_mono
    d = intmat.det(linear_matrix(psi))
    return abs(d) == 1 if family is Family.AUTO else d != 0


def verify(psi: Endomorphism, source: Element, target: Element, family: Family) -> bool:
    try:
        return apply_endo(psi, source) == target and family_ok(psi, family)
    except (ValueError, UnsupportedRank):
        return False


def _finish(psi: Endomorphism, q: WhiteheadQuery) -> Decision:
    if not verify(psi, q.source, q.target, q.family):
        raise WitnessDefect(f"witness {psi} does not send {q.source} to {q.target}")
    return Decision.yes(psi)


def _unknown(d: Decision) -> Decision:
    return Decision.unknown(d.bound, reason=f"free-side search exhausted at bound {d.bound}; "
                                            "a larger bound may resolve it")


def decide(q: WhiteheadQuery) -> Decision:
    """Is there an endomorphism of the requested family sending source to target?"""
    src, tgt = q.source, q.target
    m, n = src.m, src.n
    if n <= 1:
        return _decide_abelian(q)
    if m == 0:
        return _decide_free(q)

    a, u, b, v = src.abelian, src.free, tgt.abelian, tgt.free
    uab = abelianize(u)
    ab = solve_linear_pair(AbelianInstance(a, uab, b, q.family))
    if ab is None:
        return Decision.no(ABELIAN_UNSOLVABLE)

    if q.family is Family.AUTO:
        phi = aut_equivalent(u, v)
        if phi is None:
            return Decision.no(NOT_AUT_EQUIVALENT)
        return _finish(TypeI(phi, ab.Q, ab.P), q)

    if q.family is Family.MONO:
        d = mono_image_decide(u, v, q.bound)
        if d.is_yes:
            return _finish(TypeI(d.witness, ab.Q, ab.P), q)
        return d if d.is_no else _unknown(d)

    if not v:
        return _finish(TypeI((Word.identity(n),) * n, ab.Q, ab.P), q)
    data = type2_feasible(a, uab, v)
    if data is not None:
        w, l, h = data
        return _finish(type_ii(w, l, h, ab.Q, ab.P), q)
    d = endo_image_decide(u, v, q.bound)
    if d.is_yes:
        return _finish(TypeI(d.witness, ab.Q, ab.P), q)
    return d if d.is_no else _unknown(d)


def _decide_free(q: WhiteheadQuery) -> Decision:
    u, v = q.source.free, q.target.free
    n = u.rank
    empty_q, empty_p = (), ((),) * n
    if q.family is Family.AUTO:
        phi = aut_equivalent(u, v)
        if phi is None:
            return Decision.no(NOT_AUT_EQUIVALENT)
        return _finish(TypeI(phi, empty_q, empty_p), q)
    decide_free = mono_image_decide if q.family is Family.MONO else endo_image_decide
    d = decide_free(u, v, q.bound)
    if d.is_yes:
        return _finish(TypeI(d.witness, empty_q, empty_p), q)
    return d if d.is_no else _unknown(d)


def _decide_abelian(q: WhiteheadQuery) -> Decision:
    """n <= 1: the group is Z^(m+n)."""
    m, n = q.source.m, q.source.n

    def flat(g: Element):
        return g.abelian + abelianize(g.free)

    M = pure_abelian_whitehead(flat(q.source), flat(q.target), q.family)
    if M is None:
        return Decision.no(ABELIAN_UNSOLVABLE)
    images = [
        Element(row[:m], Word.generator(1, 1) ** row[m] if n else Word.identity(0))
        for row in M
    ]
    return _finish(recognize(images, m, n), q)
