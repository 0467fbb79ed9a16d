"""Integer solutions of ``a Q + u^ab P = b`` for endo, mono and auto families.

Write ``alpha = gcd(a)``, ``mu = gcd(u^ab)``, ``a = alpha a'``, ``u^ab = mu u'``.
Searching ``Q, P`` reduces to finding integer vectors ``x, y`` with
``alpha x + mu y = b`` (then ``a' Q = x`` and ``u' P = y``).  Monos need
``x != 0``; autos need ``x`` primitive so that ``Q`` can be unimodular.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import intmat
from .intmat import Matrix, Vector
from .words import vec_gcd


class Family(enum.Enum):
    ENDO = "end"
    MONO = "mon"
    AUTO = "aut"


@dataclass(frozen=True)
class AbelianInstance:
    a: Vector
    uab: Vector
    b: Vector
    family: Family

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError(f"a has length {len(self.a)} but b has length {len(self.b)}")

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.uab)


@dataclass(frozen=True)
class AbelianWitness:
    Q: Matrix
    P: Matrix


def reduce_to_e1(v: Sequence[int]) -> tuple[Matrix, Matrix]:
    """Unimodular ``U`` (and its inverse) with ``v U = g e_1``, g = gcd(v)."""
    k = len(v)
    v = list(v)
    U = [list(r) for r in intmat.identity(k)]
    Uinv = [list(r) for r in intmat.identity(k)]
    for j in range(1, k):
        if v[j] == 0:
            continue
        g, s, t = intmat.ext_gcd(v[0], v[j])
        p, q = v[0] // g, v[j] // g
        # columns (0, j) <- (s col0 + t colj, -q col0 + p colj); det = s p + t q = 1
        for row in U:
            c0, cj = row[0], row[j]
            row[0], row[j] = s * c0 + t * cj, -q * c0 + p * cj
        # inverse block [[p, q], [-t, s]] acts on rows 0 and j
        r0, rj = Uinv[0], Uinv[j]
        Uinv[0] = [p * x + q * y for x, y in zip(r0, rj)]
        Uinv[j] = [-t * x + s * y for x, y in zip(r0, rj)]
        v[0], v[j] = g, 0
    if v[0] < 0:
        for row in U:
            row[0] = -row[0]
        Uinv[0] = [-x for x in Uinv[0]]
    return intmat.as_matrix(U), intmat.as_matrix(Uinv)


def transport_primitive(src: Sequence[int], dst: Sequence[int]) -> Matrix:
    """Unimodular Q with ``src Q = dst`` for primitive vectors of equal length."""
    if len(src) != len(dst):
        raise ValueError("length mismatch")
    if vec_gcd(src) != 1 or vec_gcd(dst) != 1:
        raise ValueError("transport_primitive needs primitive vectors")
    U_src, _ = reduce_to_e1(src)
    _, U_dst_inv = reduce_to_e1(dst)
    return intmat.matmul(U_src, U_dst_inv)


def _first_row_map(direction: Sequence[int], row: Sequence[int], nonsingular: bool = False) -> Matrix:
    """Matrix M with ``direction' M = row``, where direction = d * direction' and d = gcd.

    With ``nonsingular`` the remaining rows complete ``row`` to an invertible
    matrix over Q (row must then be nonzero).
    """
    k = len(direction)
    cols = len(row)
    U, _ = reduce_to_e1(direction)
    rows = [tuple(row)] + [(0,) * cols] * (k - 1)
    if nonsingular:
        pivot = next(i for i, x in enumerate(row) if x)
        others = [j for j in range(cols) if j != pivot]
        rows = [tuple(row)] + [tuple(int(i == j) for i in range(cols)) for j in others]
    return intmat.matmul(U, tuple(rows), cols)


def gcd_congruence(c: Sequence[int], modulus: int) -> Vector | None:
    """A vector x with x_i = c_i (mod modulus) and gcd(x) = 1, if any exists."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    m = len(c)
    if m == 0:
        return None
    if m == 1:
        r = c[0] % modulus
        if r == 1 % modulus:
            return (1,)
        if r == (-1) % modulus:
            return (-1,)
        return None
    if vec_gcd(list(c) + [modulus]) != 1:
        return None
    x = [ci % modulus for ci in c]
    if x[0] == 0:
        x[0] = modulus
    rest = vec_gcd([x[0]] + x[2:])
    k = 0
    while gcd(rest, x[1] + k * modulus) != 1:
        k += 1
    x[1] += k * modulus
    return tuple(x)


def _check(inst: AbelianInstance, w: AbelianWitness) -> AbelianWitness:
    lhs = tuple(
        p + q for p, q in zip(intmat.vecmat(inst.a, w.Q, inst.m), intmat.vecmat(inst.uab, w.P, inst.m))
    )
    d = intmat.det(w.Q)
    ok = lhs == tuple(inst.b) and (
        inst.family is Family.ENDO
        or (inst.family is Family.MONO and d != 0)
        or (inst.family is Family.AUTO and abs(d) == 1)
    )
    if not ok:
        raise AssertionError(f"abelian witness failed to verify for {inst}")
    return w


def solve_linear_pair(inst: AbelianInstance) -> AbelianWitness | None:
    """Integer matrices Q (m x m) and P (n x m) with a Q + u^ab P = b in the given family."""
    m, n = inst.m, inst.n
    a, uab, b, family = tuple(inst.a), tuple(inst.uab), tuple(inst.b), inst.family
    if m == 0:
        return AbelianWitness((), ((),) * n)
    alpha, mu = vec_gcd(a), vec_gcd(uab)
    zero_P = intmat.zeros(n, m)

    if alpha == 0 and mu == 0:
        if any(b):
            return None
        return _check(inst, AbelianWitness(intmat.identity(m), zero_P))

    if alpha == 0:
        if any(x % mu for x in b):
            return None
        P = _first_row_map(uab, [x // mu for x in b])
        return _check(inst, AbelianWitness(intmat.identity(m), P))

    if mu == 0:
        if any(x % alpha for x in b):
            return None
        x = [bi // alpha for bi in b]
        if family is Family.ENDO:
            Q = _first_row_map(a, x)
        elif family is Family.MONO:
            if not any(x):
                return None
            Q = _first_row_map(a, x, nonsingular=True)
        else:
            if vec_gcd(x) != 1:
                return None
            Q = transport_primitive([ai // alpha for ai in a], x)
        return _check(inst, AbelianWitness(Q, zero_P))

    g, s, t = intmat.ext_gcd(alpha, mu)
    if any(bi % g for bi in b):
        return None
    if family is Family.AUTO:
        mod = mu // g
        inv = pow(alpha // g, -1, mod) if mod > 1 else 0
        c = [(bi // g) * inv % mod for bi in b]
        x = gcd_congruence(c, mod)
        if x is None:
            return None
        Q = transport_primitive([ai // alpha for ai in a], x)
    else:
        x = [s * (bi // g) for bi in b]
        if family is Family.MONO and not any(x):
            # shifting along (mu/g, -alpha/g) keeps a solution and makes x nonzero
            x[0] += mu // g
        Q = _first_row_map(a, x, nonsingular=family is Family.MONO)
    y = [(bi - alpha * xi) // mu for bi, xi in zip(b, x)]
    P = _first_row_map(uab, y)
    return _check(inst, AbelianWitness(Q, P))


def pure_abelian_whitehead(a: Sequence[int], b: Sequence[int], family: Family) -> Matrix | None:
    """Q with a Q = b (Q singular allowed, nonsingular, or unimodular per family)."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    w = solve_linear_pair(AbelianInstance(tuple(a), (), tuple(b), family))
    return None if w is None else w.Q
