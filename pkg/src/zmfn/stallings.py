"""Stallings folded core graphs of finitely generated subgroups of F_n.

Every edge also carries a word in the subgroup generators (the "edge
expression").  Reading the expressions along a closed path at the base vertex
writes the path label as a product of generators, which is how
``express`` recovers preimages (and hence inverses of automorphisms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .words import Word, letter_key


@dataclass(frozen=True)
class FoldedGraph:
    """Based folded core graph; vertex 0 is the base.

    ``edges`` are ``(source, label, target)`` with positive labels, numbered
    canonically (breadth-first from the base, labels in the order
    x1, X1, x2, X2, ...), so equal subgroups give equal graphs.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    rank_n: int
    expressions: tuple[Word, ...] = field(default=(), compare=False, repr=False)

    @cached_property
    def _adjacency(self) -> list[dict[int, tuple[int, int]]]:
        adj: list[dict[int, tuple[int, int]]] = [{} for _ in range(self.num_vertices)]
        for k, (s, a, t) in enumerate(self.edges):
            adj[s][a] = (t, k)
            adj[t][-a] = (s, k)
        return adj

    def follow(self, v: int, letter: int) -> int | None:
        step = self._adjacency[v].get(letter)
        return None if step is None else step[0]

    def dump(self) -> str:
        lines = [f"vertices {self.num_vertices} base 0"]
        lines += [f"{s} -x{a}-> {t}" for s, a, t in self.edges]
        return "\n".join(lines)


class _Folder:
    """Union-find folding.  ``fix[v]`` is a word c with eval(c) = g_rep * g_v^-1."""

    def __init__(self, num_gens: int):
        self.k = num_gens
        self.parent: list[int] = []
        self.fix: list[Word] = []
        self.out: list[dict[int, tuple[int, Word]]] = []
        self.pending: list[tuple[int, int, int, Word]] = []

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.fix.append(Word.identity(self.k))
        self.out.append({})
        return len(self.parent) - 1

    def _resolve(self, v: int) -> tuple[int, Word]:
        chain = []
        while self.parent[v] != v:
            chain.append(self.fix[v])
            v = self.parent[v]
        corr = Word.identity(self.k)
        for c in chain:
            corr = c * corr
        return v, corr

    def add_edge(self, u: int, letter: int, v: int, expr: Word) -> None:
        self.pending.append((u, letter, v, expr))
        while self.pending:
            self._insert(*self.pending.pop())

    def _insert(self, u: int, a: int, v: int, expr: Word) -> None:
        u, cu = self._resolve(u)
        v, cv = self._resolve(v)
        expr = cu * expr * cv.inverse()
        existing = self.out[u].get(a)
        if existing is not None:
            w, mu = existing
            if w != v:
                # edges u-a->w and u-a->v: identify v with w
                self._merge(v, w, mu.inverse() * expr)
            return
        existing = self.out[v].get(-a)
        if existing is not None:
            z, nu = existing
            if z != u:
                self._merge(u, z, nu.inverse() * expr.inverse())
            return
        self.out[u][a] = (v, expr)
        self.out[v][-a] = (u, expr.inverse())

    def _merge(self, x: int, y: int, corr: Word) -> None:
        # eval(corr) = g_y g_x^-1
        edges = self.out[x]
        self.out[x] = {}
        self.parent[x] = y
        self.fix[x] = corr
        for a, (z, expr) in edges.items():
            if z != x and self.out[z].get(-a, (None,))[0] == x:
                del self.out[z][-a]
        for a, (z, expr) in edges.items():
            self.pending.append((x, a, z, expr))


def _build(generators: Sequence[Word], rank: int) -> FoldedGraph:
    k = len(generators)
    folder = _Folder(k)
    base = folder.new_vertex()
    for i, gen in enumerate(generators):
        if gen.rank != rank:
            raise ValueError(f"generator {gen} has rank {gen.rank}, expected {rank}")
        if not gen:
            continue
        prev = base
        for pos, letter in enumerate(gen.letters):
            last = pos == len(gen) - 1
            nxt = base if last else folder.new_vertex()
            expr = Word((i + 1,), k) if last else Word.identity(k)
            folder.add_edge(prev, letter, nxt, expr)
            prev = nxt

    base, shift = folder._resolve(base)
    # expressions are relative to the potential of the merged base vertex
    shift_inv = shift.inverse()
    out = folder.out
    alive = {v for v in range(len(out)) if folder.parent[v] == v}
    # trim hairs, never the base
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if v != base and len(out[v]) <= 1:
                for a, (z, _) in out[v].items():
                    del out[z][-a]
                out[v] = {}
                alive.discard(v)
                changed = True

    order = [base]
    number = {base: 0}
    for v in order:
        for a in sorted(out[v], key=letter_key):
            z = out[v][a][0]
            if z not in number:
                number[z] = len(order)
                order.append(z)
    edges = []
    for v in order:
        for a, (z, expr) in out[v].items():
            if a > 0:
                edges.append(((number[v], a, number[z]), shift_inv * expr * shift))
    edges.sort(key=lambda e: e[0])
    return FoldedGraph(len(order), tuple(e for e, _ in edges), rank, tuple(x for _, x in edges))


def fold(generators: Sequence[Word], rank: int) -> FoldedGraph:
    return _build(list(generators), rank)


def graph_rank(g: FoldedGraph) -> int:
    if g.num_vertices == 0:
        return 0
    return len(g.edges) - g.num_vertices + 1


def membership(g: FoldedGraph, w: Word) -> bool:
    v: int | None = 0
    for x in w.letters:
        v = g.follow(v, x)
        if v is None:
            return False
    return v == 0


def express(generators: Sequence[Word], w: Word, rank: int | None = None) -> Word | None:
    """Write ``w`` as a word in ``generators`` (rank = len(generators)), or None."""
    if rank is None:
        rank = w.rank
    g = fold(generators, rank)
    k = len(generators)
    adj = g._adjacency
    v = 0
    result = Word.identity(k)
    for x in w.letters:
        step = adj[v].get(x)
        if step is None:
            return None
        z, idx = step
        expr = g.expressions[idx]
        result = result * (expr if x > 0 else expr.inverse())
        v = z
    return result if v == 0 else None


def is_rose(g: FoldedGraph) -> bool:
    return g.num_vertices == 1 and len(g.edges) == g.rank_n


def is_injective_endo(images: Sequence[Word], rank: int) -> bool:
    if len(images) != rank:
        raise ValueError(f"expected {rank} images, got {len(images)}")
    return graph_rank(fold(images, rank)) == rank


def is_surjective_endo(images: Sequence[Word], rank: int) -> bool:
    if len(images) != rank:
        raise ValueError(f"expected {rank} images, got {len(images)}")
    return is_rose(fold(images, rank))
