"""Stallings core graphs and pseudo-subgroup recognition.

A core graph is a folded, basepointed graph whose edges carry generator
labels. A word lies in the subgroup generated by A exactly when it reads a
closed path at the basepoint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .words import IDENTITY, Word


@dataclass(frozen=True)
class CoreGraph:
    """Folded core graph with vertices 0..n-1 and basepoint 0.

    ``out[v][g] = u`` is the unique edge v -g-> u; ``inn`` is its mirror.
    Vertices are labelled in breadth-first order from the basepoint, so two
    core graphs are label-isomorphic iff they compare equal.
    """

    n_vertices: int
    out: tuple[dict[int, int], ...]
    inn: tuple[dict[int, int], ...]

    @property
    def basepoint(self) -> int:
        return 0

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((u, g, v) for u, d in enumerate(self.out) for g, v in d.items())

    def degree(self, v: int) -> int:
        return len(self.out[v]) + len(self.inn[v])

    def read(self, w: Word, start: int = 0) -> Optional[int]:
        """Endpoint of the path reading ``w`` from ``start``, or None."""
        v = start
        for g, s in w.letters:
            v = (self.out if s == 1 else self.inn)[v].get(g)
            if v is None:
                return None
        return v

    def contains(self, w: Word) -> bool:
        return self.read(w) == 0


class _Folder:
    def __init__(self) -> None:
        self.parent: list[int] = []
        self.out: list[Optional[dict[int, int]]] = []
        self.inn: list[Optional[dict[int, int]]] = []
        self.pending: list[tuple[int, int]] = []

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inn.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def add_edge(self, u: int, g: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        t = self.out[u].get(g)
        if t is None:
            self.out[u][g] = v
        else:
            self.pending.append((t, v))
        s = self.inn[v].get(g)
        if s is None:
            self.inn[v][g] = u
        else:
            self.pending.append((s, u))

    def _merge(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if b == 0:  # keep the basepoint as its own root
            a, b = b, a
        self.parent[b] = a
        for table in (self.out, self.inn):
            src, dst = table[b], table[a]
            for g, t in src.items():
                t2 = dst.get(g)
                if t2 is None:
                    dst[g] = t
                else:
                    self.pending.append((t2, t))
            table[b] = None

    def fold(self, rng: Optional[random.Random]) -> None:
        while self.pending:
            if rng is None:
                a, b = self.pending.pop()
            else:
                i = rng.randrange(len(self.pending))
                self.pending[i], self.pending[-1] = self.pending[-1], self.pending[i]
                a, b = self.pending.pop()
            self._merge(a, b)


def _canonical(out: dict[int, dict[int, int]], inn: dict[int, dict[int, int]]) -> CoreGraph:
    label = {0: 0}
    order = [0]
    for v in order:
        for g in sorted(set(out[v]) | set(inn[v])):
            for u in (out[v].get(g), inn[v].get(g)):
                if u is not None and u not in label:
                    label[u] = len(order)
                    order.append(u)
    new_out = tuple({g: label[u] for g, u in sorted(out[v].items())} for v in order)
    new_inn = tuple({g: label[u] for g, u in sorted(inn[v].items())} for v in order)
    return CoreGraph(len(order), new_out, new_inn)


def build_core(
    words: Iterable[Word],
    rng: Optional[random.Random] = None,
) -> CoreGraph:
    """Core graph of the subgroup generated by ``words``.

    With ``rng`` the petals are inserted and folded in a random order; the
    result is the same graph either way.
    """
    words = list(words)
    if rng is not None:
        rng.shuffle(words)
    f = _Folder()
    f.new_vertex()
    for w in words:
        if w.is_identity():
            continue
        v = 0
        n = len(w.letters)
        for i, (g, s) in enumerate(w.letters):
            u = 0 if i == n - 1 else f.new_vertex()
            if s == 1:
                f.add_edge(v, g, u)
            else:
                f.add_edge(u, g, v)
            v = u
        if rng is None:
            f.fold(None)
    f.fold(rng)

    out: dict[int, dict[int, int]] = {}
    inn: dict[int, dict[int, int]] = {}
    for v in range(len(f.parent)):
        if f.find(v) != v:
            continue
        out[v] = {g: f.find(u) for g, u in f.out[v].items()}
        inn[v] = {g: f.find(u) for g, u in f.inn[v].items()}

    # prune hanging trees
    stack = [v for v in out if v != 0 and len(out[v]) + len(inn[v]) <= 1]
    while stack:
        v = stack.pop()
        if v not in out:
            continue
        for g, u in out[v].items():
            del inn[u][g]
            if u != 0 and u != v and len(out[u]) + len(inn[u]) <= 1:
                stack.append(u)
        for g, u in inn[v].items():
            if u in out and u != v:
                del out[u][g]
                if u != 0 and len(out[u]) + len(inn[u]) <= 1:
                    stack.append(u)
        del out[v], inn[v]
    return _canonical(out, inn)


def isomorphism(g1: CoreGraph, g2: CoreGraph) -> Optional[dict[int, int]]:
    """A basepoint- and label-preserving isomorphism g1 -> g2, if one exists."""
    if g1.n_vertices != g2.n_vertices:
        return None
    phi = {0: 0}
    order = [0]
    for v in order:
        w = phi[v]
        for t1, t2 in ((g1.out, g2.out), (g1.inn, g2.inn)):
            if set(t1[v]) != set(t2[w]):
                return None
            for g, u in t1[v].items():
                u2 = t2[w][g]
                if u in phi:
                    if phi[u] != u2:
                        return None
                else:
                    phi[u] = u2
                    order.append(u)
    if len(set(phi.values())) != len(phi) or len(phi) != g1.n_vertices:
        return None
    return phi


def membership(core: CoreGraph, w: Word) -> bool:
    return core.contains(w)


@dataclass(frozen=True)
class PseudoVerdict:
    verdict: bool
    witness: Optional[Word] = None

    def __bool__(self) -> bool:
        return self.verdict


def is_pseudo_subgroup(A: Iterable[Word], B: Iterable[Word]) -> PseudoVerdict:
    """Decide whether <A> meets B exactly in A (A must be a subset of B).

    The witness is the least element of (<A> n B) minus A.
    """
    A = frozenset(A)
    B = frozenset(B)
    if not A <= B:
        raise ValueError("A must be a subset of B")
    core = build_core(sorted(A))
    for w in sorted(B - A):
        if core.contains(w):
            return PseudoVerdict(False, w)
    return PseudoVerdict(True)


def quick_refute(A: frozenset[Word], B: frozenset[Word]) -> Optional[Word]:
    """Cheap sufficient test for non-pseudo: identity, inverses, products."""
    cands = []
    if IDENTITY in B and IDENTITY not in A:
        cands.append(IDENTITY)
    for a in A:
        ai = a.inverse()
        if ai in B and ai not in A:
            cands.append(ai)
    if not cands:
        for a in A:
            for b in A:
                c = a * b
                if c in B and c not in A:
                    cands.append(c)
    return min(cands) if cands else None
