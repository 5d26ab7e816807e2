"""Tailored non-local games.

Every vertex x owns readable generators ``x/R/i`` and unreadable generators
``x/L/i`` (1-based). Edge constraints map the readable part of an answer to
a list of F2-linear constraints over S_xy ∪ {J}; a constraint is stored as
the set of generator names in its support.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Mapping, Optional, Sequence

J = "J"

Constraint = frozenset  # of generator names, possibly including J
Table = Mapping[tuple[int, ...], tuple[frozenset, ...]]


def readable_name(x: str, i: int) -> str:
    return f"{x}/R/{i}"


def unreadable_name(x: str, i: int) -> str:
    return f"{x}/L/{i}"


@dataclass(frozen=True)
class TailoredGame:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    weights: tuple[Fraction, ...]
    readable: Mapping[str, int]
    unreadable: Mapping[str, int]
    tables: tuple[Table, ...]

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex")
        if any(isinstance(w, float) for w in self.weights):
            raise TypeError("edge weights must be exact rationals")
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != len(self.edges) or any(w < 0 for w in weights) or sum(weights) != 1:
            raise ValueError("edge weights must be a probability distribution")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "readable", MappingProxyType({v: int(self.readable.get(v, 0)) for v in self.vertices}))
        object.__setattr__(self, "unreadable", MappingProxyType({v: int(self.unreadable.get(v, 0)) for v in self.vertices}))
        for x, y in self.edges:
            if x not in vs or y not in vs:
                raise ValueError(f"edge {x} {y} uses an unknown vertex")
            if x == y:
                raise ValueError("self-loops are not supported")
        if len(self.tables) != len(self.edges):
            raise ValueError("one constraint table per edge is required")
        tables = []
        for e, table in enumerate(self.tables):
            k = len(self.edge_readables(e))
            allowed = set(self.edge_generators(e)) | {J}
            fixed = {}
            for key in itertools.product((0, 1), repeat=k):
                if key not in table:
                    raise ValueError(f"edge {e}: no constraints listed for readable answer {key}")
                cons = tuple(frozenset(a) for a in table[key])
                for a in cons:
                    if not a <= allowed:
                        raise ValueError(f"edge {e}: constraint uses {sorted(a - allowed)}")
                fixed[key] = cons
            if len(table) != len(fixed):
                raise ValueError(f"edge {e}: malformed readable answer keys")
            tables.append(MappingProxyType(fixed))
        object.__setattr__(self, "tables", tuple(tables))

    # generator bookkeeping
    def readables(self, x: str) -> list[str]:
        return [readable_name(x, i) for i in range(1, self.readable[x] + 1)]

    def unreadables(self, x: str) -> list[str]:
        return [unreadable_name(x, i) for i in range(1, self.unreadable[x] + 1)]

    def generators(self, x: str) -> list[str]:
        return self.readables(x) + self.unreadables(x)

    def all_generators(self) -> list[str]:
        return [g for x in self.vertices for g in self.generators(x)]

    def owner(self, name: str) -> str:
        return name.rsplit("/", 2)[0]

    def edge_generators(self, e: int) -> list[str]:
        x, y = self.edges[e]
        return self.generators(x) + self.generators(y)

    def edge_readables(self, e: int) -> list[str]:
        x, y = self.edges[e]
        return self.readables(x) + self.readables(y)

    @property
    def max_length(self) -> int:
        return max((self.readable[v] + self.unreadable[v] for v in self.vertices), default=0)

    def vertex_weight(self, x: str) -> Fraction:
        """mu(x) = half the weight of edges at x."""
        return sum((w for (a, b), w in zip(self.edges, self.weights) if x in (a, b)), Fraction(0)) / 2

    def constraints(self, e: int, readable_bits: Sequence[int]) -> tuple[frozenset, ...]:
        return self.tables[e][tuple(readable_bits)]

    def decide(self, e: int, gamma: Mapping[str, int]) -> bool:
        """Extend gamma by J = 1 and check <alpha, gamma> = 0 for each listed alpha."""
        if set(gamma) - {J} != set(self.edge_generators(e)):
            raise ValueError("answer must assign exactly the generators of the edge")
        key = tuple(gamma[X] & 1 for X in self.edge_readables(e))
        for alpha in self.tables[e][key]:
            parity = sum(1 if X == J else gamma[X] for X in alpha) & 1
            if parity:
                return False
        return True


def decision(game: TailoredGame, e: int, gamma: Mapping[str, int]) -> bool:
    return game.decide(e, gamma)


def deterministic_value(game: TailoredGame, f: Mapping[str, int]) -> Fraction:
    """Value of the classical strategy f: S -> F2."""
    return sum(
        (w for e, w in enumerate(game.weights) if game.decide(e, {X: f[X] for X in game.edge_generators(e)})),
        Fraction(0),
    )


def best_deterministic_value(game: TailoredGame) -> tuple[Fraction, dict[str, int]]:
    """Exhaustive search over assignments of one side of a 2-coloring (or all
    generators when the graph is not bipartite); the other side answers optimally."""
    side = _bipartition(game)
    if side is None:
        enum_vertices, free_vertices = list(game.vertices), []
    else:
        a = [v for v in game.vertices if side[v] == 0]
        b = [v for v in game.vertices if side[v] == 1]
        cost = lambda vs: sum(len(game.generators(v)) for v in vs)
        enum_vertices, free_vertices = (a, b) if cost(a) <= cost(b) else (b, a)
    enum_gens = [g for v in enum_vertices for g in game.generators(v)]
    incident = {v: [e for e, xy in enumerate(game.edges) if v in xy] for v in free_vertices}
    best, best_f = Fraction(-1), {}
    for bits in itertools.product((0, 1), repeat=len(enum_gens)):
        f = dict(zip(enum_gens, bits))
        total = sum(
            (w for e, w in enumerate(game.weights) if all(v in enum_vertices for v in game.edges[e])
             and game.decide(e, {X: f[X] for X in game.edge_generators(e)})),
            Fraction(0),
        )
        for v in free_vertices:
            gens = game.generators(v)
            local_best, local_f = Fraction(-1), None
            for vb in itertools.product((0, 1), repeat=len(gens)):
                g = dict(f)
                g.update(zip(gens, vb))
                s = sum(
                    (game.weights[e] for e in incident[v] if game.decide(e, {X: g[X] for X in game.edge_generators(e)})),
                    Fraction(0),
                )
                if s > local_best:
                    local_best, local_f = s, dict(zip(gens, vb))
            total += local_best
            f.update(local_f)
        if total > best:
            best, best_f = total, f
    return best, best_f


def _bipartition(game: TailoredGame) -> Optional[dict[str, int]]:
    side: dict[str, int] = {}
    adj: dict[str, list[str]] = {v: [] for v in game.vertices}
    for x, y in game.edges:
        adj[x].append(y)
        adj[y].append(x)
    for v in game.vertices:
        if v in side:
            continue
        side[v] = 0
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return side


# ------------------------------------------------------------- constructions


def trivial_tailoring(
    vertices: Sequence[str],
    edges: Sequence[tuple[str, str]],
    weights: Sequence[Fraction],
    lengths: Mapping[str, int],
    accept: Sequence[Callable[[tuple[int, ...]], bool]],
) -> TailoredGame:
    """Every answer bit readable; accept -> no constraint, reject -> the constraint {J}."""
    tables = []
    for (x, y), pred in zip(edges, accept):
        k = lengths[x] + lengths[y]
        tables.append({bits: (() if pred(bits) else (frozenset({J}),)) for bits in itertools.product((0, 1), repeat=k)})
    return TailoredGame(tuple(vertices), tuple(edges), tuple(weights), dict(lengths), {}, tuple(tables))


@dataclass(frozen=True)
class LinearSystem:
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def support(self, i: int) -> list[int]:
        return [j for j, v in enumerate(self.A[i]) if v]


def lcs_variable(system: LinearSystem, i: int, j: int) -> str:
    """Name of the copy of variable j held by constraint vertex r_i."""
    return unreadable_name(f"r{i + 1}", system.support(i).index(j) + 1)


def lcs_edge_constraints(system: LinearSystem, i: int, j: int) -> tuple[frozenset, ...]:
    row = [lcs_variable(system, i, k) for k in system.support(i)]
    consistency = frozenset({unreadable_name(f"c{j + 1}", 1), lcs_variable(system, i, j)})
    linear = frozenset(row) | ({J} if system.b[i] & 1 else frozenset())
    return (consistency, frozenset(linear))


def lcs_game(A: Sequence[Sequence[int]], b: Sequence[int]) -> TailoredGame:
    """Constraint-variable game of A x = b over F2: uniform constraint, then a
    uniform variable in its support. All answers unreadable."""
    system = LinearSystem(tuple(tuple(int(v) & 1 for v in row) for row in A), tuple(int(v) & 1 for v in b))
    m, n = len(system.A), len(system.A[0])
    rows = [f"r{i + 1}" for i in range(m)]
    cols = [f"c{j + 1}" for j in range(n)]
    edges, weights, tables = [], [], []
    for i in range(m):
        supp = system.support(i)
        if not supp:
            raise ValueError(f"constraint {i + 1} has empty support")
        for j in supp:
            edges.append((rows[i], cols[j]))
            weights.append(Fraction(1, m * len(supp)))
            tables.append({(): lcs_edge_constraints(system, i, j)})
    unread = {r: len(system.support(i)) for i, r in enumerate(rows)}
    unread.update({c: 1 for c in cols})
    return TailoredGame(tuple(rows + cols), tuple(edges), tuple(weights), {}, unread, tuple(tables))


MAGIC_SQUARE_SYSTEM = LinearSystem(
    A=(
        (1, 1, 1, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 1, 1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 1, 1, 1),
        (1, 0, 0, 1, 0, 0, 1, 0, 0),
        (0, 1, 0, 0, 1, 0, 0, 1, 0),
        (0, 0, 1, 0, 0, 1, 0, 0, 1),
    ),
    b=(0, 0, 0, 0, 0, 1),
)


def magic_square() -> TailoredGame:
    """3x3 cells; rows sum to 0, columns sum to 0 except the last, which sums to 1."""
    return lcs_game(MAGIC_SQUARE_SYSTEM.A, MAGIC_SQUARE_SYSTEM.b)
