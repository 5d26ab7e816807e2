"""Permutation strategies for tailored games.

A permutation strategy sends S ∪ {J} into Sym(2n) with J a fixed-point-free
central involution. It induces a quantum strategy on the J-odd functions
W- = {f : f(J x) = -f(x)}, a space of dimension n. Values are computed
exactly from the Fourier bases of each vertex's elementary abelian action.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .actions import FiniteAction, Perm, compose, identity, orbits
from .games import J, TailoredGame
from .words import Alphabet


def strategy_alphabet(game: TailoredGame) -> Alphabet:
    return Alphabet(game.all_generators() + [J])


def make_strategy(game: TailoredGame, images: Mapping[str, Sequence[int]]) -> FiniteAction:
    return FiniteAction.from_images(images, strategy_alphabet(game))


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str
    witness: Optional[int] = None


def _first_bad(pred, n: int) -> Optional[int]:
    return next((x for x in range(n) if not pred(x)), None)


def validate(sigma: FiniteAction, game: Optional[TailoredGame] = None) -> list[Violation]:
    """All failures of: J fixed-point-free central involution; generators are
    involutions; generators of one vertex commute."""
    out = []
    if J not in sigma.alphabet:
        return [Violation("J", "strategy has no image for J")]
    n = sigma.degree
    j = sigma.image(J)
    x = _first_bad(lambda x: j[j[x]] == x, n)
    if x is not None:
        out.append(Violation("J-involution", "J^2 != Id", x))
    x = _first_bad(lambda x: j[x] != x, n)
    if x is not None:
        out.append(Violation("J-fixed-point-free", "J has a fixed point", x))
    for name, p in zip(sigma.alphabet, sigma.perms):
        if name == J:
            continue
        x = _first_bad(lambda x: p[j[x]] == j[p[x]], n)
        if x is not None:
            out.append(Violation("J-central", f"J does not commute with {name}", x))
        x = _first_bad(lambda x: p[p[x]] == x, n)
        if x is not None:
            out.append(Violation("involution", f"{name}^2 != Id", x))
    if game is not None:
        for v in game.vertices:
            gens = game.generators(v)
            for a in range(len(gens)):
                for b in range(a + 1, len(gens)):
                    p, q = sigma.image(gens[a]), sigma.image(gens[b])
                    x = _first_bad(lambda x: p[q[x]] == q[p[x]], n)
                    if x is not None:
                        out.append(Violation("vertex-commuting", f"{gens[a]} and {gens[b]} do not commute", x))
    return out


def is_valid(sigma: FiniteAction, game: Optional[TailoredGame] = None) -> bool:
    return not validate(sigma, game)


def is_z_aligned(sigma: FiniteAction, game: TailoredGame) -> bool:
    """Every readable generator acts at each point either trivially or as J."""
    j = sigma.image(J)
    for v in game.vertices:
        for X in game.readables(v):
            p = sigma.image(X)
            if any(p[x] != x and p[x] != j[x] for x in range(sigma.degree)):
                return False
    return True


def commutes_along_edges(sigma: FiniteAction, game: TailoredGame) -> bool:
    for e in range(len(game.edges)):
        gens = game.edge_generators(e)
        for a in range(len(gens)):
            p = sigma.image(gens[a])
            for b in range(a + 1, len(gens)):
                q = sigma.image(gens[b])
                if compose(p, q) != compose(q, p):
                    return False
    return True


def classical_strategy(game: TailoredGame, f: Mapping[str, int]) -> FiniteAction:
    """Degree-2 strategy: J swaps the two points, X acts as J^f(X)."""
    swap = (1, 0)
    return make_strategy(game, {**{X: swap if f[X] & 1 else (0, 1) for X in game.all_generators()}, J: swap})


# ---------------------------------------------------------------- Fourier


@dataclass(frozen=True)
class FourierVector:
    """A character of the action of <gens> on one orbit.

    ``signs[k]`` is the value at ``orbit[k]`` (normalization 1/sqrt|orbit|
    left symbolic); ``bits[X]`` is the answer read off it: X acts on the
    vector by (-1)^bits[X].
    """

    orbit: tuple[int, ...]
    signs: tuple[int, ...]
    bits: Mapping[str, int]

    @property
    def odd(self) -> bool:
        return self.bits[J] == 1


def fourier_basis(sigma: FiniteAction, gens: Sequence[str], orbit: Sequence[int]) -> list[FourierVector]:
    """All |orbit| characters; J must be among ``gens``."""
    perms = [sigma.image(g) for g in gens]
    base = min(orbit)
    vec = {base: 0}
    order = [base]
    relations = set()
    for p_ in order:
        for k, p in enumerate(perms):
            q = p[p_]
            cand = vec[p_] ^ (1 << k)
            if q not in vec:
                vec[q] = cand
                order.append(q)
            elif vec[q] != cand:
                relations.add(vec[q] ^ cand)
    if set(vec) != set(orbit):
        raise ValueError("orbit is not closed under the generators")
    for k, p in enumerate(perms):
        for l in range(k, len(perms)):
            q = perms[l]
            if any(p[q[x]] != q[p[x]] for x in orbit) or any(p[p[x]] != x for x in orbit):
                raise ValueError("generators do not act as commuting involutions")
    pts = tuple(sorted(orbit))
    out = []
    for u in range(1 << len(gens)):
        if any(bin(u & r).count("1") & 1 for r in relations):
            continue
        signs = tuple(-1 if bin(u & vec[x]).count("1") & 1 else 1 for x in pts)
        out.append(FourierVector(pts, signs, {g: (u >> k) & 1 for k, g in enumerate(gens)}))
    if len(out) != len(pts):
        raise AssertionError("character count differs from orbit size")
    return out


def vertex_orbits(sigma: FiniteAction, gens: Sequence[str]) -> list[tuple[int, ...]]:
    return orbits([sigma.image(g) for g in gens], sigma.degree)


def odd_basis(sigma: FiniteAction, gens: Sequence[str]) -> list[FourierVector]:
    """The J-odd Fourier vectors over every orbit of <gens, J>: a basis of W-."""
    gens = list(gens) + [J]
    return [v for orb in vertex_orbits(sigma, gens) for v in fourier_basis(sigma, gens, orb) if v.odd]


def _require_playable(sigma: FiniteAction, game: TailoredGame) -> None:
    bad = validate(sigma, game)
    if bad:
        raise ValueError(f"invalid strategy: {bad[0].clause}: {bad[0].detail}")
    if any(game.readable[v] for v in game.vertices) and not is_z_aligned(sigma, game):
        raise ValueError("readable generators must be Z-aligned")


def edge_distribution(game: TailoredGame, sigma: FiniteAction, e: int) -> dict[tuple[int, ...], Fraction]:
    """Law of the answer gamma on edge e (keys follow game.edge_generators(e))."""
    _require_playable(sigma, game)
    return _edge_distribution(game, sigma, e)


def _edge_distribution(game: TailoredGame, sigma: FiniteAction, e: int) -> dict[tuple[int, ...], Fraction]:
    # Pr(v, u) = <v|u>^2 / n for v, u in the odd Fourier bases at x and y
    x, y = game.edges[e]
    n = sigma.degree // 2
    gx, gy = game.generators(x), game.generators(y)
    by_point: dict[int, list[FourierVector]] = {}
    for u in odd_basis(sigma, gy):
        by_point.setdefault(u.orbit[0], []).append(u)
    y_orbit_of = {p: orb for orb in vertex_orbits(sigma, gy + [J]) for p in orb}
    out: dict[tuple[int, ...], Fraction] = {}
    for v in odd_basis(sigma, gx):
        vs = dict(zip(v.orbit, v.signs))
        for oy in {y_orbit_of[p] for p in v.orbit}:
            for u in by_point[oy[0]]:
                overlap = sum(vs[p] * s for p, s in zip(u.orbit, u.signs) if p in vs)
                if not overlap:
                    continue
                prob = Fraction(overlap * overlap, len(v.orbit) * len(u.orbit) * n)
                key = tuple(v.bits[X] for X in gx) + tuple(u.bits[Y] for Y in gy)
                out[key] = out.get(key, Fraction(0)) + prob
    return out


def game_value(game: TailoredGame, sigma: FiniteAction) -> Fraction:
    """Exact value of the quantum strategy induced by sigma."""
    _require_playable(sigma, game)
    total = Fraction(0)
    for e, w in enumerate(game.weights):
        gens = game.edge_generators(e)
        for key, p in _edge_distribution(game, sigma, e).items():
            if game.decide(e, dict(zip(gens, key))):
                total += w * p
    return total


class GammaSampler:
    """Samples answers on an edge: a uniform point, then a Fourier pair (v, u)
    on the orbits through it with probability 2<v|u>^2 / |O_x ∩ O_y|."""

    def __init__(self, game: TailoredGame, sigma: FiniteAction, e: int):
        _require_playable(sigma, game)
        self.game, self.sigma, self.e = game, sigma, e
        x, y = game.edges[e]
        self.gx, self.gy = game.generators(x), game.generators(y)
        self.ox = {p: orb for orb in vertex_orbits(sigma, self.gx + [J]) for p in orb}
        self.oy = {p: orb for orb in vertex_orbits(sigma, self.gy + [J]) for p in orb}
        self._pairs: dict[tuple, tuple[list[tuple[int, ...]], list[int], int]] = {}

    def _table(self, ox, oy):
        key = (ox, oy)
        if key not in self._pairs:
            sig = self.sigma
            vs = [v for v in fourier_basis(sig, self.gx + [J], ox) if v.odd]
            us = [u for u in fourier_basis(sig, self.gy + [J], oy) if u.odd]
            common = sorted(set(ox) & set(oy))
            outcomes, weights = [], []
            for v in vs:
                sv = dict(zip(v.orbit, v.signs))
                for u in us:
                    su = dict(zip(u.orbit, u.signs))
                    ov = sum(sv[p] * su[p] for p in common)
                    if ov:
                        # 2 <v|u>^2 / |common|, scaled to integers by |ox||oy||common|
                        weights.append(2 * ov * ov)
                        outcomes.append(tuple(v.bits[X] for X in self.gx) + tuple(u.bits[Y] for Y in self.gy))
            total = sum(weights)
            if total != len(ox) * len(oy) * len(common):
                raise AssertionError("pair probabilities do not sum to one")
            self._pairs[key] = (outcomes, weights, total)
        return self._pairs[key]

    def sample(self, rng: random.Random) -> tuple[int, ...]:
        p = rng.randrange(self.sigma.degree)
        outcomes, weights, total = self._table(self.ox[p], self.oy[p])
        r = rng.randrange(total)
        for o, w in zip(outcomes, weights):
            if r < w:
                return o
            r -= w
        raise AssertionError("unreachable")


def sample_gamma(game: TailoredGame, sigma: FiniteAction, e: int, seed: int = 0) -> tuple[int, ...]:
    return GammaSampler(game, sigma, e).sample(random.Random(seed))


def linear_check_exact(sigma: FiniteAction, alpha: Mapping[str, int]) -> bool:
    """Whether Pr[<alpha, gamma> = 0] = 1, gamma(J) = 1, for commuting involutions.

    Equivalent to prod rho(X)^alpha(X) = Id on W-, which for permutation
    strategies is the permutation identity sigma(J^alpha(J) prod X^alpha(X)) = Id.
    """
    supp = [X for X, a in alpha.items() if a & 1]
    n = sigma.degree
    j = sigma.image(J)
    if any(j[j[x]] != x or j[x] == x for x in range(n)):
        raise ValueError("J must be a fixed-point-free involution")
    ps = [sigma.image(X) for X in supp]
    for a in range(len(ps)):
        if any(ps[a][ps[a][x]] != x or ps[a][j[x]] != j[ps[a][x]] for x in range(n)):
            raise ValueError(f"{supp[a]} is not an involution commuting with J")
        for b in range(a + 1, len(ps)):
            if compose(ps[a], ps[b]) != compose(ps[b], ps[a]):
                raise ValueError(f"{supp[a]} and {supp[b]} do not commute")
    w = identity(n)
    for p in ps:
        w = compose(p, w)
    return w == identity(n)


# ------------------------------------------------------ magic square strategy


def signed_permutation(matrix: Sequence[Sequence[int]]) -> Perm:
    """Permutation of the 2d points +e_k (k) and -e_k (k + d) induced by a
    signed permutation matrix; J is the sign flip k <-> k + d."""
    d = len(matrix)
    p = [0] * (2 * d)
    for k in range(d):
        col = [(l, matrix[l][k]) for l in range(d) if matrix[l][k]]
        if len(col) != 1 or col[0][1] not in (1, -1):
            raise ValueError("not a signed permutation matrix")
        l, s = col[0]
        p[k] = l if s == 1 else l + d
        p[k + d] = l + d if s == 1 else l
    return tuple(p)


def _kron(a, b):
    return [[a[i // len(b)][j // len(b)] * b[i % len(b)][j % len(b)] for j in range(len(a) * len(b))]
            for i in range(len(a) * len(b))]


_I = [[1, 0], [0, 1]]
_X = [[0, 1], [1, 0]]
_Z = [[1, 0], [0, -1]]
_XZ = [[0, -1], [1, 0]]  # X Z, real


def _neg(m):
    return [[-v for v in row] for row in m]


# cell observables: row products +I, column products +I, +I, -I
MAGIC_SQUARE_OPERATORS = (
    (_neg(_kron(_X, _I)), _neg(_kron(_I, _X)), _kron(_X, _X)),
    (_kron(_I, _Z), _kron(_Z, _I), _kron(_Z, _Z)),
    (_neg(_kron(_X, _Z)), _neg(_kron(_Z, _X)), _neg(_kron(_XZ, _XZ))),
)


def magic_square_strategy(game: TailoredGame) -> FiniteAction:
    """Perfect two-qubit strategy for ``magic_square()`` as signed permutations
    of 8 points; every copy of a cell variable gets that cell's observable."""
    from .games import MAGIC_SQUARE_SYSTEM, lcs_variable, unreadable_name

    system = MAGIC_SQUARE_SYSTEM
    cell = {3 * r + c: signed_permutation(MAGIC_SQUARE_OPERATORS[r][c]) for r in range(3) for c in range(3)}
    images = {J: signed_permutation(_neg(_kron(_I, _I)))}
    for j in range(9):
        images[unreadable_name(f"c{j + 1}", 1)] = cell[j]
    for i in range(len(system.A)):
        for j in system.support(i):
            images[lcs_variable(system, i, j)] = cell[j]
    return make_strategy(game, images)
