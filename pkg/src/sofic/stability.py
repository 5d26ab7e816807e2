"""Rounding an almost-valid permutation strategy to a valid, Z-aligned one.

Each step moves every generator by a Hamming distance controlled by how
often the compiled test rejects; ``round_to_valid`` records the movement and
the corresponding bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .actions import FiniteAction, Perm, compose, hamming, identity, orbits
from .games import J, TailoredGame
from .strategies import strategy_alphabet

ROUNDING_CONSTANT = 370  # C0


def fix_involution(zeta: Perm) -> Perm:
    """tau = zeta on W = {x : zeta^2 x = x}, identity elsewhere.

    W is zeta-invariant, so tau is an involution and
    hamming(zeta, tau) = hamming(zeta^2, Id).
    """
    return tuple(zeta[x] if zeta[zeta[x]] == x else x for x in range(len(zeta)))


def fix_fixed_point_free(tau: Perm) -> Perm:
    """Pair up the fixed points of an involution (adding one point when the
    degree is odd), giving a fixed-point-free involution of degree 2*ceil(n/2)."""
    n = len(tau)
    m = n + (n & 1)
    out = list(tau) + list(range(n, m))
    fixed = [x for x in range(m) if out[x] == x]
    for a, b in zip(fixed[::2], fixed[1::2]):
        out[a], out[b] = b, a
    return tuple(out)


def fix_commuting(tau: Perm, zeta: Perm) -> Perm:
    """tau on W = {x : zeta tau x = tau zeta x}, identity elsewhere.

    For involutions tau and zeta, W is invariant under both, so the result is
    an involution commuting with zeta.
    """
    return tuple(tau[x] if zeta[tau[x]] == tau[zeta[x]] else x for x in range(len(tau)))


def _power_product(perms: Sequence[Perm], xi: Sequence[int], n: int) -> Perm:
    out = identity(n)
    for p, b in zip(perms, xi):
        if b:
            out = compose(out, p)
    return out


def fix_group_action(perms: Sequence[Perm], extra: Sequence[Perm] = ()) -> list[Perm]:
    """Turn almost-commuting involutions into an action of F2^k.

    A point is good when f(g + h) x = f(g) f(h) x for all g, h, with
    f(xi) = prod_i perms[i]^xi_i. Generators keep their images on orbits of
    <perms, extra> made only of good points and become the identity on the rest.
    """
    k = len(perms)
    if not k:
        return []
    n = len(perms[0])
    group = list(itertools.product((0, 1), repeat=k))
    f = {g: _power_product(perms, g, n) for g in group}
    bad = set()
    for g in group:
        for h in group:
            gh = tuple(a ^ b for a, b in zip(g, h))
            lhs, rhs = f[gh], compose(f[g], f[h])
            bad.update(x for x in range(n) if lhs[x] != rhs[x])
    if not bad:
        return list(perms)
    reset = {x for orb in orbits(list(perms) + list(extra), n) if bad & set(orb) for x in orb}
    return [tuple(x if x in reset else p[x] for x in range(n)) for p in perms]


@dataclass
class RoundingResult:
    strategy: FiniteAction
    displacement: dict[str, Fraction]
    bounds: dict[str, Fraction]
    eps: Fraction
    eps_x: dict[str, Fraction]

    @property
    def violations(self) -> list[str]:
        return [g for g, d in self.displacement.items() if d > self.bounds[g]]


def round_to_valid(sigma: FiniteAction, game: TailoredGame, eps_x: Mapping[str, Fraction]) -> RoundingResult:
    """Round sigma to a valid Z-aligned strategy; report per-generator movement
    against C0 eps (for J) and C0 4^Lambda Lambda^3 (eps + eps_x) (for x's generators)."""
    if sigma.alphabet != strategy_alphabet(game):
        raise ValueError("strategy alphabet does not match the game")
    n = sigma.degree
    images = {name: tuple(p) for name, p in zip(sigma.alphabet, sigma.perms)}

    j = fix_involution(images[J])
    j = fix_fixed_point_free(j)
    m = len(j)
    pad = tuple(range(n, m))
    gens = game.all_generators()
    cur = {X: fix_commuting(fix_involution(images[X]) + pad, j) for X in gens}

    for v in game.vertices:
        sx = game.generators(v)
        for X, p in zip(sx, fix_group_action([cur[X] for X in sx], [j])):
            cur[X] = p
        readable = game.readables(v)
        if not readable or not sx:
            continue
        for orb in orbits([cur[X] for X in sx] + [j], m):
            aligned = all(cur[X][x] in (x, j[x]) for X in readable for x in orb)
            if not aligned:
                for X in sx:
                    p = list(cur[X])
                    for x in orb:
                        p[x] = x
                    cur[X] = tuple(p)

    cur[J] = j
    rounded = FiniteAction(sigma.alphabet, tuple(cur[name] for name in sigma.alphabet))
    eps_x = {v: Fraction(eps_x[v]) for v in game.vertices}
    eps = sum((game.vertex_weight(v) * eps_x[v] for v in game.vertices), Fraction(0))
    lam = game.max_length
    disp = {name: hamming(images[name], cur[name]) for name in sigma.alphabet}
    bounds = {J: ROUNDING_CONSTANT * eps}
    for v in game.vertices:
        for X in game.generators(v):
            bounds[X] = ROUNDING_CONSTANT * 4**lam * lam**3 * (eps + eps_x[v])
    return RoundingResult(rounded, disp, bounds, eps, eps_x)
