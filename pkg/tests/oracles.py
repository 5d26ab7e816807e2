"""Independent reference computations used to cross-check the package.

Nothing here imports the algorithms under test; words are plain tuples of
(generator, sign) letters and permutations are plain tuples.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np


# ------------------------------------------------------------ naive folding


def naive_core(words, rng: random.Random | None = None):
    """Fold the bouquet of ``words`` by repeated quadratic scans.

    Returns (edges, basepoint) with edges a set of (u, gen, v) meaning u --gen--> v.
    The next fold is picked at random when ``rng`` is given.
    """
    edges = set()
    fresh = itertools.count(1)
    for w in words:
        if not w:
            continue
        u = 0
        for k, (g, e) in enumerate(w):
            v = 0 if k == len(w) - 1 else next(fresh)
            edges.add((u, g, v) if e == 1 else (v, g, u))
            u = v
    while True:
        folds = []
        for a, b in itertools.combinations(sorted(edges), 2):
            if a[1] != b[1]:
                continue
            if a[0] == b[0] and a[2] != b[2]:
                folds.append((a[2], b[2]))
            elif a[2] == b[2] and a[0] != b[0]:
                folds.append((a[0], b[0]))
        if not folds:
            return edges, 0
        x, y = rng.choice(folds) if rng else folds[0]
        keep, drop = (x, y) if x == 0 or (y != 0 and x < y) else (y, x)
        edges = {(keep if u == drop else u, g, keep if v == drop else v) for u, g, v in edges}


def naive_member(edges, w) -> bool:
    u = 0
    for g, e in w:
        nxt = [b for a, h, b in edges if a == u and h == g] if e == 1 else [a for a, h, b in edges if b == u and h == g]
        if not nxt:
            return False
        u = nxt[0]
    return u == 0


def naive_pseudo(A, B, rng: random.Random | None = None) -> bool:
    """<A> n B == A, by membership of every element of B."""
    edges, _ = naive_core([tuple(w.letters) for w in A], rng)
    return all(naive_member(edges, tuple(w.letters)) == (w in A) for w in B)


# ---------------------------------------------------------- permutations


def perm_mul(p, q):
    """p after q."""
    return tuple(p[q[x]] for x in range(len(q)))


def perm_inv(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def conjugacy_class_count(n_gens: int, n: int) -> int:
    """Number of orbits of Sym(n) on n_gens-tuples by simultaneous conjugation."""
    perms = list(itertools.permutations(range(n)))
    seen = set()
    classes = 0
    for tup in itertools.product(perms, repeat=n_gens):
        if tup in seen:
            continue
        classes += 1
        for t in perms:
            ti = perm_inv(t)
            seen.add(tuple(perm_mul(t, perm_mul(p, ti)) for p in tup))
    return classes


def brute_edit_distance(sigma_perms, phi_perms, weights) -> Fraction:
    """min over theta of sum_s w(s) d_H(sigma(s), theta phi(s) theta^-1), equal degrees."""
    n = len(phi_perms[0])
    best = None
    for t in itertools.permutations(range(n)):
        ti = perm_inv(t)
        d = Fraction(0)
        for w, p, q in zip(weights, sigma_perms, phi_perms):
            c = perm_mul(t, perm_mul(q, ti))
            d += w * Fraction(sum(p[x] != c[x] for x in range(n)), n)
        best = d if best is None else min(best, d)
    return best


# ------------------------------------------------------------ Born rule


def perm_matrix(p) -> np.ndarray:
    n = len(p)
    m = np.zeros((n, n), dtype=np.int64)
    for x, y in enumerate(p):
        m[y, x] = 1
    return m


def _joint_projections(mats, j):
    """Unnormalized projections 2^(k+1) P_a onto the joint eigenspaces of
    commuting involutions ``mats`` inside the J-odd subspace."""
    n = j.shape[0]
    eye = np.eye(n, dtype=np.int64)
    out = {}
    for bits in itertools.product((0, 1), repeat=len(mats)):
        P = eye - j
        for b, m in zip(bits, mats):
            P = P @ (eye + (-1) ** b * m)
        out[bits] = P
    return out


def born_edge_distribution(images: dict, gx, gy, j_name="J") -> dict:
    """Pr[gamma = (a, b)] = tau(P_a Q_b) with tau the normalized trace on W-."""
    j = perm_matrix(images[j_name])
    half = j.shape[0] // 2
    Px = _joint_projections([perm_matrix(images[X]) for X in gx], j)
    Qy = _joint_projections([perm_matrix(images[Y]) for Y in gy], j)
    scale = 2 ** (len(gx) + 1) * 2 ** (len(gy) + 1) * half
    out = {}
    for a, P in Px.items():
        for b, Q in Qy.items():
            tr = int(np.trace(P @ Q))
            if tr:
                out[a + b] = Fraction(tr, scale)
    return out


def born_game_value(game, images: dict) -> Fraction:
    total = Fraction(0)
    for e, (x, y) in enumerate(game.edges):
        gx, gy = game.generators(x), game.generators(y)
        for key, p in born_edge_distribution(images, gx, gy).items():
            if game.decide(e, dict(zip(gx + gy, key))):
                total += game.weights[e] * p
    return total


def parity_probability(images: dict, alpha: dict, j_name="J") -> Fraction:
    """Pr[sum alpha(X) gamma(X) = 0] with gamma(J) = 1, for commuting involutions."""
    gens = [X for X, a in alpha.items() if a & 1 and X != j_name]
    j = perm_matrix(images[j_name])
    half = j.shape[0] // 2
    total = Fraction(0)
    for bits, P in _joint_projections([perm_matrix(images[X]) for X in gens], j).items():
        parity = (sum(bits) + (alpha.get(j_name, 0) & 1)) & 1
        if parity == 0:
            total += Fraction(int(np.trace(P)), 2 ** (len(gens) + 1) * half)
    return total


# ------------------------------------------------------------ magic square


def magic_square_classical_optimum(A, b) -> Fraction:
    """Best classical value of the LCS game with uniform row then uniform column.

    For every global column assignment, each row player answers with the best
    satisfying assignment of the row's variables.
    """
    m, n = len(A), len(A[0])
    best = Fraction(0)
    for f in itertools.product((0, 1), repeat=n):
        total = Fraction(0)
        for i in range(m):
            supp = [j for j in range(n) if A[i][j]]
            row_best = Fraction(0)
            for ans in itertools.product((0, 1), repeat=len(supp)):
                if sum(ans) % 2 != b[i]:
                    continue
                row_best = max(row_best, Fraction(sum(a == f[j] for a, j in zip(ans, supp)), len(supp)))
            total += row_best
        best = max(best, total / m)
    return best


# ------------------------------------------------------------ linear algebra


def in_row_span(rows, target) -> bool:
    """Whether the sparse rational vector ``target`` is a combination of ``rows``."""
    basis: dict = {}  # pivot column -> row with 1 at the pivot, reduced against earlier pivots

    def reduce(v):
        v = {k: Fraction(c) for k, c in v.items() if c}
        for p, r in basis.items():
            c = v.get(p)
            if c:
                for k, rc in r.items():
                    v[k] = v.get(k, 0) - c * rc
                    if not v[k]:
                        del v[k]
        return v

    for row in rows:
        v = reduce(row)
        if v:
            p = min(v)
            inv = 1 / v[p]
            v = {k: c * inv for k, c in v.items()}
            for q, r in basis.items():
                c = r.get(p)
                if c:
                    for k, vc in v.items():
                        r[k] = r.get(k, 0) - c * vc
                        if not r[k]:
                            del r[k]
            basis[p] = v
    return not reduce(target)
