"""Random instances for experiments and property tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional, Sequence

from .actions import FiniteAction, Perm, compose, identity, inverse
from .games import J, TailoredGame
from .strategies import make_strategy
from .subgroup_tests import SubgroupTest, TableChallenge
from .words import Alphabet, Word, ball


def random_word(alphabet: Alphabet, rng: random.Random, max_len: int) -> Word:
    letters = [(rng.randrange(len(alphabet)), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]
    return Word(letters)


def random_words(alphabet: Alphabet, rng: random.Random, count: int, max_len: int) -> list[Word]:
    out: set[Word] = set()
    pool = ball(alphabet, max_len)
    count = min(count, len(pool))
    while len(out) < count:
        out.add(rng.choice(pool))
    return sorted(out)


def random_test(
    alphabet: Alphabet, rng: random.Random, n_challenges: int = 2, window_size: int = 2, max_len: int = 2
) -> SubgroupTest:
    """Challenges with random windows and random accepted families."""
    challenges = []
    for _ in range(n_challenges):
        K = random_words(alphabet, rng, window_size, max_len)
        subsets = [frozenset(c) for r in range(len(K) + 1) for c in itertools.combinations(K, r)]
        accepted = [s for s in subsets if rng.random() < 0.5]
        challenges.append(TableChallenge(K, accepted))
    raw = [rng.randint(1, 4) for _ in range(n_challenges)]
    weights = tuple(Fraction(r, sum(raw)) for r in raw)
    return SubgroupTest(alphabet, tuple(challenges), weights)


# --------------------------------------------------------- signed permutations
# A signed permutation on n coordinates is a permutation of 2n points:
# point k is +e_k and point k + n is -e_k; J swaps k and k + n.


def sign_flip(n: int) -> Perm:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def signed_perm(n: int, pi: Sequence[int], signs: Sequence[int]) -> Perm:
    p = [0] * (2 * n)
    for k in range(n):
        if signs[k] == 1:
            p[k], p[k + n] = pi[k], pi[k] + n
        else:
            p[k], p[k + n] = pi[k] + n, pi[k]
    return tuple(p)


def diagonal(n: int, signs: Sequence[int]) -> Perm:
    return signed_perm(n, range(n), signs)


def random_signed_on(n: int, block: Sequence[int], rng: random.Random) -> Perm:
    pi = list(range(n))
    targets = list(block)
    rng.shuffle(targets)
    for k, t in zip(block, targets):
        pi[k] = t
    signs = [rng.choice((1, -1)) if k in block else 1 for k in range(n)]
    return signed_perm(n, pi, signs)


def random_valid_strategy(game: TailoredGame, n: int, rng: random.Random) -> FiniteAction:
    """A valid Z-aligned strategy of degree 2n.

    Readables are random diagonal sign matrices. Unreadables are conjugates
    g D g^-1 of diagonal sign matrices by a signed permutation g acting inside
    each common eigenspace of the readables, so everything at a vertex commutes.
    """
    images: dict[str, Perm] = {J: sign_flip(n)}
    for v in game.vertices:
        pattern: dict[int, tuple] = {k: () for k in range(n)}
        for X in game.readables(v):
            signs = [rng.choice((1, -1)) for _ in range(n)]
            images[X] = diagonal(n, signs)
            for k in range(n):
                pattern[k] += (signs[k],)
        blocks: dict[tuple, list[int]] = {}
        for k, pat in pattern.items():
            blocks.setdefault(pat, []).append(k)
        g = identity(2 * n)
        for block in blocks.values():
            g = compose(random_signed_on(n, block, rng), g)
        gi = inverse(g)
        for X in game.unreadables(v):
            D = diagonal(n, [rng.choice((1, -1)) for _ in range(n)])
            images[X] = compose(g, compose(D, gi))
    return make_strategy(game, images)


def random_game(
    rng: random.Random,
    n_vertices: int = 3,
    max_length: int = 2,
    n_edges: Optional[int] = None,
    readable_probability: float = 0.5,
    max_constraints: int = 2,
) -> TailoredGame:
    vertices = [f"v{i + 1}" for i in range(n_vertices)]
    pairs = [(a, b) for a, b in itertools.combinations(vertices, 2)]
    rng.shuffle(pairs)
    k = n_edges or rng.randint(1, len(pairs))
    edges = [p if rng.random() < 0.5 else (p[1], p[0]) for p in pairs[:k]]
    raw = [rng.randint(1, 3) for _ in edges]
    weights = [Fraction(r, sum(raw)) for r in raw]
    readable, unreadable = {}, {}
    for v in vertices:
        total = rng.randint(1, max_length)
        r = sum(rng.random() < readable_probability for _ in range(total))
        readable[v], unreadable[v] = r, total - r
    tables = []
    for x, y in edges:
        gens = [f"{x}/R/{i}" for i in range(1, readable[x] + 1)] + [f"{x}/L/{i}" for i in range(1, unreadable[x] + 1)]
        gens += [f"{y}/R/{i}" for i in range(1, readable[y] + 1)] + [f"{y}/L/{i}" for i in range(1, unreadable[y] + 1)]
        gens.append(J)
        table = {}
        for key in itertools.product((0, 1), repeat=readable[x] + readable[y]):
            cons = []
            for _ in range(rng.randint(0, max_constraints)):
                cons.append(frozenset(g for g in gens if rng.random() < 0.4))
            table[key] = tuple(cons)
        tables.append(table)
    return TailoredGame(tuple(vertices), tuple(edges), tuple(weights), readable, unreadable, tuple(tables))


def corrupt(sigma: FiniteAction, rng: random.Random, p: float, names: Optional[Sequence[str]] = None) -> FiniteAction:
    """Shuffle the images of about a fraction p of the points of each chosen generator."""
    n = sigma.degree
    names = list(sigma.alphabet) if names is None else list(names)
    updates = {}
    for name in names:
        img = list(sigma.image(name))
        pts = [x for x in range(n) if rng.random() < p]
        vals = [img[x] for x in pts]
        rng.shuffle(vals)
        for x, v in zip(pts, vals):
            img[x] = v
        updates[name] = tuple(img)
    return sigma.with_images(updates)


def random_commuting_tuple(rng: random.Random, n: int, k: int) -> FiniteAction:
    """J plus k commuting involutions g D_i g^-1 on 2n points; some D_i are
    (plus or minus) products of earlier ones, so identity words occur."""
    alphabet = Alphabet([f"X{i + 1}" for i in range(k)] + [J])
    everything = list(range(n))
    g = random_signed_on(n, everything, rng)
    gi = inverse(g)
    diags: list[list[int]] = []
    for i in range(k):
        if i >= 2 and rng.random() < 0.5:
            a, b = rng.sample(range(i), 2)
            sign = rng.choice((1, -1))
            diags.append([sign * s * t for s, t in zip(diags[a], diags[b])])
        else:
            diags.append([rng.choice((1, -1)) for _ in range(n)])
    perms = [compose(g, compose(diagonal(n, d), gi)) for d in diags] + [sign_flip(n)]
    return FiniteAction(alphabet, tuple(perms))
