"""Finite actions of free groups, their stabilizers, and distances between them."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .words import Alphabet, Word

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    p = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            p[x] = cyc[(i + 1) % len(cyc)]
    return tuple(p)


def is_permutation(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


@dataclass(frozen=True)
class FiniteAction:
    """A homomorphism from the free group on ``alphabet`` to Sym(degree)."""

    alphabet: Alphabet
    perms: tuple[Perm, ...]

    def __post_init__(self) -> None:
        if len(self.perms) != len(self.alphabet):
            raise ValueError("one permutation per generator is required")
        n = len(self.perms[0]) if self.perms else 0
        for name, p in zip(self.alphabet, self.perms):
            if not is_permutation(p, n):
                raise ValueError(f"image of {name} is not a permutation of {n} points")

    @classmethod
    def from_images(cls, images: Mapping[str, Sequence[int]], alphabet: Alphabet | None = None) -> FiniteAction:
        alphabet = alphabet or Alphabet(images)
        return cls(alphabet, tuple(tuple(images[name]) for name in alphabet))

    @property
    def degree(self) -> int:
        return len(self.perms[0]) if self.perms else 0

    @cached_property
    def inverses(self) -> tuple[Perm, ...]:
        return tuple(inverse(p) for p in self.perms)

    def image(self, name: str) -> Perm:
        return self.perms[self.alphabet.index(name)]

    def act(self, w: Word, x: int) -> int:
        """sigma(w).x, reading the word right to left."""
        for g, s in reversed(w.letters):
            x = (self.perms if s == 1 else self.inverses)[g][x]
        return x

    def word_perm(self, w: Word) -> Perm:
        return tuple(self.act(w, x) for x in range(self.degree))

    def fixes(self, w: Word, x: int) -> bool:
        return self.act(w, x) == x

    def with_images(self, updates: Mapping[str, Perm]) -> FiniteAction:
        perms = list(self.perms)
        for name, p in updates.items():
            perms[self.alphabet.index(name)] = tuple(p)
        return FiniteAction(self.alphabet, tuple(perms))


def _check_point(sigma: FiniteAction, x: int) -> None:
    if not 0 <= x < sigma.degree:
        raise ValueError(f"point {x} outside 0..{sigma.degree - 1}")


def act(sigma: FiniteAction, w: Word, x: int) -> int:
    _check_point(sigma, x)
    return sigma.act(w, x)


def stabilizer_window(sigma: FiniteAction, x: int, B: Iterable[Word]) -> frozenset[Word]:
    _check_point(sigma, x)
    return frozenset(w for w in B if sigma.act(w, x) == x)


def orbits(perms: Sequence[Perm], n: int) -> list[tuple[int, ...]]:
    """Orbits of the group generated by ``perms``, each sorted, ordered by minimum."""
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orb = [start]
        for x in orb:
            for p in perms:
                y = p[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(tuple(sorted(orb)))
    return out


def schreier_edges(sigma: FiniteAction) -> list[tuple[int, str, int]]:
    return [(x, name, p[x]) for name, p in zip(sigma.alphabet, sigma.perms) for x in range(sigma.degree)]


def direct_sum(sigma: FiniteAction, tau: FiniteAction) -> FiniteAction:
    if sigma.alphabet != tau.alphabet:
        raise ValueError("alphabets differ")
    n = sigma.degree
    return FiniteAction(
        sigma.alphabet,
        tuple(p + tuple(n + y for y in q) for p, q in zip(sigma.perms, tau.perms)),
    )


def conjugate_action(sigma: FiniteAction, theta: Perm) -> FiniteAction:
    """x -> theta sigma(x) theta^-1."""
    ti = inverse(theta)
    return FiniteAction(sigma.alphabet, tuple(compose(theta, compose(p, ti)) for p in sigma.perms))


# ---------------------------------------------------------------- distances


def hamming(zeta: Sequence[int], tau: Sequence[int]) -> Fraction:
    """Normalized Hamming distance with errors.

    The smaller permutation counts as undefined (a disagreement) on the
    points it does not cover.
    """
    if len(zeta) > len(tau):
        zeta, tau = tau, zeta
    if not tau:
        return Fraction(0)
    agree = sum(1 for x in range(len(zeta)) if zeta[x] == tau[x])
    return 1 - Fraction(agree, len(tau))


@dataclass(frozen=True)
class SignificanceFunction:
    """Nonnegative rational weights on generators.

    Weights are meant to be positive; generators of weight zero are kept
    (they contribute nothing to distances) and listed by ``zero_generators``.
    """

    weights: Mapping[str, Fraction]

    def __post_init__(self) -> None:
        clean = {}
        for name, w in self.weights.items():
            if isinstance(w, float):
                raise TypeError("weights must be exact rationals")
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight for {name}")
            clean[name] = w
        object.__setattr__(self, "weights", MappingProxyType(clean))

    def __getitem__(self, name: str) -> Fraction:
        return self.weights[name]

    @property
    def zero_generators(self) -> tuple[str, ...]:
        return tuple(n for n, w in self.weights.items() if w == 0)

    @property
    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


def _weights(sigma: FiniteAction, weights) -> list[Fraction]:
    if weights is None:
        return [Fraction(1)] * len(sigma.alphabet)
    table = weights.weights if isinstance(weights, SignificanceFunction) else weights
    return [Fraction(table.get(name, 0)) for name in sigma.alphabet]


def weighted_distance(sigma: FiniteAction, phi: FiniteAction, weights=None) -> Fraction:
    """sum_s weight(s) * hamming(sigma(s), phi(s))."""
    if sigma.alphabet != phi.alphabet:
        raise ValueError("alphabets differ")
    return sum(
        (w * hamming(p, q) for w, p, q in zip(_weights(sigma, weights), sigma.perms, phi.perms) if w),
        Fraction(0),
    )


EXACT_EDIT_LIMIT = 8


def edit_distance_exact(sigma: FiniteAction, phi: FiniteAction, weights=None) -> Fraction:
    """min over theta in Sym(Y) of the weighted distance to the theta-conjugate
    of the larger action (Y its point set). Exhaustive; degree <= 8."""
    if sigma.degree > phi.degree:
        sigma, phi = phi, sigma
    n = phi.degree
    if n > EXACT_EDIT_LIMIT:
        raise ValueError(f"exact edit distance is limited to degree {EXACT_EDIT_LIMIT}")
    ws = _weights(sigma, weights)
    m = sigma.degree
    best = None
    for theta in itertools.permutations(range(n)):
        ti = inverse(theta)
        total = Fraction(0)
        for w, p, q in zip(ws, sigma.perms, phi.perms):
            if not w:
                continue
            agree = sum(1 for x in range(m) if p[x] == theta[q[ti[x]]])
            total += w * (1 - Fraction(agree, n))
            if best is not None and total >= best:
                break
        if best is None or total < best:
            best = total
    return best


def _greedy_matching(sigma: FiniteAction, phi: FiniteAction, seed_pairs: Sequence[tuple[int, int]]) -> Perm:
    """theta^-1 for a relabelling grown along Schreier edges from the seed pairs.

    Maps each point x of sigma to a point of phi; leftover points of phi fill
    the padding positions.
    """
    m, n = sigma.degree, phi.degree
    steps = list(zip(sigma.perms, phi.perms)) + list(zip(sigma.inverses, phi.inverses))
    pi: dict[int, int] = {}
    used: set[int] = set()

    def grow(x: int, y: int) -> None:
        pi[x] = y
        used.add(y)
        queue = [(x, y)]
        for px, py in queue:
            for p, q in steps:
                a, b = p[px], q[py]
                if a not in pi and b not in used:
                    pi[a] = b
                    used.add(b)
                    queue.append((a, b))

    for x, y in seed_pairs:
        if x not in pi and y not in used:
            grow(x, y)
    for x in range(m):
        if x not in pi:
            grow(x, next(y for y in range(n) if y not in used))
    rest = [y for y in range(n) if y not in used]
    return tuple(pi[x] for x in range(m)) + tuple(rest)


def edit_distance_upper(
    sigma: FiniteAction, phi: FiniteAction, weights=None, restarts: int = 8, seed: int = 0
) -> Fraction:
    """Upper bound on the edit distance from greedy Schreier-graph matchings.

    Every candidate is the distance to an actual conjugate, so the result
    never undercuts the exact value; the identity relabelling is always tried.
    """
    if sigma.degree > phi.degree:
        sigma, phi = phi, sigma
    rng = random.Random(seed)
    m, n = sigma.degree, phi.degree
    best = weighted_distance(sigma, phi, weights)
    seeds = [[(0, y)] for y in range(min(n, restarts))] if m else []
    for _ in range(restarts):
        if m:
            seeds.append([(rng.randrange(m), rng.randrange(n))])
    for sp in seeds:
        theta_inv = _greedy_matching(sigma, phi, sp)  # x in sigma's points -> phi point
        theta = inverse(theta_inv)
        d = weighted_distance(sigma, conjugate_action(phi, theta), weights)
        best = min(best, d)
    return best


# -------------------------------------------------------------- enumeration


def canonical_form(perms: Sequence[Perm], n: int) -> tuple[Perm, ...]:
    """Representative of the simultaneous-conjugacy class of ``perms``.

    Each orbit is relabelled breadth-first from every possible start point and
    the smallest code kept; orbits are then sorted and laid out consecutively.
    """
    comps = []
    for orb in orbits(perms, n):
        best = None
        for r in orb:
            label = {r: 0}
            order = [r]
            for u in order:
                for p in perms:
                    v = p[u]
                    if v not in label:
                        label[v] = len(order)
                        order.append(v)
            code = tuple(tuple(label[p[u]] for u in order) for p in perms)
            if best is None or code < best:
                best = code
        comps.append((len(orb), best))
    comps.sort()
    out = [[] for _ in perms]
    offset = 0
    for size, code in comps:
        for k, images in enumerate(code):
            out[k].extend(offset + y for y in images)
        offset += size
    return tuple(tuple(p) for p in out)


def is_canonical(perms: Sequence[Perm], n: int) -> bool:
    return tuple(perms) == canonical_form(perms, n)


def canonical_actions(alphabet: Alphabet, n: int) -> Iterator[FiniteAction]:
    """All actions of degree n up to simultaneous conjugation, in lexicographic order."""
    all_perms = list(itertools.permutations(range(n)))
    for combo in itertools.product(all_perms, repeat=len(alphabet)):
        if is_canonical(combo, n):
            yield FiniteAction(alphabet, tuple(combo))


def random_action(alphabet: Alphabet, n: int, rng: random.Random) -> FiniteAction:
    perms = []
    for _ in alphabet:
        p = list(range(n))
        rng.shuffle(p)
        perms.append(tuple(p))
    return FiniteAction(alphabet, tuple(perms))


EXHAUSTIVE_DEGREE = 5


def enumerate_actions(
    alphabet: Alphabet,
    max_degree: int,
    budget: int,
    objective: Optional[Callable[[FiniteAction], Fraction]] = None,
    seed: int = 0,
    climb_steps: int = 40,
) -> Iterator[FiniteAction]:
    """Stream at most ``budget`` actions.

    Degrees up to 5 are enumerated exhaustively up to conjugation. Beyond
    that, random restarts of a hill climb (single transposition applied to one
    generator image) run at larger degrees; without an objective every move
    is accepted.
    """
    count = 0
    for n in range(1, min(max_degree, EXHAUSTIVE_DEGREE) + 1):
        for sigma in canonical_actions(alphabet, n):
            if count >= budget:
                return
            count += 1
            yield sigma
    if max_degree <= EXHAUSTIVE_DEGREE or not len(alphabet):
        return
    rng = random.Random(seed)
    while count < budget:
        n = rng.randint(EXHAUSTIVE_DEGREE + 1, max_degree)
        current = random_action(alphabet, n, rng)
        count += 1
        yield current
        score = objective(current) if objective else None
        for _ in range(climb_steps):
            if count >= budget:
                return
            k = rng.randrange(len(alphabet))
            i, j = rng.sample(range(n), 2)
            p = list(current.perms[k])
            p[i], p[j] = p[j], p[i]
            perms = list(current.perms)
            perms[k] = tuple(p)
            cand = FiniteAction(alphabet, tuple(perms))
            count += 1
            yield cand
            if objective is None:
                current = cand
            else:
                s = objective(cand)
                if s >= score:
                    current, score = cand, s
