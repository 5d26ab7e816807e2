"""Outer bounds from pseudo-IRS polytopes, inner bounds from finite actions,
and the sandwich loop that runs both.

A window distribution is stored as a vector indexed by bitmasks over the
sorted window: bit i set means window[i] lies in the subset.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .actions import FiniteAction, enumerate_actions
from .simplex import maximize
from .stallings import is_pseudo_subgroup, quick_refute
from .subgroup_tests import SubgroupTest, value_against_action
from .words import Alphabet, Word, ball, conjugate

log = logging.getLogger(__name__)

WINDOW_CAP = 14


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass
class PseudoIrsPolytope:
    alphabet: Alphabet
    window: tuple[Word, ...]
    pseudo: tuple[bool, ...]  # indexed by mask
    witnesses: dict[int, Word]  # non-pseudo mask -> element of (<A> n B) \ A
    invariance: list[tuple[str, dict[int, int]]]  # (generator, sparse row over masks), rhs 0

    @property
    def size(self) -> int:
        return len(self.window)

    def subset(self, mask: int) -> frozenset[Word]:
        return frozenset(w for i, w in enumerate(self.window) if mask >> i & 1)

    def mask(self, A: Iterable[Word]) -> int:
        idx = {w: i for i, w in enumerate(self.window)}
        m = 0
        for w in A:
            m |= 1 << idx[w]
        return m

    def atom_vector(self, sigma: FiniteAction) -> dict[int, Fraction]:
        """Law of Stab(sigma, x) n B for uniform x."""
        counts: dict[int, int] = {}
        for x in range(sigma.degree):
            m = 0
            for i, w in enumerate(self.window):
                if sigma.act(w, x) == x:
                    m |= 1 << i
            counts[m] = counts.get(m, 0) + 1
        return {m: Fraction(k, sigma.degree) for m, k in counts.items()}

    def violations(self, pi: Mapping[int, Fraction]) -> list[str]:
        out = []
        if any(p < 0 for p in pi.values()):
            out.append("negative mass")
        if sum(pi.values(), Fraction(0)) != 1:
            out.append("total mass differs from 1")
        for m, p in pi.items():
            if p and not self.pseudo[m]:
                out.append(f"mass on non-pseudo atom {m}")
        for name, row in self.invariance:
            if sum((c * pi.get(m, 0) for m, c in row.items()), Fraction(0)) != 0:
                out.append(f"invariance under {name} fails")
        return out


def build_polytope(B: Iterable[Word], alphabet: Alphabet, cap: int = WINDOW_CAP) -> PseudoIrsPolytope:
    window = tuple(sorted(set(B)))
    k = len(window)
    if k > cap:
        raise ResourceCapExceeded(f"window of size {k} exceeds the cap {cap} (2^{k} atoms)")
    log.info("polytope over %d words: %d atoms, about %d KiB of rows", k, 1 << k, (1 << k) * k // 8)
    Bset = frozenset(window)
    pseudo = []
    witnesses = {}
    for m in range(1 << k):
        A = frozenset(w for i, w in enumerate(window) if m >> i & 1)
        wit = quick_refute(A, Bset)
        if wit is None:
            v = is_pseudo_subgroup(A, Bset)
            wit = v.witness
        pseudo.append(wit is None)
        if wit is not None:
            witnesses[m] = wit

    idx = {w: i for i, w in enumerate(window)}
    invariance = []
    for g, name in enumerate(alphabet):
        s = (g, 1)
        # B_s = {w in B : s w s^-1 in B}; c maps positions of B_s to positions of its conjugate
        pairs = [(i, idx.get(conjugate(s, w))) for i, w in enumerate(window)]
        pairs = [(i, j) for i, j in pairs if j is not None]
        if all(i == j for i, j in pairs):
            continue
        dom = sum(1 << i for i, _ in pairs)
        rows: dict[int, dict[int, int]] = {}
        for m in range(1 << k):
            key1 = m & dom
            key2 = 0
            for i, j in pairs:
                if m >> j & 1:
                    key2 |= 1 << i
            if key1 == key2:
                continue
            rows.setdefault(key1, {}).setdefault(m, 0)
            rows[key1][m] += 1
            rows.setdefault(key2, {}).setdefault(m, 0)
            rows[key2][m] -= 1
        for key in sorted(rows):
            row = {m: c for m, c in rows[key].items() if c}
            if row:
                invariance.append((name, row))
    return PseudoIrsPolytope(alphabet, window, tuple(pseudo), witnesses, invariance)


@dataclass
class UpperBound:
    value: Fraction
    window_size: int
    lp_iterations: int
    n_variables: int
    n_rows: int
    distribution: dict[int, Fraction]


def _presolve(variables: set[int], rows: list[dict[int, int]]) -> list[dict[int, int]]:
    """Drop pinned variables; a zero-rhs row whose live coefficients share a sign
    forces them all to zero. Returns the surviving distinct rows."""
    changed = True
    while changed:
        changed = False
        live_rows = []
        for row in rows:
            r = {m: c for m, c in row.items() if m in variables}
            if not r:
                continue
            if all(c > 0 for c in r.values()) or all(c < 0 for c in r.values()):
                variables.difference_update(r)
                changed = True
                continue
            live_rows.append(r)
        rows = live_rows
    seen = set()
    out = []
    for r in rows:
        key = tuple(sorted(r.items()))
        neg = tuple(sorted((m, -c) for m, c in r.items()))
        if key in seen or neg in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def solve_upper_bound(
    T: SubgroupTest,
    B: Iterable[Word],
    cap: int = WINDOW_CAP,
    row_seed: Optional[int] = None,
    float_presolve: bool = True,
) -> UpperBound:
    """max over the pseudo-IRS polytope on B of the expected acceptance."""
    B = set(B)
    if not T.window_union() <= B:
        raise ValueError("B must contain every challenge window")
    P = build_polytope(B, T.alphabet, cap)
    variables = {m for m in range(1 << P.size) if P.pseudo[m]}
    rows = _presolve(variables, [dict(r) for _, r in P.invariance])
    if row_seed is not None:
        random.Random(row_seed).shuffle(rows)
    order = sorted(variables)
    col = {m: j for j, m in enumerate(order)}
    c = [T.atom_value(P.subset(m)) for m in order]
    lp_rows = [{col[m]: Fraction(v) for m, v in r.items()} for r in rows]
    lp_rows.append({j: Fraction(1) for j in range(len(order))})
    rhs = [Fraction(0)] * (len(lp_rows) - 1) + [Fraction(1)]
    if len(set(c)) == 1:  # constant objective: any feasible point is optimal
        res = maximize([Fraction(0)] * len(order), lp_rows, rhs, float_presolve=float_presolve)
    else:
        res = maximize(c, lp_rows, rhs, float_presolve=float_presolve)
    if res.status != "optimal":
        raise RuntimeError(f"pseudo-IRS LP returned {res.status}")
    pi = {m: res.x[col[m]] for m in order if res.x[col[m]]}
    value = sum((c[col[m]] * p for m, p in pi.items()), Fraction(0))
    return UpperBound(value, P.size, res.iterations, len(order), len(lp_rows), pi)


def upper_bound(T: SubgroupTest, B: Iterable[Word], cap: int = WINDOW_CAP) -> Fraction:
    return solve_upper_bound(T, B, cap).value


class CachedValue:
    """Memoized val(T, sigma)."""

    def __init__(self, T: SubgroupTest):
        self.T = T
        self.cache: dict[tuple, Fraction] = {}

    def __call__(self, sigma: FiniteAction) -> Fraction:
        v = self.cache.get(sigma.perms)
        if v is None:
            v = self.cache[sigma.perms] = value_against_action(self.T, sigma)
        return v


def lower_bound(
    T: SubgroupTest, budget: int, max_degree: int = 5, seed: int = 0
) -> tuple[Fraction, Optional[FiniteAction]]:
    value = CachedValue(T)
    best, witness = Fraction(0), None
    for sigma in enumerate_actions(T.alphabet, max_degree, budget, value, seed):
        v = value(sigma)
        if witness is None or v > best:
            best, witness = v, sigma
    return best, witness


def default_windows(T: SubgroupTest, max_window: int) -> list[tuple[Word, ...]]:
    """B_t = ball(S, t) ∪ (union of challenge windows), t = 1, 2, ...; capped."""
    K = T.window_union()
    out = []
    t = 1
    while True:
        B = tuple(sorted(set(ball(T.alphabet, t)) | K))
        if len(B) > max_window:
            break
        if out and B == out[-1]:
            break
        out.append(B)
        t += 1
    return out


@dataclass
class Stage:
    index: int
    alpha: Fraction
    beta: Fraction
    window_size: int
    lp_iterations: int
    witness: Optional[FiniteAction]


@dataclass
class SandwichResult:
    stages: list[Stage] = field(default_factory=list)
    closed: bool = False

    @property
    def alpha(self) -> Fraction:
        return self.stages[-1].alpha if self.stages else Fraction(0)

    @property
    def beta(self) -> Fraction:
        return self.stages[-1].beta if self.stages else Fraction(1)


def sandwich(
    T: SubgroupTest,
    gap: Fraction = Fraction(0),
    max_window: int = 8,
    max_degree: int = 5,
    budget_per_stage: int = 200,
    windows: Optional[Sequence[Iterable[Word]]] = None,
    seed: int = 0,
) -> SandwichResult:
    """Interleave inner and outer bounds until beta - alpha <= gap or resources run out.

    Stage t uses window B_t and a cumulative action budget of t * budget_per_stage.
    """
    if windows is None:
        windows = default_windows(T, max_window)
    windows = [tuple(sorted(set(B))) for B in windows]
    for a, b in zip(windows, windows[1:]):
        if not set(a) <= set(b):
            raise ValueError("windows must be nested")
    value = CachedValue(T)
    stream = enumerate_actions(T.alphabet, max_degree, budget_per_stage * max(1, len(windows)), value, seed)
    result = SandwichResult()
    alpha, witness, beta = Fraction(0), None, Fraction(1)
    for t, B in enumerate(windows, start=1):
        for _ in range(budget_per_stage):
            sigma = next(stream, None)
            if sigma is None:
                break
            v = value(sigma)
            if witness is None or v > alpha:
                alpha, witness = v, sigma
        ub = solve_upper_bound(T, B)
        beta = ub.value
        result.stages.append(Stage(t, alpha, beta, len(B), ub.lp_iterations, witness))
        if beta - alpha <= gap:
            result.closed = True
            break
    return result
