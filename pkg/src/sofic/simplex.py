"""Exact rational simplex for  max c.x  s.t.  A x = b, x >= 0.

Two-phase tableau method with Bland's rule, so it cannot cycle. An optional
floating-point solve proposes a starting basis; the exact method then checks
it and repairs it (or falls back to a cold start), so the answer never
depends on floating-point arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

log = logging.getLogger(__name__)

Row = Mapping[int, Fraction]  # sparse: column -> coefficient


@dataclass
class LPResult:
    status: str  # optimal | infeasible | iteration_limit
    value: Optional[Fraction]
    x: Optional[list[Fraction]]
    iterations: int
    crash_accepted: bool = False
    stats: dict = field(default_factory=dict)


class _Tableau:
    def __init__(self, rows: list[dict[int, Fraction]], rhs: list[Fraction], n: int):
        self.n = n
        self.T = [[Fraction(0)] * n + [b] for b in rhs]
        for i, r in enumerate(rows):
            for j, v in r.items():
                self.T[i][j] = Fraction(v)
        self.basis: list[int] = [-1 - i for i in range(len(rhs))]  # negative = artificial
        self.iterations = 0

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        prow = T[r]
        pv = prow[c]
        if pv != 1:
            prow[:] = [v / pv if v else v for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c
        self.iterations += 1

    def reduced_costs(self, cost: Sequence[Fraction], phase1: bool) -> list[Fraction]:
        """Reduced costs; phase 1 maximizes minus the sum of artificials."""
        n = self.n
        d = [Fraction(0)] * n if phase1 else list(cost[:n])
        for i, bj in enumerate(self.basis):
            cb = Fraction(-1) if bj < 0 else (Fraction(0) if phase1 else cost[bj])
            if cb:
                row = self.T[i]
                for j in range(n):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    def run(self, cost: Sequence[Fraction], max_iter: Optional[int], phase1: bool) -> str:
        n = self.n
        while True:
            if max_iter is not None and self.iterations >= max_iter:
                return "iteration_limit"
            d = self.reduced_costs(cost, phase1)
            enter = next((j for j in range(n) if d[j] > 0), None)
            if enter is None:
                return "optimal"
            best = None
            leave = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    bj = self.basis[i]
                    key = (row[n] / a, bj if bj >= 0 else n - 1 - bj)
                    if best is None or key < best:
                        best, leave = key, i
            if leave is None:
                return "unbounded"
            self.pivot(leave, enter)


def _float_support(c, rows, rhs, n) -> Optional[list[int]]:
    try:
        import numpy as np
        from scipy.optimize import linprog
        from scipy.sparse import lil_matrix
    except ImportError:  # pragma: no cover
        return None
    A = lil_matrix((len(rows), n))
    for i, r in enumerate(rows):
        for j, v in r.items():
            A[i, j] = float(v)
    res = linprog(
        -np.array([float(v) for v in c]),
        A_eq=A.tocsr(),
        b_eq=np.array([float(v) for v in rhs]),
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:
        return None
    order = sorted(range(n), key=lambda j: -res.x[j])
    return [j for j in order if res.x[j] > 1e-9]


def maximize(
    c: Sequence[Fraction],
    rows: Sequence[Row],
    rhs: Sequence[Fraction],
    max_iterations: Optional[int] = None,
    float_presolve: bool = True,
) -> LPResult:
    n = len(c)
    c = [Fraction(v) for v in c]
    rows = [dict(r) for r in rows]
    rhs = [Fraction(b) for b in rhs]
    for i, b in enumerate(rhs):
        if b < 0:
            rows[i] = {j: -v for j, v in rows[i].items()}
            rhs[i] = -b

    crash_ok = False
    tab = _Tableau(rows, rhs, n)
    support = _float_support(c, rows, rhs, n) if float_presolve and n else None
    if support:
        for j in support:
            r = next((i for i, bj in enumerate(tab.basis) if bj < 0 and tab.T[i][j] != 0), None)
            if r is not None:
                tab.pivot(r, j)
        if all(row[n] >= 0 for row in tab.T):
            crash_ok = True
        else:
            log.debug("float basis rejected; cold start")
            tab = _Tableau(rows, rhs, n)
    crash_pivots = tab.iterations

    status = tab.run(c, max_iterations, phase1=True)
    if status == "iteration_limit":
        return LPResult(status, None, None, tab.iterations, crash_ok)
    infeas = sum((row[n] for row, bj in zip(tab.T, tab.basis) if bj < 0), Fraction(0))
    if infeas > 0:
        return LPResult("infeasible", None, None, tab.iterations, crash_ok)

    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.T):
        if tab.basis[i] < 0:
            row = tab.T[i]
            j = next((j for j in range(n) if row[j] != 0), None)
            if j is None:
                del tab.T[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1

    status = tab.run(c, max_iterations, phase1=False)
    if status != "optimal":
        return LPResult(status, None, None, tab.iterations, crash_ok)
    x = [Fraction(0)] * n
    for row, bj in zip(tab.T, tab.basis):
        x[bj] = row[n]
    value = sum((cj * xj for cj, xj in zip(c, x) if xj), Fraction(0))
    return LPResult(
        "optimal",
        value,
        x,
        tab.iterations,
        crash_ok,
        {"rows": len(rows), "cols": n, "rank": len(tab.T), "crash_pivots": crash_pivots},
    )
