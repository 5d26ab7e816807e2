import random
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from sofic.simplex import maximize


def random_lp(rng: random.Random, m: int, n: int):
    # feasible by construction: rhs = A x0 for a nonnegative x0
    x0 = [Fraction(rng.randint(0, 3)) for _ in range(n)]
    rows = [{j: rng.randint(-3, 3) for j in range(n) if rng.random() < 0.6} for _ in range(m)]
    rhs = [sum((v * x0[j] for j, v in r.items()), Fraction(0)) for r in rows]
    # sum x + slack = const keeps things bounded; x0 with slack 1 stays feasible
    rows.append({j: 1 for j in range(n + 1)})
    rhs.append(sum(x0) + 1)
    c = [Fraction(rng.randint(-4, 4)) for _ in range(n)] + [Fraction(0)]
    return c, rows, rhs


def dense(rows, n):
    return np.array([[float(r.get(j, 0)) for j in range(n)] for r in rows])


def test_small_known_lp():
    # max x + y s.t. x + 2y + s = 4, 3x + y + t = 6
    res = maximize([1, 1, 0, 0], [{0: 1, 1: 2, 2: 1}, {0: 3, 1: 1, 3: 1}], [4, 6])
    assert res.status == "optimal"
    assert res.value == Fraction(14, 5)
    assert res.x[:2] == [Fraction(8, 5), Fraction(6, 5)]


def test_infeasible_and_unbounded():
    assert maximize([1], [{0: 1}], [-1]).status == "infeasible"
    assert maximize([1, 0], [{0: 1, 1: -1}], [0]).status == "unbounded"


def test_redundant_rows():
    res = maximize([1, 2], [{0: 1, 1: 1}, {0: 2, 1: 2}], [1, 2])
    assert res.status == "optimal" and res.value == 2


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 8), st.booleans())
def test_matches_highs(seed, m, n, presolve):
    c, rows, rhs = random_lp(random.Random(seed), m, n)
    res = maximize(c, rows, rhs, float_presolve=presolve)
    ref = linprog([-float(v) for v in c], A_eq=dense(rows, n + 1), b_eq=[float(b) for b in rhs], bounds=(0, None), method="highs")
    assert res.status == "optimal" and ref.status == 0
    assert abs(float(res.value) + ref.fun) < 1e-7
    assert all(v >= 0 for v in res.x)
    for r, b in zip(rows, rhs):
        assert sum((v * res.x[j] for j, v in r.items()), Fraction(0)) == b


@given(st.integers(0, 10**6), st.randoms())
def test_row_order_does_not_change_value(seed, r):
    c, rows, rhs = random_lp(random.Random(seed), 4, 6)
    order = list(range(len(rows)))
    r.shuffle(order)
    a = maximize(c, rows, rhs)
    b = maximize(c, [rows[i] for i in order], [rhs[i] for i in order], float_presolve=False)
    assert a.value == b.value
