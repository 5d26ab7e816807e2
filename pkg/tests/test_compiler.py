import itertools
import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from sofic.compiler import (
    check_failures,
    compile_game,
    significance_audit,
    strategy_to_irs,
    transfer_report,
)
from sofic.games import J, TailoredGame, best_deterministic_value, lcs_game, magic_square, trivial_tailoring
from sofic.instances import corrupt, random_game, random_valid_strategy
from sofic.strategies import classical_strategy, magic_square_strategy
from sofic.subgroup_tests import value_against_action
from sofic.words import IDENTITY

SINGLE = TailoredGame(
    ("x", "y"), (("x", "y"),), (Fraction(1),), {}, {"x": 1, "y": 1}, ({(): (frozenset({"x/L/1", "y/L/1"}),)},)
)


def test_magic_square_compiles_to_18_challenges():
    g = magic_square()
    compiled = compile_game(g)
    assert len(compiled.test.challenges) == 18
    assert compiled.test.weights == g.weights
    # J, J^2, four [J, X], four X^2, three row commutators, two check-4 words
    assert {len(c.window) for c in compiled.test.challenges} == {15}


def test_compiled_rejects_whole_group():
    compiled = compile_game(magic_square())
    c = compiled.test.challenges[0]
    assert c.failing_check(lambda w: True) == 1


def test_empty_alpha_word_is_identity():
    c = compile_game(SINGLE).test.challenges[0]
    assert c.alpha_word(frozenset()) == IDENTITY


def test_always_accepting_game():
    g = trivial_tailoring(["x", "y"], [("x", "y")], [Fraction(1)], {"x": 1, "y": 2}, [lambda bits: True])
    compiled = compile_game(g)
    for bits in itertools.product((0, 1), repeat=3):
        sigma = classical_strategy(g, dict(zip(g.all_generators(), bits)))
        assert strategy_to_irs(sigma, compiled).degree == 2
        assert value_against_action(compiled.test, sigma) == 1


def test_magic_square_completeness():
    g = magic_square()
    compiled = compile_game(g)
    sigma = magic_square_strategy(g)
    assert value_against_action(compiled.test, strategy_to_irs(sigma, compiled)) == 1
    report = transfer_report(g, sigma, compiled)
    assert report.value_test == report.value_test_rounded == report.value_game == 1
    assert report.soundness_holds and report.rounding_holds


def test_magic_square_classical_transfer():
    g = magic_square()
    _, f = best_deterministic_value(g)
    report = transfer_report(g, classical_strategy(g, f))
    assert report.value_test < 1 and report.value_game < 1
    assert report.value_test == report.value_game == Fraction(17, 18)
    assert report.soundness_holds


@given(st.integers(0, 10**6))
def test_valid_strategies_pass_checks_1_to_3(seed):
    rng = random.Random(seed)
    g = random_game(rng, max_length=3)
    sigma = random_valid_strategy(g, rng.randint(1, 6), rng)
    _, masses = check_failures(compile_game(g), sigma)
    assert masses[1] == masses[2] == masses[3] == 0


@given(st.integers(0, 10**6))
def test_completeness_on_solvable_lcs(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 5)
    A = [[rng.randint(0, 1) for _ in range(n)] for _ in range(m)]
    for row in A:
        if not any(row):
            row[rng.randrange(n)] = 1
    x = [rng.randint(0, 1) for _ in range(n)]
    b = [sum(a * v for a, v in zip(row, x)) % 2 for row in A]
    g = lcs_game(A, b)
    f = {}
    for j in range(n):
        f[f"c{j + 1}/L/1"] = x[j]
    for i, row in enumerate(A):
        for k, j in enumerate(j for j in range(n) if row[j]):
            f[f"r{i + 1}/L/{k + 1}"] = x[j]
    sigma = classical_strategy(g, f)
    assert value_against_action(compile_game(g).test, sigma) == 1


@given(st.integers(0, 10**6))
def test_transfer_on_corrupted_magic_square(seed):
    rng = random.Random(seed)
    g = magic_square()
    sigma = corrupt(magic_square_strategy(g), rng, rng.choice([0.05, 0.1]), names=[rng.choice(g.all_generators())])
    report = transfer_report(g, sigma)
    assert report.soundness_holds and report.rounding_holds and report.robustness_holds


def test_significance_magic_square():
    audit = significance_audit(compile_game(magic_square()))
    assert audit.violations == []
    s = audit.significance
    assert s[J] == Fraction(67, 6) <= 256
    assert s["r1/L/1"] == Fraction(14, 9)
    assert audit.bounds["r1/L/1"] == Fraction(1, 12) * 256


def test_significance_single_edge():
    audit = significance_audit(compile_game(SINGLE))
    s = audit.significance
    # J: J, J^2, [J, X], [J, Y]; X: [J, X], X^2, X Y
    assert s[J] == 7 and s["x/L/1"] == 5 and s["y/L/1"] == 5
    assert audit.bounds[J] == 16 and audit.bounds["x/L/1"] == 8
    assert audit.violations == []


def test_significance_of_isolated_vertex_is_zero():
    g = TailoredGame(
        ("x", "y", "z"), (("x", "y"),), (Fraction(1),), {}, {"x": 1, "y": 1, "z": 2}, ({(): ()},)
    )
    audit = significance_audit(compile_game(g))
    assert audit.significance["z/L/1"] == 0 and audit.bounds["z/L/1"] == 0
    assert "z/L/1" in audit.significance.zero_generators
    assert audit.violations == []


@given(st.integers(0, 10**6))
def test_significance_bounds_on_random_games(seed):
    g = random_game(random.Random(seed), max_length=3)
    assert significance_audit(compile_game(g)).violations == []
