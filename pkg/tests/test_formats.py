import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sofic import formats
from sofic.actions import FiniteAction
from sofic.compiler import compile_game
from sofic.formats import ParseError, parse_action, parse_game, parse_rational, parse_test, write_action, write_game, write_test
from sofic.games import magic_square
from sofic.instances import random_game, random_test
from sofic.strategies import magic_square_strategy
from sofic.subgroup_tests import cnf_test, separation_test, significance, value_against_action, verification_test
from sofic.words import Alphabet

from conftest import AB, actions


def same_test(T, U, samples):
    assert T.alphabet == U.alphabet and T.weights == U.weights
    assert [c.window for c in T.challenges] == [c.window for c in U.challenges]
    for sigma in samples:
        assert value_against_action(T, sigma) == value_against_action(U, sigma)


def test_rationals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("2") == 2
    assert formats.format_rational(Fraction(2)) == "2/1"
    with pytest.raises(ParseError):
        parse_rational("0.5")


@given(actions())
def test_action_round_trip(sigma):
    assert parse_action(write_action(sigma), AB) == sigma


def test_action_errors_have_positions():
    with pytest.raises(ParseError) as exc:
        parse_action("degree 2\na: 0 0\nb: 1 0\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError) as exc:
        parse_action("degree 2\na: 1 0\n", AB)
    with pytest.raises(ParseError) as exc:
        parse_action("deg 2\n")
    assert exc.value.line == 1


@given(st.integers(0, 10**6), st.lists(actions(max_degree=4), min_size=3, max_size=3))
def test_table_test_round_trip(seed, samples):
    T = random_test(AB, random.Random(seed), n_challenges=3)
    same_test(T, parse_test(write_test(T)), samples)


def test_builtin_round_trips():
    a, b = AB.gen("a"), AB.gen("b")
    rng = random.Random(0)
    samples = [FiniteAction(AB, tuple(tuple(rng.sample(range(n), n)) for _ in AB)) for n in (1, 2, 3, 4)]
    for T in [verification_test([a * b * a.inverse()], AB), separation_test([a * a], [b], AB)]:
        same_test(T, parse_test(write_test(T)), samples)
    C = cnf_test([[("x", False), ("y", True)], [("y", False)]])
    U = parse_test(write_test(C))
    assert [c.literals for c in U.challenges] == [c.literals for c in C.challenges]


def test_hand_written_test_file():
    text = """
    # separation of a^2 from a, as a truth table
    alphabet a
    challenge 1/1 { window: a; a a accept: {a a} }
    """
    T = parse_test(text)
    one = Alphabet(["a"])
    assert value_against_action(T, FiniteAction(one, ((1, 0),))) == 1
    assert value_against_action(T, FiniteAction(one, ((0,),))) == 0


def test_test_file_errors():
    with pytest.raises(ParseError):
        parse_test("alphabet a\nchallenge 1/2 { window: a accept: {a} }\n")
    with pytest.raises(ParseError) as exc:
        parse_test("alphabet a\nchallenge 1/1 { window: c accept: }\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_test("alphabet a\nbuiltin 1/1 frobnicate\n")


@given(st.integers(0, 10**6))
def test_game_round_trip(seed):
    g = random_game(random.Random(seed), max_length=3)
    h = parse_game(write_game(g))
    assert h == g


def test_lcs_game_section():
    text = """
    vertices: r1 c1 c2
    edges:
      r1 c1 1/2
      r1 c2 1/2
    lengths:
      r1 0 2
      c1 0 1
      c2 0 1
    system:
      1 1 | 1
    constraints:
      r1 c1 lcs 1 1
      r1 c2 lcs 1 2
    """
    g = parse_game(text)
    assert g.constraints(0, ()) == (frozenset({"c1/L/1", "r1/L/1"}), frozenset({"r1/L/1", "r1/L/2", "J"}))


def test_compiled_test_round_trip():
    g = magic_square()
    T = compile_game(g).test
    U = parse_test(write_test(T))
    sigma = magic_square_strategy(g)
    assert U.weights == T.weights and len(U.challenges) == 18
    assert value_against_action(U, sigma) == 1
    assert significance(U).weights == significance(T).weights



