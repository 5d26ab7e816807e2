import pytest
from hypothesis import given
from hypothesis import strategies as st

from sofic.words import IDENTITY, Alphabet, Word, ball, commutator, conjugate, count_occurrences, reduce

from conftest import AB, letters, words

a, b = AB.gen("a"), AB.gen("b")


def test_reduction_examples():
    assert reduce([(0, 1), (0, -1)]) == IDENTITY
    assert reduce([(0, 1), (1, 1), (1, -1), (0, 1)]) == a * a


def test_unknown_generator_rejected():
    with pytest.raises(ValueError):
        reduce([(2, 1)], AB)


def test_concat_invert_conjugate():
    assert a * a.inverse() == IDENTITY
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert conjugate((0, 1), b) == a * b * a.inverse()


def test_letter_counts():
    w = commutator(a, b)
    assert count_occurrences(0, w) == 2
    assert count_occurrences(1, w) == 2
    assert count_occurrences(0, IDENTITY) == 0


def test_ball_sizes():
    assert ball(AB, 0) == [IDENTITY]
    assert len(ball(AB, 1)) == 5
    assert len(ball(AB, 2)) == 17


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("t", [0, 1, 2, 3, 4])
def test_ball_size_formula(k, t):
    expected = 1 + sum(2 * k * (2 * k - 1) ** (r - 1) for r in range(1, t + 1))
    B = ball(k, t)
    assert len(B) == len(set(B)) == expected
    assert B == sorted(B)


def test_ball_order_length_then_letters():
    assert ball(AB, 1) == [IDENTITY, a.inverse(), a, b.inverse(), b]


def test_parse_and_format_round_trip():
    w = AB.parse("a b^-1 a")
    assert AB.format(w) == "a b^-1 a"
    assert AB.parse("e") == IDENTITY
    assert AB.format(IDENTITY) == "e"
    with pytest.raises(ValueError):
        AB.parse("a c")


def test_reserved_names_rejected():
    for bad in ["e", "a b", "x;y", ""]:
        with pytest.raises(ValueError):
            Alphabet([bad])


@given(letters())
def test_reduce_idempotent(ls):
    w = Word(ls)
    assert Word(w.letters) == w
    assert all(w.letters[i] != (w.letters[i + 1][0], -w.letters[i + 1][1]) for i in range(len(w) - 1))


@given(words(), words(), words())
def test_concat_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words())
def test_inverse_laws(w):
    assert w.inverse().inverse() == w
    assert w * w.inverse() == IDENTITY


@given(words(), st.integers(0, 1), st.sampled_from([1, -1]))
def test_conjugation_letter_count(w, g, e):
    c = conjugate((g, e), w)
    v = count_occurrences(g, w)
    # cancellation may happen at both ends, so the count can also drop by 2
    assert count_occurrences(g, c) in (v - 2, v, v + 2)
    if not (w.letters and w.letters[0][0] == g and w.letters[-1][0] == g):
        assert count_occurrences(g, c) in (v, v + 2)
    assert c == Word([(g, e)]) * w * Word([(g, -e)])


@given(words(), words())
def test_total_order_consistent(u, v):
    assert (u < v) + (v < u) + (u == v) == 1
