"""Compiling a tailored game into a subgroup test over S ∪ {J}.

One challenge per edge xy, weighted like the edge. With H the subgroup under
test, a challenge runs four checks in order:

1. J is not in H, while J^2 and [J, X] are, for X in S_xy;
2. X^2 is in H for X in S_xy, and [X, X'] for X, X' at the same vertex;
3. every readable X has X or J X in H;
4. reading gamma^R off check 3 (0 when X is in H), every alpha listed for
   gamma^R has J^alpha(J) prod_x X^alpha(X) prod_y Y^alpha(Y) in H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .actions import FiniteAction, SignificanceFunction, weighted_distance
from .games import J, TailoredGame
from .stability import RoundingResult, round_to_valid
from .strategies import game_value, strategy_alphabet
from .subgroup_tests import Challenge, Member, SubgroupTest, significance, value_against_action
from .words import IDENTITY, Alphabet, Word, commutator

SOUNDNESS_CONSTANT = 2  # C1
SIGNIFICANCE_CONSTANT = 4  # C2


class CompiledChallenge(Challenge):
    def __init__(self, game: TailoredGame, e: int, alphabet: Alphabet):
        self.game, self.e = game, e
        x, y = game.edges[e]
        g = alphabet.gen
        self.J = g(J)
        gens = game.edge_generators(e)
        self.check1_in = [self.J * self.J] + [commutator(self.J, g(X)) for X in gens]
        self.check2 = [g(X) * g(X) for X in gens]
        for side in (game.generators(x), game.generators(y)):
            for a, b in itertools.combinations(side, 2):
                self.check2.append(commutator(g(a), g(b)))
        self.readable = [(g(X), self.J * g(X)) for X in game.edge_readables(e)]
        self.order = [J] + game.generators(x) + game.generators(y)
        self._alpha_words: dict[frozenset, Word] = {}
        self._gen = g
        words = {self.J, *self.check1_in, *self.check2}
        for a, b in self.readable:
            words.update((a, b))
        for alphas in game.tables[e].values():
            for alpha in alphas:
                words.add(self.alpha_word(alpha))
        self.window = tuple(sorted(words))

    def alpha_word(self, alpha: frozenset) -> Word:
        w = self._alpha_words.get(alpha)
        if w is None:
            w = IDENTITY
            for X in self.order:
                if X in alpha:
                    w = w * self._gen(X)
            self._alpha_words[alpha] = w
        return w

    def failing_check(self, member: Member) -> int:
        """Index of the first failing check, 0 if all pass."""
        if member(self.J) or not all(member(w) for w in self.check1_in):
            return 1
        if not all(member(w) for w in self.check2):
            return 2
        bits = []
        for X, JX in self.readable:
            if member(X):
                bits.append(0)
            elif member(JX):
                bits.append(1)
            else:
                return 3
        for alpha in self.game.tables[self.e][tuple(bits)]:
            if not member(self.alpha_word(alpha)):
                return 4
        return 0

    def decide(self, member: Member) -> bool:
        return self.failing_check(member) == 0


@dataclass(frozen=True)
class CompiledTest:
    game: TailoredGame
    test: SubgroupTest

    @property
    def alphabet(self) -> Alphabet:
        return self.test.alphabet


def compile_game(game: TailoredGame) -> CompiledTest:
    alphabet = strategy_alphabet(game)
    challenges = tuple(CompiledChallenge(game, e, alphabet) for e in range(len(game.edges)))
    return CompiledTest(game, SubgroupTest(alphabet, challenges, game.weights))


def strategy_to_irs(sigma: FiniteAction, compiled: CompiledTest) -> FiniteAction:
    """The action whose uniform-point stabilizer is the IRS fed to the compiled test."""
    if sigma.alphabet != compiled.alphabet:
        raise ValueError("strategy alphabet does not match the compiled test")
    return sigma


def check_failures(compiled: CompiledTest, sigma: FiniteAction) -> tuple[list[Fraction], dict[int, Fraction]]:
    """Per-edge rejection probabilities and the mass of each first-failing check."""
    n = sigma.degree
    per_edge = []
    per_check = {k: Fraction(0) for k in (1, 2, 3, 4)}
    counts = []
    for c in compiled.test.challenges:
        tally = {k: 0 for k in (1, 2, 3, 4)}
        for x in range(n):
            k = c.failing_check(lambda w, x=x: sigma.act(w, x) == x)
            if k:
                tally[k] += 1
        counts.append(tally)
    for w, tally in zip(compiled.test.weights, counts):
        per_edge.append(Fraction(sum(tally.values()), n))
        for k, t in tally.items():
            per_check[k] += w * Fraction(t, n)
    return per_edge, per_check


def vertex_losses(game: TailoredGame, edge_losses: list[Fraction]) -> dict[str, Fraction]:
    """eps_x: losing probability given that an edge at x was sampled (1 if none ever is)."""
    out = {}
    for v in game.vertices:
        num = sum((w * l for (a, b), w, l in zip(game.edges, game.weights, edge_losses) if v in (a, b)), Fraction(0))
        den = sum((w for (a, b), w in zip(game.edges, game.weights) if v in (a, b)), Fraction(0))
        out[v] = num / den if den else Fraction(1)
    return out


@dataclass
class TransferReport:
    value_test: Fraction
    check_failures: dict[int, Fraction]
    eps: Fraction
    eps_x: dict[str, Fraction]
    rounding: RoundingResult
    value_test_rounded: Fraction
    value_game: Fraction
    soundness_bound: Fraction
    weighted_distance: Fraction

    @property
    def soundness_holds(self) -> bool:
        return self.value_game >= self.soundness_bound

    @property
    def rounding_holds(self) -> bool:
        return not self.rounding.violations

    @property
    def robustness_holds(self) -> bool:
        return abs(self.value_test - self.value_test_rounded) <= self.weighted_distance


def soundness_bound(game: TailoredGame, value_test: Fraction) -> Fraction:
    """1 - C1 4^Lambda (1 - val(T, sigma))."""
    return 1 - SOUNDNESS_CONSTANT * 4**game.max_length * (1 - value_test)


def transfer_report(game: TailoredGame, sigma: FiniteAction, compiled: CompiledTest | None = None) -> TransferReport:
    compiled = compiled or compile_game(game)
    edge_losses, per_check = check_failures(compiled, sigma)
    value_test = 1 - sum((w * l for w, l in zip(game.weights, edge_losses)), Fraction(0))
    eps_x = vertex_losses(game, edge_losses)
    rounding = round_to_valid(sigma, game, eps_x)
    value_rounded = value_against_action(compiled.test, rounding.strategy)
    value_game = game_value(game, rounding.strategy)
    dist = weighted_distance(sigma, rounding.strategy, significance(compiled.test))
    return TransferReport(
        value_test, per_check, rounding.eps, eps_x, rounding, value_rounded, value_game,
        soundness_bound(game, value_rounded), dist,
    )


@dataclass
class SignificanceAudit:
    significance: SignificanceFunction
    bounds: dict[str, Fraction]

    @property
    def violations(self) -> list[str]:
        return [g for g, b in self.bounds.items() if self.significance[g] > b]


def significance_audit(compiled: CompiledTest) -> SignificanceAudit:
    """s(J) <= C2 4^Lambda and s(X) <= mu(x) C2 4^Lambda for X at vertex x."""
    game = compiled.game
    sig = significance(compiled.test)
    top = SIGNIFICANCE_CONSTANT * 4**game.max_length
    bounds = {J: Fraction(top)}
    for v in game.vertices:
        for X in game.generators(v):
            bounds[X] = game.vertex_weight(v) * top
    return SignificanceAudit(sig, bounds)
