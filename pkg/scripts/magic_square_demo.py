"""Magic square: perfect signed-permutation strategy, classical optimum and
the significance of the compiled test."""

from sofic.compiler import compile_game, significance_audit, strategy_to_irs
from sofic.games import best_deterministic_value, magic_square
from sofic.strategies import classical_strategy, game_value, magic_square_strategy
from sofic.subgroup_tests import value_against_action

g = magic_square()
sigma = magic_square_strategy(g)
compiled = compile_game(g)
print(f"strategy degree {sigma.degree}, {len(sigma.alphabet)} generators")
print(f"game value        {game_value(g, sigma)}")
print(f"compiled value    {value_against_action(compiled.test, strategy_to_irs(sigma, compiled))}")

best, f = best_deterministic_value(g)
print(f"classical optimum {best}")
print(f"  via compiled    {value_against_action(compiled.test, strategy_to_irs(classical_strategy(g, f), compiled))}")

audit = significance_audit(compiled)
print(f"challenges {len(compiled.test.challenges)}")
for name in sorted(audit.bounds, key=lambda n: (n != "J", n)):
    print(f"  s({name}) = {audit.significance[name]}  (bound {audit.bounds[name]})")
