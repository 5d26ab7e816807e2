"""Corrupt valid strategies, round them back and compare the observed change
against the stability bounds and the soundness bound.

Prints one row per corruption rate.
"""

import argparse
import random
from collections import defaultdict
from fractions import Fraction

from sofic.compiler import compile_game, transfer_report
from sofic.instances import corrupt, random_game, random_valid_strategy


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--runs", type=int, default=30, help="runs per corruption rate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rates", type=float, nargs="+", default=[0.002, 0.01, 0.05, 0.1, 0.2])
    args = p.parse_args()
    rng = random.Random(args.seed)

    rows = defaultdict(list)
    for rate in args.rates:
        for _ in range(args.runs):
            g = random_game(rng, n_vertices=rng.randint(2, 4), max_length=3)
            sigma = random_valid_strategy(g, rng.randint(2, 12), rng)
            rep = transfer_report(g, corrupt(sigma, rng, rate), compile_game(g))
            ratio = max(
                (d / rep.rounding.bounds[k] for k, d in rep.rounding.displacement.items() if rep.rounding.bounds[k]),
                default=Fraction(0),
            )
            rows[rate].append((rep, ratio))

    print(f"{'rate':>6} {'val(T)':>8} {'val(G)':>8} {'disp/bound':>10} {'bound>0':>8} {'sound':>6}")
    for rate, data in rows.items():
        n = len(data)
        mean_t = sum(r.value_test for r, _ in data) / n
        mean_g = sum(r.value_game for r, _ in data) / n
        worst = max(q for _, q in data)
        informative = sum(r.soundness_bound > 0 for r, _ in data)
        sound = sum(r.soundness_holds for r, _ in data)
        print(f"{rate:>6} {float(mean_t):>8.4f} {float(mean_g):>8.4f} {float(worst):>10.4f} "
              f"{informative:>4}/{n:<3} {sound:>3}/{n}")


if __name__ == "__main__":
    main()
