"""Run the sandwich on a few small subgroup tests and print each stage."""

import argparse
import time

from sofic.hierarchy import sandwich
from sofic.subgroup_tests import cnf_test, separation_test, verification_test
from sofic.words import Alphabet, commutator


def gallery():
    ab = Alphabet(["a", "b"])
    a, b = ab.gen("a"), ab.gen("b")
    one = Alphabet(["a"])
    x = one.gen("a")
    return {
        "cnf x & ~x": cnf_test([[("x", False)], [("x", True)]]),
        "cnf (x|y) & (~x|~y)": cnf_test([[("x", True), ("y", True)], [("x", False), ("y", False)]]),
        "separation a^2 vs a": separation_test([x * x], [x], one),
        "separation a vs bab^-1": separation_test([a], [b * a * b.inverse()], ab),
        "verification a^2": verification_test([x * x], one),
        "verification [a,b]": verification_test([commutator(a, b)], ab),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-window", type=int, default=8)
    p.add_argument("--max-degree", type=int, default=5)
    args = p.parse_args()
    for name, T in gallery().items():
        start = time.perf_counter()
        r = sandwich(T, max_window=args.max_window, max_degree=args.max_degree)
        elapsed = time.perf_counter() - start
        print(f"{name}: alpha={r.alpha} beta={r.beta} closed={r.closed} ({elapsed:.2f}s)")
        for s in r.stages:
            deg = s.witness.degree if s.witness else "-"
            print(f"  stage {s.index}: window {s.window_size}, alpha {s.alpha}, beta {s.beta}, "
                  f"lp iterations {s.lp_iterations}, witness degree {deg}")


if __name__ == "__main__":
    main()
