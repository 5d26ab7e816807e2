"""Command-line interface.

Exit status: 0 success, 1 negative verdict (check-pseudo), 2 input error,
3 resource cap reached before the requested gap.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .compiler import compile_game, transfer_report
from .formats import ParseError, format_rational, parse_rational
from .games import magic_square
from .hierarchy import ResourceCapExceeded, sandwich
from .stallings import is_pseudo_subgroup
from .strategies import GammaSampler, game_value, magic_square_strategy, validate
from .subgroup_tests import cnf_test, separation_test, significance, value_against_action, verification_test
from .words import Alphabet, commutator


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _header(command: str, config: dict, inputs: Sequence[str]) -> list[str]:
    lines = [f"# command: {command}"]
    lines += [f"# config: {k}={v}" for k, v in config.items()]
    lines += [f"# input: {Path(p).name} sha256={_digest(p)}" for p in inputs]
    return lines


def _fmt(q) -> str:
    return format_rational(Fraction(q))


def _word_list(path: str, alphabet: Alphabet):
    out = []
    for ln, raw in enumerate(_read(path).splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            out.append(alphabet.parse(body))
        except ValueError as exc:
            raise ParseError(ln, 1, str(exc)) from None
    return out


def cmd_check_pseudo(args) -> int:
    alphabet = Alphabet(args.alphabet.split(","))
    A = _word_list(args.set_a, alphabet)
    B = _word_list(args.set_b, alphabet)
    if not set(A) <= set(B):
        raise InputError("set A must be contained in set B")
    v = is_pseudo_subgroup(A, B)
    print("true" if v.verdict else "false")
    if not v.verdict:
        print(f"witness: {alphabet.format(v.witness)}", file=sys.stderr)
    return 0 if v.verdict else 1


def cmd_eval_test(args) -> int:
    T = formats.parse_test(_read(args.test))
    sigma = formats.parse_action(_read(args.action), T.alphabet)
    print(_fmt(value_against_action(T, sigma)))
    return 0


def cmd_sandwich(args) -> int:
    T = formats.parse_test(_read(args.test))
    gap = parse_rational(args.gap)
    result = sandwich(
        T, gap=gap, max_window=args.max_window, max_degree=args.max_degree,
        budget_per_stage=args.budget, seed=args.seed,
    )
    config = {"max_window": args.max_window, "max_degree": args.max_degree, "gap": _fmt(gap),
              "budget_per_stage": args.budget, "seed": args.seed}
    lines = _header("sandwich", config, [args.test])
    lines.append("stage\talpha\tbeta\twindow_size\tlp_iterations\twitness_file")
    report = Path(args.report)
    for st in result.stages:
        wf = "-"
        if st.witness is not None:
            wf = f"{report.stem}.stage{st.index}.act"
            (report.parent / wf).write_text(formats.write_action(st.witness))
        lines.append(f"{st.index}\t{_fmt(st.alpha)}\t{_fmt(st.beta)}\t{st.window_size}\t{st.lp_iterations}\t{wf}")
    report.write_text("\n".join(lines) + "\n")
    print(f"alpha {_fmt(result.alpha)}  beta {_fmt(result.beta)}  closed {str(result.closed).lower()}")
    return 0 if result.closed else 3


def cmd_compile_game(args) -> int:
    game = formats.parse_game(_read(args.game))
    Path(args.out).write_text(formats.write_test(compile_game(game).test))
    return 0


def cmd_eval_strategy(args) -> int:
    game = formats.parse_game(_read(args.game))
    from .strategies import strategy_alphabet

    sigma = formats.parse_action(_read(args.strategy), strategy_alphabet(game))
    bad = validate(sigma, game)
    if bad:
        for v in bad:
            print(f"invalid: {v.clause}: {v.detail} (point {v.witness})", file=sys.stderr)
        return 1
    print(f"value {_fmt(game_value(game, sigma))}")
    if args.sample:
        import random

        rng = random.Random(args.seed)
        samplers = [GammaSampler(game, sigma, e) for e in range(len(game.edges))]
        edges = list(range(len(game.edges)))
        wins = 0
        for _ in range(args.sample):
            e = rng.choices(edges, weights=[float(w) for w in game.weights])[0]
            gamma = dict(zip(game.edge_generators(e), samplers[e].sample(rng)))
            wins += game.decide(e, gamma)
        print(f"empirical {wins}/{args.sample}")
    return 0


def cmd_transfer(args) -> int:
    game = formats.parse_game(_read(args.game))
    from .strategies import strategy_alphabet

    sigma = formats.parse_action(_read(args.action), strategy_alphabet(game))
    rep = transfer_report(game, sigma)
    rows = [("value_test", _fmt(rep.value_test))]
    rows += [(f"check{k}_failure", _fmt(v)) for k, v in sorted(rep.check_failures.items())]
    rows.append(("eps", _fmt(rep.eps)))
    rows += [(f"eps[{v}]", _fmt(e)) for v, e in rep.eps_x.items()]
    for g in sigma.alphabet:
        rows.append((f"displacement[{g}]", _fmt(rep.rounding.displacement[g])))
        rows.append((f"bound[{g}]", _fmt(rep.rounding.bounds[g])))
    rows += [
        ("rounded_degree", str(rep.rounding.strategy.degree)),
        ("value_test_rounded", _fmt(rep.value_test_rounded)),
        ("value_game", _fmt(rep.value_game)),
        ("soundness_bound", _fmt(rep.soundness_bound)),
        ("soundness_holds", str(rep.soundness_holds).lower()),
        ("rounding_holds", str(rep.rounding_holds).lower()),
    ]
    lines = _header("transfer", {}, [args.game, args.action]) + ["key\tvalue"]
    lines += [f"{k}\t{v}" for k, v in rows]
    Path(args.report).write_text("\n".join(lines) + "\n")
    if args.rounded:
        Path(args.rounded).write_text(formats.write_action(rep.rounding.strategy))
    print(f"value_test {_fmt(rep.value_test)}  value_game {_fmt(rep.value_game)}  "
          f"soundness {'holds' if rep.soundness_holds else 'FAILS'}")
    return 0


def cmd_significance(args) -> int:
    T = formats.parse_test(_read(args.test))
    sig = significance(T)
    for name in T.alphabet:
        print(f"{name}\t{_fmt(sig[name])}")
    if sig.zero_generators:
        print(f"zero-weight: {' '.join(sig.zero_generators)}", file=sys.stderr)
    return 0


def cmd_gallery(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ab = Alphabet(["a", "b"])
    a, b = ab.gen("a"), ab.gen("b")
    one = Alphabet(["a"])
    tests = {
        "verification_commutator.sgt": verification_test([commutator(a, b)], ab),
        "separation_square.sgt": separation_test([one.gen("a") ** 2], [one.gen("a")], one),
        "separation_conjugate.sgt": separation_test([a], [b * a * b.inverse()], ab),
        "cnf_contradiction.sgt": cnf_test([[("x", False)], [("x", True)]]),
    }
    for name, T in tests.items():
        (out / name).write_text(formats.write_test(T))
    game = magic_square()
    (out / "magic_square.tng").write_text(formats.write_game(game))
    (out / "magic_square.pst").write_text(formats.write_action(magic_square_strategy(game)))
    (out / "magic_square_compiled.sgt").write_text(formats.write_test(compile_game(game).test))
    for p in sorted(out.iterdir()):
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sofic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-pseudo", help="decide whether <A> meets B exactly in A")
    s.add_argument("--alphabet", required=True)
    s.add_argument("--set-a", required=True)
    s.add_argument("--set-b", required=True)
    s.set_defaults(func=cmd_check_pseudo)

    s = sub.add_parser("eval-test", help="exact value of a test against an action")
    s.add_argument("--test", required=True)
    s.add_argument("--action", required=True)
    s.set_defaults(func=cmd_eval_test)

    s = sub.add_parser("sandwich", help="inner and outer bounds on the sofic value")
    s.add_argument("--test", required=True)
    s.add_argument("--max-window", type=int, default=8)
    s.add_argument("--max-degree", type=int, default=5)
    s.add_argument("--gap", default="0")
    s.add_argument("--budget", type=int, default=200, help="actions per stage")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", required=True)
    s.set_defaults(func=cmd_sandwich)

    s = sub.add_parser("compile-game", help="write the compiled subgroup test of a game")
    s.add_argument("--game", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_compile_game)

    s = sub.add_parser("eval-strategy", help="exact value of a permutation strategy")
    s.add_argument("--game", required=True)
    s.add_argument("--strategy", required=True)
    s.add_argument("--sample", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_eval_strategy)

    s = sub.add_parser("transfer", help="round an action and compare test and game values")
    s.add_argument("--game", required=True)
    s.add_argument("--action", required=True)
    s.add_argument("--report", required=True)
    s.add_argument("--rounded", help="also write the rounded strategy here")
    s.set_defaults(func=cmd_transfer)

    s = sub.add_parser("significance", help="per-generator significance of a test")
    s.add_argument("--test", required=True)
    s.set_defaults(func=cmd_significance)

    s = sub.add_parser("gallery", help="write example tests, games and strategies")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gallery)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
