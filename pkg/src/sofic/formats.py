"""Text formats: actions and strategies, subgroup tests, tailored games."""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Optional

from .actions import FiniteAction
from .games import J, LinearSystem, TailoredGame, lcs_edge_constraints
from .subgroup_tests import ClauseChallenge, ExactChallenge, SubgroupTest, TableChallenge
from .words import Alphabet, Word


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col, self.message = line, col, message


def parse_rational(text: str, line: int = 0, col: int = 0) -> Fraction:
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ParseError(line, col, f"expected a rational p/q, got {text!r}")
    if text.endswith("/0"):
        raise ParseError(line, col, "zero denominator")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _lines(text: str):
    """(line number, column of first char, stripped content) for non-blank lines."""
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield i, len(body) - len(body.lstrip()) + 1, body.strip()


def _parse_word(alphabet: Alphabet, text: str, line: int, col: int) -> Word:
    try:
        return alphabet.parse(text)
    except ValueError as exc:
        raise ParseError(line, col, str(exc)) from None


# ------------------------------------------------------------------ actions


def parse_action(text: str, alphabet: Optional[Alphabet] = None) -> FiniteAction:
    degree = None
    images: dict[str, tuple[int, ...]] = {}
    for ln, col, body in _lines(text):
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", body)
            if not m:
                raise ParseError(ln, col, "expected 'degree n'")
            degree = int(m.group(1))
            continue
        name, sep, rest = body.partition(":")
        if not sep:
            raise ParseError(ln, col, "expected 'name: images'")
        name = name.strip()
        if name in images:
            raise ParseError(ln, col, f"duplicate generator {name}")
        try:
            perm = tuple(int(t) for t in rest.split())
        except ValueError:
            raise ParseError(ln, col + len(name) + 1, "images must be integers") from None
        if sorted(perm) != list(range(degree)):
            raise ParseError(ln, col, f"image of {name} is not a permutation of 0..{degree - 1}")
        images[name] = perm
    if degree is None:
        raise ParseError(1, 1, "empty action file")
    if alphabet is None:
        try:
            alphabet = Alphabet(images)
        except ValueError as exc:
            raise ParseError(1, 1, str(exc)) from None
    missing = [n for n in alphabet if n not in images]
    if missing:
        raise ParseError(1, 1, f"no image given for {', '.join(missing)}")
    extra = [n for n in images if n not in alphabet]
    if extra:
        raise ParseError(1, 1, f"unknown generator {extra[0]}")
    if degree == 0 and len(alphabet):
        raise ParseError(1, 1, "degree must be positive")
    return FiniteAction(alphabet, tuple(images[n] for n in alphabet))


def write_action(sigma: FiniteAction) -> str:
    out = [f"degree {sigma.degree}"]
    for name, p in zip(sigma.alphabet, sigma.perms):
        out.append(f"{name}: {' '.join(map(str, p))}")
    return "\n".join(out) + "\n"


# -------------------------------------------------------------------- games


def _split_vectors(text: str, ln: int, col: int) -> list[frozenset]:
    out = []
    rest = text.strip()
    while rest:
        if not rest.startswith("["):
            raise ParseError(ln, col, "expected '[' starting a constraint vector")
        end = rest.find("]")
        if end < 0:
            raise ParseError(ln, col, "unterminated constraint vector")
        out.append(frozenset(rest[1:end].split()))
        rest = rest[end + 1:].strip()
    return out


def parse_game(text: str, line_offset: int = 0) -> TailoredGame:
    section = None
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    weights: list[Fraction] = []
    readable: dict[str, int] = {}
    unreadable: dict[str, int] = {}
    system_rows: list[tuple[list[int], int]] = []
    tables: dict[tuple[str, str], dict] = {}
    lcs_refs: dict[tuple[str, str], tuple[int, int, int, int]] = {}
    current = None
    for ln, col, body in _lines(text):
        ln += line_offset
        head, sep, tail = body.partition(":")
        if sep and head in ("vertices", "edges", "lengths", "system", "constraints"):
            section = head
            if head == "vertices":
                vertices.extend(tail.split())
            elif tail.strip():
                raise ParseError(ln, col, f"section {head} takes its entries on following lines")
            continue
        toks = body.split()
        if section == "vertices":
            vertices.extend(toks)
        elif section == "edges":
            if len(toks) != 3:
                raise ParseError(ln, col, "expected 'x y weight'")
            edges.append((toks[0], toks[1]))
            weights.append(parse_rational(toks[2], ln, col))
        elif section == "lengths":
            if len(toks) != 3 or not toks[1].isdigit() or not toks[2].isdigit():
                raise ParseError(ln, col, "expected 'vertex readable unreadable'")
            readable[toks[0]], unreadable[toks[0]] = int(toks[1]), int(toks[2])
        elif section == "system":
            lhs, bar, rhs = body.partition("|")
            if not bar or not rhs.strip().isdigit():
                raise ParseError(ln, col, "expected 'a1 a2 ... | b'")
            system_rows.append(([int(t) for t in lhs.split()], int(rhs)))
        elif section == "constraints":
            if "->" in body:
                if current is None:
                    raise ParseError(ln, col, "table row outside a table")
                bits, _, vecs = body.partition("->")
                bits = bits.strip()
                if bits != "-" and not re.fullmatch(r"[01]+", bits):
                    raise ParseError(ln, col, f"bad readable answer {bits!r}")
                key = () if bits == "-" else tuple(int(c) for c in bits)
                if key in tables[current]:
                    raise ParseError(ln, col, "duplicate table row")
                tables[current][key] = _split_vectors(vecs, ln, col + body.index("->") + 2)
            elif len(toks) == 3 and toks[2] == "table":
                current = (toks[0], toks[1])
                if current in tables:
                    raise ParseError(ln, col, "duplicate constraints for an edge")
                tables[current] = {}
            elif len(toks) == 5 and toks[2] == "lcs":
                current = None
                lcs_refs[(toks[0], toks[1])] = (int(toks[3]), int(toks[4]), ln, col)
            else:
                raise ParseError(ln, col, "expected 'x y table' or 'x y lcs i j'")
        else:
            raise ParseError(ln, col, "entry outside of any section")
    if lcs_refs:
        if not system_rows:
            raise ParseError(line_offset + 1, 1, "lcs constraints need a system section")
        system = LinearSystem(tuple(tuple(r) for r, _ in system_rows), tuple(b for _, b in system_rows))
        for key, (i, j, ln, col) in lcs_refs.items():
            if key in tables:
                raise ParseError(ln, col, "duplicate constraints for an edge")
            try:
                tables[key] = {(): list(lcs_edge_constraints(system, i - 1, j - 1))}
            except (IndexError, ValueError):
                raise ParseError(ln, col, f"lcs {i} {j} is not an entry of the system") from None
    if len(set(edges)) != len(edges):
        raise ParseError(line_offset + 1, 1, "duplicate edge")
    missing = [e for e in edges if e not in tables]
    if missing:
        raise ParseError(line_offset + 1, 1, f"no constraints for edge {missing[0][0]} {missing[0][1]}")
    try:
        return TailoredGame(
            tuple(vertices), tuple(edges), tuple(weights), readable, unreadable, tuple(tables[e] for e in edges)
        )
    except (ValueError, TypeError) as exc:
        raise ParseError(line_offset + 1, 1, str(exc)) from None


def _format_vector(alpha: frozenset, order: list[str]) -> str:
    return "[" + " ".join(g for g in order if g in alpha) + "]"


def write_game(game: TailoredGame) -> str:
    out = ["vertices: " + " ".join(game.vertices), "edges:"]
    out += [f"  {x} {y} {format_rational(w)}" for (x, y), w in zip(game.edges, game.weights)]
    out.append("lengths:")
    out += [f"  {v} {game.readable[v]} {game.unreadable[v]}" for v in game.vertices]
    out.append("constraints:")
    for e, (x, y) in enumerate(game.edges):
        out.append(f"  {x} {y} table")
        order = [J] + game.edge_generators(e)
        for key in itertools.product((0, 1), repeat=len(game.edge_readables(e))):
            bits = "".join(map(str, key)) or "-"
            vecs = " ".join(_format_vector(a, order) for a in game.tables[e][key])
            out.append(f"    {bits} -> {vecs}".rstrip())
    return "\n".join(out) + "\n"


# -------------------------------------------------------------------- tests


class _Scanner:
    """Tokens with positions; punctuation ; , { } [ ] = are single tokens."""

    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, int, int]] = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            for m in re.finditer(r"[;,{}\[\]=]|[^\s;,{}\[\]=]+", body):
                self.toks.append((m.group(0), ln, m.start() + 1))
            self.toks.append(("\n", ln, len(body) + 1))
        self.i = 0

    def peek(self, skip_nl: bool = True) -> tuple[str, int, int]:
        if skip_nl:
            while self.i < len(self.toks) and self.toks[self.i][0] == "\n":
                self.i += 1
        if self.i >= len(self.toks):
            last = self.toks[-1] if self.toks else ("", 1, 1)
            return ("", last[1], last[2])
        return self.toks[self.i]

    def next(self, skip_nl: bool = True) -> tuple[str, int, int]:
        tok = self.peek(skip_nl)
        self.i += 1
        return tok

    def expect(self, value: str) -> tuple[str, int, int]:
        tok = self.next()
        if tok[0] != value:
            raise ParseError(tok[1], tok[2], f"expected {value!r}, got {tok[0] or 'end of file'!r}")
        return tok

    def words_until(self, alphabet: Alphabet, stops: set[str], sep: str = ";") -> list[Word]:
        """Words separated by ``sep`` up to (not including) a stop token."""
        out = []
        current: list[tuple[str, int, int]] = []
        while True:
            tok = self.peek()
            if tok[0] in stops or tok[0] == "":
                break
            self.next()
            if tok[0] == sep:
                if not current:
                    raise ParseError(tok[1], tok[2], "empty word")
                out.append(_parse_word(alphabet, " ".join(t for t, _, _ in current), current[0][1], current[0][2]))
                current = []
            elif tok[0] in "{}[],=":
                raise ParseError(tok[1], tok[2], f"unexpected {tok[0]!r}")
            else:
                current.append(tok)
        if current:
            out.append(_parse_word(alphabet, " ".join(t for t, _, _ in current), current[0][1], current[0][2]))
        return out


def _chunks(sc: _Scanner, stop: str) -> list[list[tuple[str, int, int]]]:
    """Raw ';'-separated token groups up to ``stop``."""
    out: list[list[tuple[str, int, int]]] = [[]]
    while sc.peek()[0] not in (stop, ""):
        tok = sc.next()
        if tok[0] == ";":
            out.append([])
        else:
            out[-1].append(tok)
    if any(not c for c in out):
        tok = sc.peek()
        raise ParseError(tok[1], tok[2], "empty entry in list")
    return out


def parse_test(text: str) -> SubgroupTest:
    from .compiler import CompiledChallenge

    sc = _Scanner(text)
    tok = sc.next()
    if tok[0] != "alphabet":
        raise ParseError(tok[1], tok[2], "a test starts with 'alphabet a,b,...'")
    names = []
    while True:
        t = sc.next(skip_nl=False)
        if t[0] in ("\n", ""):
            break
        if t[0] != ",":
            names.append(t[0])
    try:
        alphabet = Alphabet(names)
    except ValueError as exc:
        raise ParseError(tok[1], tok[2], str(exc)) from None
    challenges, weights = [], []
    game = None
    while sc.peek()[0]:
        kw, ln, col = sc.next()
        if kw == "game":
            sc.expect("{")
            start = ln
            body = []
            lines = text.splitlines()
            k = ln  # lines after the 'game {' line, up to a lone '}'
            while k < len(lines) and lines[k].strip() != "}":
                body.append(lines[k])
                k += 1
            if k >= len(lines):
                raise ParseError(ln, col, "unterminated game block")
            game = parse_game("\n".join(body), line_offset=start)
            while sc.peek()[1] <= k:
                sc.next()
            sc.expect("}")
            continue
        if kw not in ("challenge", "builtin"):
            raise ParseError(ln, col, f"expected 'challenge' or 'builtin', got {kw!r}")
        w = sc.next()
        weights.append(parse_rational(w[0], w[1], w[2]))
        if kw == "challenge":
            sc.expect("{")
            sc.expect("window:")
            window = sc.words_until(alphabet, {"accept:"})
            sc.expect("accept:")
            accepted = []
            while sc.peek()[0] == "{":
                sc.next()
                accepted.append(sc.words_until(alphabet, {"}"}, sep=","))
                sc.expect("}")
                if sc.peek()[0] == ";":
                    sc.next()
            sc.expect("}")
            try:
                challenges.append(TableChallenge(window, accepted))
            except ValueError as exc:
                raise ParseError(ln, col, str(exc)) from None
            continue
        kind, kl, kc = sc.next()
        if kind in ("verification", "separation"):
            lists = {}
            while sc.peek(skip_nl=False)[0] in ("R", "L"):
                key = sc.next()[0]
                sc.expect("=")
                sc.expect("[")
                lists[key] = sc.words_until(alphabet, {"]"})
                sc.expect("]")
            if "R" not in lists or (kind == "verification" and "L" in lists):
                raise ParseError(kl, kc, f"{kind} takes R=[...]" + (" L=[...]" if kind == "separation" else ""))
            challenges.append(ExactChallenge(lists["R"], lists.get("L", [])))
        elif kind == "clause":
            sc.expect("[")
            lits = []
            for chunk in _chunks(sc, "]"):
                first = chunk[0]
                neg = first[0].startswith("~")
                words = [first[0][1:] if neg else first[0]] + [t for t, _, _ in chunk[1:]]
                lits.append((_parse_word(alphabet, " ".join(words).strip(), first[1], first[2]), neg))
            sc.expect("]")
            if not lits:
                raise ParseError(kl, kc, "empty clause")
            challenges.append(ClauseChallenge(lits))
        elif kind == "compiled":
            if game is None:
                raise ParseError(kl, kc, "compiled challenges need a preceding game block")
            t = sc.next()
            m = re.fullmatch(r"edge", t[0])
            sc.expect("=")
            x = sc.next()
            sc.expect(",")
            y = sc.next()
            if not m or (x[0], y[0]) not in game.edges:
                raise ParseError(t[1], t[2], "expected edge=x,y naming an edge of the game")
            challenges.append(CompiledChallenge(game, game.edges.index((x[0], y[0])), alphabet))
        else:
            raise ParseError(kl, kc, f"unknown builtin {kind!r}")
    try:
        return SubgroupTest(alphabet, tuple(challenges), tuple(weights))
    except ValueError as exc:
        raise ParseError(1, 1, str(exc)) from None


def write_test(T: SubgroupTest) -> str:
    from .compiler import CompiledChallenge

    A = T.alphabet
    out = ["alphabet " + ",".join(A.names)]
    games = {id(c.game): c.game for c in T.challenges if isinstance(c, CompiledChallenge)}
    if len(games) > 1:
        raise ValueError("a test file holds at most one game")
    if games:
        out.append("game {")
        out += ["  " + ln for ln in write_game(next(iter(games.values()))).splitlines()]
        out.append("}")
    for mu, c in zip(T.weights, T.challenges):
        q = format_rational(mu)
        fmt = lambda ws: "; ".join(A.format(w) for w in ws)
        if isinstance(c, CompiledChallenge):
            x, y = c.game.edges[c.e]
            out.append(f"builtin {q} compiled edge={x},{y}")
        elif isinstance(c, ExactChallenge):
            if c.forbidden:
                out.append(f"builtin {q} separation R=[{fmt(c.required)}] L=[{fmt(c.forbidden)}]")
            else:
                out.append(f"builtin {q} verification R=[{fmt(c.required)}]")
        elif isinstance(c, ClauseChallenge):
            lits = "; ".join(("~" if neg else "") + A.format(w) for w, neg in c.literals)
            out.append(f"builtin {q} clause [{lits}]")
        elif isinstance(c, TableChallenge):
            sets = "; ".join(
                "{" + ", ".join(A.format(w) for w in sorted(a)) + "}"
                for a in sorted(c.accepted, key=lambda s: (len(s), sorted(s)))
            )
            out.append(f"challenge {q} {{ window: {fmt(c.window)} accept: {sets} }}")
        else:
            raise ValueError(f"cannot serialize {type(c).__name__}")
    return "\n".join(out) + "\n"
