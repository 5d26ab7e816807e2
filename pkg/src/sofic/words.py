"""Reduced words in a free group on a finite ordered alphabet."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

Letter = tuple[int, int]  # (generator index, +1 or -1)

_RESERVED = set(" \t\n;,{}[]=^#|:~")


class Alphabet:
    """An ordered set of generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for name in names:
            if not name or any(ch in _RESERVED for ch in name):
                raise ValueError(f"invalid generator name {name!r}")
            if name == "e":
                raise ValueError("'e' is reserved for the identity word")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({','.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> Word:
        return Word(((self.index(name), 1),))

    def parse(self, text: str) -> Word:
        """Parse ``a b^-1 a``; ``e`` is the identity."""
        tokens = text.split()
        if tokens == ["e"]:
            return IDENTITY
        letters = []
        for tok in tokens:
            if tok.endswith("^-1"):
                letters.append((self.index(tok[:-3]), -1))
            else:
                letters.append((self.index(tok), 1))
        return Word(letters)

    def format(self, w: Word) -> str:
        if not w.letters:
            return "e"
        return " ".join(
            self.names[g] if s == 1 else f"{self.names[g]}^-1" for g, s in w.letters
        )


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in letters:
        if s not in (1, -1) or g < 0:
            raise ValueError(f"bad letter {(g, s)!r}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


class Word:
    """A freely reduced word; ordered by length, then lexicographically."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = free_reduce(letters)
        self._hash = hash(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple[int, tuple[Letter, ...]]:
        return (len(self.letters), self.letters)

    def __lt__(self, other: Word) -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: Word) -> bool:
        return self.sort_key() <= other.sort_key()

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> Word:
        return Word((g, -s) for g, s in reversed(self.letters))

    def is_identity(self) -> bool:
        return not self.letters

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def __repr__(self) -> str:
        return f"Word({self.letters!r})"


IDENTITY = Word()

WordLike = Union[Word, Letter]


def as_word(x: WordLike) -> Word:
    return x if isinstance(x, Word) else Word((x,))


def reduce(letters: Sequence[Letter], alphabet: Alphabet | None = None) -> Word:
    if alphabet is not None:
        for g, _ in letters:
            if g >= len(alphabet):
                raise ValueError(f"generator index {g} outside the alphabet")
    return Word(letters)


def conjugate(s: WordLike, w: Word) -> Word:
    """s w s^-1."""
    s = as_word(s)
    return s * w * s.inverse()


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def count_occurrences(g: int, w: Word) -> int:
    """Number of letters g or g^-1 in the reduced word."""
    return sum(1 for h, _ in w.letters if h == g)


def signed_letters(n_generators: int) -> list[Letter]:
    return [(g, s) for g in range(n_generators) for s in (-1, 1)]


def ball(alphabet: Alphabet | int, radius: int) -> list[Word]:
    """All reduced words of length at most ``radius``, in canonical order."""
    n = alphabet if isinstance(alphabet, int) else len(alphabet)
    letters = signed_letters(n)
    layer = [IDENTITY]
    out = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for w in layer:
            last = w.letters[-1] if w.letters else None
            for g, s in letters:
                if last is not None and last == (g, -s):
                    continue
                nxt.append(Word(w.letters + ((g, s),)))
        layer = nxt
        out.extend(nxt)
    return sorted(out)
