"""Words over signed generators and finite presentations.

A word is a tuple of ``(generator, sign)`` letters with sign in {+1, -1}.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = tuple[str, int]
Word = tuple[Letter, ...]

_TOKEN = re.compile(r"^([^\s,^]+)(?:\^(-?\d+))?$")


def letters(word: Iterable[Letter]) -> Word:
    word = tuple(word)
    for gen, sign in word:
        if sign not in (1, -1):
            raise ValueError(f"bad sign {sign} on {gen}")
    return word


def inverse(word: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(word))


def free_reduce(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, s in word:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def cyclic_reduce(word: Iterable[Letter]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == (w[j][0], -w[j][1]):
        i += 1
        j -= 1
    return w[i : j + 1]


def multiply(*words: Word) -> Word:
    return free_reduce(letter for w in words for letter in w)


def power(word: Word, n: int) -> Word:
    if n < 0:
        return power(inverse(word), -n)
    return free_reduce(word * n)


def exponent_vector(word: Word, generators: Sequence[str]) -> list[int]:
    index = {g: i for i, g in enumerate(generators)}
    vec = [0] * len(generators)
    for g, s in word:
        vec[index[g]] += s
    return vec


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(g if s == 1 else f"{g}^-1" for g, s in word)


def parse_word(text: str) -> Word:
    """Parse ``a b^-1 a`` (also ``a,b^-1``, ``a^3``); ``1`` is the identity."""
    out: list[Letter] = []
    for tok in text.replace(",", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse word token {tok!r}")
        gen, exp = m.group(1), int(m.group(2) or 1)
        sign = 1 if exp > 0 else -1
        out.extend([(gen, sign)] * abs(exp))
    return tuple(out)


def shortlex_key(word: Word, generators: Sequence[str]):
    """Shortlex order with letters ranked a < a^-1 < b < b^-1 < ..."""
    rank = {g: 2 * i for i, g in enumerate(generators)}
    return (len(word), [rank[g] + (s < 0) for g, s in word])


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    _hash: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        gens = set(self.generators)
        if any(not g for g in self.generators):
            raise ValueError("empty generator name")
        if len(gens) != len(self.generators):
            raise ValueError("duplicate generator name")
        for r in self.relators:
            for g, s in r:
                if g not in gens:
                    raise ValueError(f"relator uses unknown generator {g!r}")
                if s not in (1, -1):
                    raise ValueError(f"bad sign {s}")
        object.__setattr__(self, "_hash", hash((self.generators, self.relators)))

    def __hash__(self) -> int:
        return self._hash

    def check_word(self, word: Word) -> None:
        gens = set(self.generators)
        for g, _ in word:
            if g not in gens:
                raise ValueError(f"unknown generator {g!r}")

    def __str__(self) -> str:
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"<{','.join(self.generators)} | {rels}>"
