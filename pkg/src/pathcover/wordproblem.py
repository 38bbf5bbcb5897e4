"""Coset enumeration (HLT with lookahead) and three-valued triviality tests.

Coset ids exposed by :class:`CosetTable` are 1-based; coset 1 is the
subgroup itself.  Internally the enumerator works 0-based.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from . import lattice
from .words import Presentation, Word, cyclic_reduce, exponent_vector, free_reduce


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Decision:
    """Answer of a decision procedure plus how it was reached.

    ``exhausted`` names the limit that ran out whenever the answer is UNKNOWN.
    """

    answer: Answer
    method: str
    exhausted: str | None = None

    @property
    def known(self) -> bool:
        return self.answer is not Answer.UNKNOWN

    def __str__(self) -> str:
        if self.exhausted:
            return f"{self.answer.value} ({self.method}; exhausted {self.exhausted})"
        return f"{self.answer.value} ({self.method})"


@dataclass(frozen=True)
class Limits:
    max_cosets: int = 20_000
    max_steps: int = 200_000

    def __post_init__(self):
        if self.max_cosets <= 0 or self.max_steps <= 0:
            raise ValueError("limits must be positive")


DEFAULT_LIMITS = Limits()


class IncompleteTable(ValueError):
    pass


class EnumerationExhausted(RuntimeError):
    def __init__(self, limit: str):
        super().__init__(f"coset enumeration exhausted {limit}")
        self.limit = limit


@dataclass(frozen=True)
class CosetTable:
    presentation: Presentation
    subgroup: tuple[Word, ...]
    rows: tuple[tuple[int | None, ...], ...]
    exhausted: str | None = None

    @property
    def complete(self) -> bool:
        return self.exhausted is None

    @property
    def status(self) -> str:
        return "complete" if self.complete else f"exhausted({self.exhausted})"

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def index(self) -> int:
        if not self.complete:
            raise IncompleteTable("index of an incomplete table is unknown")
        return len(self.rows)

    @cached_property
    def _columns(self) -> dict[str, int]:
        return {g: 2 * i for i, g in enumerate(self.presentation.generators)}

    def column(self, gen: str, sign: int) -> int:
        return self._columns[gen] + (sign < 0)

    def act(self, coset: int, gen: str, sign: int = 1) -> int | None:
        return self.rows[coset - 1][self.column(gen, sign)]

    def trace(self, word: Word, start: int = 1) -> int | None:
        """Image of ``start`` under ``word``, or None where the table is undefined."""
        cols = self._columns
        k: int | None = start
        for g, s in word:
            k = self.rows[k - 1][cols[g] + (s < 0)]
            if k is None:
                return None
        return k

    def representatives(self) -> dict[int, Word]:
        """Shortlex-least word reaching each coset from coset 1."""
        gens = self.presentation.generators
        reps: dict[int, Word] = {1: ()}
        queue = deque([1])
        while queue:
            k = queue.popleft()
            for i, g in enumerate(gens):
                for s in (1, -1):
                    nxt = self.rows[k - 1][2 * i + (s < 0)]
                    if nxt is not None and nxt not in reps:
                        reps[nxt] = reps[k] + ((g, s),)
                        queue.append(nxt)
        return reps


def trace_word(table: CosetTable, word: Word, start: int = 1) -> int:
    if not table.complete:
        raise IncompleteTable(f"table is {table.status}")
    table.presentation.check_word(word)
    result = table.trace(word, start)
    assert result is not None
    return result


class _Full(Exception):
    def __init__(self, limit: str):
        self.limit = limit


class _Enumerator:
    """Mutable HLT state; confined to a single enumeration."""

    def __init__(self, pres: Presentation, limits: Limits):
        self.pres = pres
        self.limits = limits
        self.col = {g: 2 * i for i, g in enumerate(pres.generators)}
        self.ncols = 2 * len(pres.generators)
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.steps = 1
        rels = {self.encode(cyclic_reduce(r)) for r in pres.relators}
        self.relators = sorted((r for r in rels if r), key=lambda r: (len(r), r))

    def encode(self, word: Word) -> tuple[int, ...]:
        return tuple(self.col[g] + (s < 0) for g, s in word)

    def rep(self, k: int) -> int:
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def is_live(self, k: int) -> bool:
        return self.parent[k] == k

    def define(self, alpha: int, x: int) -> int:
        if self.live >= self.limits.max_cosets:
            raise _Full(f"max_cosets={self.limits.max_cosets}")
        if self.steps >= self.limits.max_steps:
            raise _Full(f"max_steps={self.limits.max_steps}")
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(beta)
        self.live += 1
        self.steps += 1
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha
        return beta

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                f1, d1 = self.rep(g), self.rep(d)
                if table[f1][x] is not None:
                    self._merge(d1, table[f1][x], queue)
                elif table[d1][x ^ 1] is not None:
                    self._merge(f1, table[d1][x ^ 1], queue)
                else:
                    table[f1][x] = d1
                    table[d1][x ^ 1] = f1

    def scan_and_fill(self, alpha: int, word: Sequence[int], fill: bool = True) -> None:
        table = self.table
        f = b = alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def trace_and_define(self, word: Sequence[int]) -> int:
        k = 0
        for x in word:
            nxt = self.table[k][x]
            k = self.define(k, x) if nxt is None else nxt
        return k

    def lookahead(self) -> None:
        for beta in range(len(self.table)):
            if not self.is_live(beta):
                continue
            for r in self.relators:
                self.scan_and_fill(beta, r, fill=False)
                if not self.is_live(beta):
                    break

    def attempt(self, unit) -> None:
        """Run ``unit``; when the table fills, look ahead once and retry."""
        while True:
            try:
                unit()
                return
            except _Full as full:
                if full.limit.startswith("max_steps"):
                    raise
                before = self.live
                self.lookahead()
                if self.live >= before:
                    raise

    def process(self, alpha: int) -> None:
        for r in self.relators:
            self.scan_and_fill(alpha, r)
            if not self.is_live(alpha):
                return
        for x in range(self.ncols):
            if self.table[alpha][x] is None:
                self.define(alpha, x)

    def run(self, subgroup: Sequence[Word], watch: Word | None = None) -> tuple[str | None, int | None]:
        """Enumerate; return (exhausted limit or None, watched coset or None).

        With ``watch``, stop as soon as the path of that word from coset 1
        closes up, which proves the word lies in the subgroup.
        """
        watched = None
        try:
            for w in subgroup:
                enc = self.encode(free_reduce(w))
                if enc:
                    self.attempt(lambda: self.scan_and_fill(0, enc))
            if watch is not None:
                enc = self.encode(watch)
                holder = []
                self.attempt(lambda: holder.append(self.trace_and_define(enc)))
                watched = holder[-1]
                if self.rep(watched) == 0:
                    return None, 0
            alpha = 0
            while alpha < len(self.table):
                if self.is_live(alpha):
                    self.attempt(lambda: self.process(alpha))
                    if watched is not None and self.rep(watched) == 0:
                        return None, 0
                alpha += 1
        except _Full as full:
            return full.limit, (self.rep(watched) if watched is not None else None)
        return None, (self.rep(watched) if watched is not None else None)

    def freeze(self, subgroup: Sequence[Word], exhausted: str | None) -> CosetTable:
        live = [k for k in range(len(self.table)) if self.is_live(k)]
        number = {k: i + 1 for i, k in enumerate(live)}
        rows = []
        for k in live:
            row = []
            for x in range(self.ncols):
                d = self.table[k][x]
                row.append(None if d is None else number[self.rep(d)])
            rows.append(tuple(row))
        if exhausted is None and any(None in row for row in rows):
            raise AssertionError("HLT finished with an incomplete table")
        return CosetTable(self.pres, tuple(subgroup), tuple(rows), exhausted)


def todd_coxeter(
    pres: Presentation, subgroup: Sequence[Word] = (), limits: Limits = DEFAULT_LIMITS
) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the presented group.

    Exhaustion is reported through the table's status, never raised.
    """
    for w in subgroup:
        pres.check_word(w)
    enum_ = _Enumerator(pres, limits)
    exhausted, _ = enum_.run(subgroup)
    return enum_.freeze(subgroup, exhausted)


@lru_cache(maxsize=256)
def _trivial_table(pres: Presentation, limits: Limits) -> CosetTable:
    return todd_coxeter(pres, (), limits)


@lru_cache(maxsize=256)
def relator_lattice(pres: Presentation) -> tuple[tuple[int, ...], ...]:
    rows = [exponent_vector(r, pres.generators) for r in pres.relators]
    hnf = lattice.hermite_normal_form(rows, len(pres.generators))
    return tuple(tuple(r) for r in hnf)


def abelian_image(word: Word, pres: Presentation) -> tuple[int, ...]:
    """Canonical form of the word's image in the abelianization."""
    return lattice.residue(exponent_vector(word, pres.generators), relator_lattice(pres))


def abelianization_rejects(word: Word, pres: Presentation) -> bool:
    """True when the exponent-sum vector is outside the relator lattice.

    A True answer proves the word is nontrivial; False says nothing.
    """
    pres.check_word(word)
    return any(abelian_image(word, pres))


def is_trivial(word: Word, pres: Presentation, limits: Limits = DEFAULT_LIMITS) -> Decision:
    """Decide whether ``word`` is the identity; UNKNOWN names the exhausted limit."""
    pres.check_word(word)
    return _decide(free_reduce(word), pres, limits)


@lru_cache(maxsize=1 << 16)
def _decide(w: Word, pres: Presentation, limits: Limits) -> Decision:
    if not w:
        return Decision(Answer.YES, "free reduction")
    if not any(pres.relators):
        return Decision(Answer.NO, "free group, reduced word nonempty")
    if abelianization_rejects(w, pres):
        return Decision(Answer.NO, "abelianization")
    table = _trivial_table(pres, limits)
    if table.complete:
        if table.trace(w, 1) == 1:
            return Decision(Answer.YES, "coset table")
        return Decision(Answer.NO, "coset table")
    # Infinite or large group: enumerate along the word and wait for it to close.
    enum_ = _Enumerator(pres, limits)
    exhausted, end = enum_.run((), watch=w)
    if end == 0:
        return Decision(Answer.YES, "coset enumeration closed the word")
    if exhausted is None:
        return Decision(Answer.NO, "coset table")
    return Decision(Answer.UNKNOWN, "coset enumeration", exhausted)


def in_subgroup(word: Word, table: CosetTable) -> bool:
    return trace_word(table, word, 1) == 1


def is_normal(table: CosetTable) -> bool:
    """A subgroup is normal iff each of its generators fixes every coset."""
    return all(
        trace_word(table, h, k) == k
        for h in table.subgroup
        for k in range(1, len(table) + 1)
    )


__all__ = [
    "Answer",
    "CosetTable",
    "Decision",
    "DEFAULT_LIMITS",
    "EnumerationExhausted",
    "IncompleteTable",
    "Limits",
    "abelian_image",
    "abelianization_rejects",
    "in_subgroup",
    "is_normal",
    "is_trivial",
    "relator_lattice",
    "todd_coxeter",
    "trace_word",
]
