import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from pathcover import corpus, cover, groupoid, verification, wordproblem  # noqa: E402
from pathcover.complex import subdivide  # noqa: E402
from pathcover.wordproblem import Answer  # noqa: E402

# Session-wide record of every is_trivial query: key -> set of answers.
TRIVIALITY_LOG: dict = {}
UNKNOWN_WITHOUT_LIMIT: list = []
ACCEPTANCE_LINES: list[str] = []

_original_is_trivial = wordproblem.is_trivial


@functools.wraps(_original_is_trivial)
def _audited_is_trivial(word, pres, limits=wordproblem.DEFAULT_LIMITS):
    d = _original_is_trivial(word, pres, limits)
    key = (wordproblem.free_reduce(word), pres)
    TRIVIALITY_LOG.setdefault(key, set()).add(d.answer)
    if d.answer is Answer.UNKNOWN and not d.exhausted:
        UNKNOWN_WITHOUT_LIMIT.append(key)
    return d


for _mod in (wordproblem, groupoid, cover, verification):
    _mod.is_trivial = _audited_is_trivial


def pytest_collection_modifyitems(items):
    # Acceptance runs last so the soundness audit sees the whole suite.
    items.sort(key=lambda item: "test_acceptance" in item.nodeid)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cx():
    """Corpus complexes by name, loaded once."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = corpus.load(name)
        return cache[name]

    return get


@functools.lru_cache(maxsize=None)
def subdivided(name: str, times: int):
    c = corpus.load(name)
    for _ in range(times):
        c = subdivide(c)
    return c
