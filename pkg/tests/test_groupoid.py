import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_cancel, random_walk
from pathcover import corpus
from pathcover.complex import PathError, concat_reduce, reduce_path
from pathcover.groupoid import edge_path_group, homotopic, pi1_presentation
from pathcover.wordproblem import Answer
from pathcover.words import format_word, free_reduce, multiply, parse_word


def test_presentation_examples(cx):
    assert str(pi1_presentation(cx("circle"))) == "<a | >"
    assert str(pi1_presentation(cx("torus"))) == "<a,b | a b a^-1 b^-1>"
    assert str(pi1_presentation(cx("rp2"))) == "<a | a a>"


def test_presentation_deterministic(cx):
    for name in corpus.names():
        assert pi1_presentation(corpus.load(name)) == pi1_presentation(corpus.load(name))


def test_generators_are_non_tree_edges_in_order(cx):
    c = cx("rp2_6")
    g = edge_path_group(c)
    non_tree = [e.id for e in c.positive_edges if not g.tree.contains(c, e.id)]
    assert list(g.presentation.generators) == non_tree
    assert len(g.presentation.relators) == len(c.faces)


def test_path_to_word_examples(cx):
    t = edge_path_group(cx("torus"))
    assert format_word(t.path_to_word(cx("torus").path("v", ["a", "b", "a^-1", "b^-1"]))) == "a b a^-1 b^-1"
    tri = cx("triangle")
    g = edge_path_group(tri)
    (gen,) = g.presentation.generators
    loop = tri.path("v1", ["a", "b", "c"])
    w = g.path_to_word(loop)
    assert len(w) == 1 and w[0][0] == gen
    for v, p in g.tree.paths.items():
        assert g.path_to_word(p) == ()


def test_word_to_path_examples(cx):
    c = cx("circle")
    g = edge_path_group(c)
    assert g.word_to_path(()) == c.path("v")
    assert g.word_to_path(parse_word("a")) == c.path("v", ["a"])


@pytest.mark.parametrize("name", ["torus", "triangle", "rp2_6", "wedge3", "s3"])
def test_word_path_round_trip(name):
    c = corpus.load(name)
    g = edge_path_group(c)
    gens = g.presentation.generators
    rng = random.Random(name)
    for _ in range(100):
        w = tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 8)))
        p = g.word_to_path(w)
        assert p.start == p.end == c.basepoint
        w2 = g.path_to_word(p)
        assert w2 == free_reduce(w)
        assert g.path_to_word(g.word_to_path(w2)) == w2


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["torus", "rp2_6", "triangle", "wedge2", "s3"]), st.integers(0, 2**32),
       st.integers(0, 10), st.integers(0, 10))
def test_path_to_word_is_homomorphism(name, seed, lp, lq):
    c = corpus.load(name)
    g = edge_path_group(c)
    rng = random.Random(seed)
    p = random_walk(c, rng, lp)
    q = random_walk(c, rng, lq, start=p.end)
    assert free_reduce(g.path_to_word(concat_reduce(c, p, q))) == \
        free_reduce(multiply(g.path_to_word(p), g.path_to_word(q)))


def test_homotopic_examples(cx):
    disk, circle, torus = cx("disk"), cx("circle"), cx("torus")
    assert homotopic(disk, disk.path("v", ["a"]), disk.path("v")).answer is Answer.YES
    assert homotopic(circle, circle.path("v", ["a"]), circle.path("v")).answer is Answer.NO
    ab, ba = torus.path("v", ["a", "b"]), torus.path("v", ["b", "a"])
    assert homotopic(torus, ab, ba).answer is Answer.YES


def test_homotopic_endpoint_mismatch(cx):
    tri = cx("triangle")
    with pytest.raises(PathError):
        homotopic(tri, tri.path("v1", ["a"]), tri.path("v1"))


@pytest.mark.parametrize("name", ["triangle", "wedge2", "wedge3", "circle"])
def test_graph_homotopy_is_free_reduction(name):
    c = corpus.load(name)
    rng = random.Random(7)
    checked = 0
    while checked < 150:
        p = random_walk(c, rng, rng.randint(0, 7))
        if rng.random() < 0.5:
            # same class: insert a backtrack somewhere
            i = rng.randint(0, len(p.edges))
            here = p.start if i == 0 else c.target(p.edges[i - 1])
            e = rng.choice(c.outgoing[here]).id
            q = c.path(p.start, p.edges[:i] + (e, c.inv(e)) + p.edges[i:])
        else:
            q = random_walk(c, rng, rng.randint(0, 7))
        if q.end != p.end:
            continue
        checked += 1
        expected = naive_cancel(p.edges, c.inv) == naive_cancel(q.edges, c.inv)
        assert (homotopic(c, p, q).answer is Answer.YES) == expected
        assert reduce_path(c, p).edges == tuple(naive_cancel(p.edges, c.inv))


@pytest.mark.parametrize("name", ["rp2", "torus", "s3", "rp2_6"])
def test_homotopic_is_equivalence(name):
    c = corpus.load(name)
    g = edge_path_group(c)
    rng = random.Random(11)
    paths = [random_walk(c, rng, rng.randint(0, 5)) for _ in range(25)]
    loops = [p for p in paths if p.end == c.basepoint][:12]
    rel = {}
    for i, p in enumerate(loops):
        for j, q in enumerate(loops):
            d = homotopic(c, p, q, group=g)
            assert d.known
            rel[i, j] = d.answer is Answer.YES
    n = len(loops)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]
