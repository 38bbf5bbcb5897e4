"""Edge-path groupoid: homotopy classes of paths via a spanning tree.

A path ``p`` from ``u`` to ``v`` corresponds to the group word of the loop
``tree(u) . p . tree(v)^-1``; tree edges contribute nothing, every other
edge contributes its generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .complex import (
    Complex2,
    EdgePath,
    PathError,
    SpanningTree,
    check_valid,
    concat,
    invert_path,
    reduce_path,
    spanning_tree,
    subdivide_path,
)
from .wordproblem import DEFAULT_LIMITS, Decision, Limits, is_trivial
from .words import Presentation, Word, cyclic_reduce, free_reduce


@dataclass(frozen=True)
class EdgePathGroup:
    """A complex with its spanning tree and the induced presentation."""

    complex: Complex2
    tree: SpanningTree
    presentation: Presentation

    @cached_property
    def letter(self) -> dict[str, tuple[str, int] | None]:
        gens = set(self.presentation.generators)
        out: dict[str, tuple[str, int] | None] = {}
        for e in self.complex.edges:
            if e.positive:
                out[e.id] = (e.id, 1) if e.id in gens else None
            else:
                out[e.id] = (e.inverse, -1) if e.inverse in gens else None
        return out

    def path_to_word(self, p: EdgePath) -> Word:
        return path_to_word(self.complex, self.tree, p, self.letter)

    def word_to_path(self, w: Word, start: str | None = None, end: str | None = None) -> EdgePath:
        return word_to_path(self.complex, self.tree, w, start, end)


def pi1_presentation(c: Complex2, basepoint: str | None = None) -> Presentation:
    return edge_path_group(c, basepoint).presentation


def edge_path_group(c: Complex2, basepoint: str | None = None) -> EdgePathGroup:
    """Spanning tree and presentation of ``c``, memoized on the complex."""
    if basepoint is None or basepoint == c.basepoint:
        group = c.__dict__.get("_edge_path_group")
        if group is None:
            group = c.__dict__["_edge_path_group"] = _edge_path_group(c, c.basepoint)
        return group
    return _edge_path_group(c, basepoint)


def _edge_path_group(c: Complex2, basepoint: str) -> EdgePathGroup:
    check_valid(c)
    tree = spanning_tree(c, basepoint)
    gens = tuple(
        e.id for e in c.positive_edges if e.id not in tree.edges and e.inverse not in tree.edges
    )
    gen_set = set(gens)
    relators = []
    for f in c.faces:
        word = []
        for eid in f.boundary:
            e = c.edge_map[eid]
            if e.positive and eid in gen_set:
                word.append((eid, 1))
            elif not e.positive and e.inverse in gen_set:
                word.append((e.inverse, -1))
        relators.append(cyclic_reduce(word))
    return EdgePathGroup(c, tree, Presentation(gens, tuple(relators)))


def path_to_word(c: Complex2, tree: SpanningTree, p: EdgePath, letter=None) -> Word:
    word = []
    for eid in p.edges:
        if letter is not None:
            lt = letter[eid]
            if lt is not None:
                word.append(lt)
            continue
        if tree.contains(c, eid):
            continue
        e = c.edge_map[eid]
        word.append((eid, 1) if e.positive else (e.inverse, -1))
    return tuple(word)


def word_to_path(
    c: Complex2, tree: SpanningTree, w: Word, start: str | None = None, end: str | None = None
) -> EdgePath:
    """A reduced path from ``start`` to ``end`` whose word is ``w``."""
    start = tree.root if start is None else start
    end = tree.root if end is None else end
    path = invert_path(c, tree.paths[start])
    for gen, sign in w:
        e = c.edge_map.get(gen)
        if e is None or not e.positive or tree.contains(c, gen):
            raise ValueError(f"unknown generator {gen!r}")
        eid = gen if sign > 0 else e.inverse
        edge = c.edge_map[eid]
        path = concat(path, tree.paths[edge.source])
        path = concat(path, EdgePath(edge.source, (eid,), edge.target))
        path = concat(path, invert_path(c, tree.paths[edge.target]))
    path = concat(path, tree.paths[end])
    return reduce_path(c, path)


def homotopic(
    c: Complex2, p: EdgePath, q: EdgePath, limits: Limits = DEFAULT_LIMITS, group: EdgePathGroup | None = None
) -> Decision:
    """Decide ``p ~ q`` rel endpoints; the answer may be UNKNOWN."""
    if p.start != q.start or p.end != q.end:
        raise PathError("paths do not share endpoints")
    group = group or edge_path_group(c)
    loop = concat(p, invert_path(c, q))
    return is_trivial(free_reduce(group.path_to_word(loop)), group.presentation, limits)


def carry_words(coarse: Complex2, fine: Complex2, words) -> list[Word]:
    """Rewrite basepoint loop words of ``coarse`` over its subdivision ``fine``."""
    group, fine_group = edge_path_group(coarse), edge_path_group(fine)
    return [fine_group.path_to_word(subdivide_path(coarse, group.word_to_path(w))) for w in words]
