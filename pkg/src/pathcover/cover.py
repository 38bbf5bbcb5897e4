"""Covering complexes: the space of path classes with its endpoint projection.

A cover vertex ``v@k`` stands for the classes of paths from the basepoint
to base vertex ``v`` whose group word lies in coset ``k`` (or, for a
truncated ball, in path class number ``k``).  An edge ``e`` leaving sheet
``k`` lands in sheet ``k . g(e)``, where ``g(e)`` is the generator of ``e``
(trivial for tree edges).
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .complex import Complex2, EdgePath, Star
from .groupoid import EdgePathGroup, edge_path_group
from .wordproblem import (
    DEFAULT_LIMITS,
    Answer,
    CosetTable,
    EnumerationExhausted,
    Limits,
    abelian_image,
    is_normal,
    is_trivial,
    todd_coxeter,
    trace_word,
)
from .words import Word, free_reduce, inverse, multiply


class IncompleteCover(ValueError):
    """Raised when an operation needs the whole cover but got a truncated ball."""


class FrontierEscape(IncompleteCover):
    pass


class NotNormal(ValueError):
    pass


class NonProperStar(ValueError):
    """The star is the whole complex; it cannot stand in for a small open set."""


def vertex_id(k: int, v: str) -> str:
    return f"{v}@{k}"


@dataclass(frozen=True, eq=False)
class CoverComplex:
    base: Complex2
    group: EdgePathGroup
    complex: Complex2
    vertex_label: dict[str, tuple[int, str]]
    edge_label: dict[str, str]
    face_label: dict[str, str]
    subgroup: tuple[Word, ...] = ()
    table: CosetTable | None = None
    radius: int | None = None
    frontier: frozenset[str] = frozenset()  # ball vertices where the covering property may fail
    class_words: dict[int, Word] = field(default_factory=dict)
    approximate: bool = False
    unknowns: tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return self.table is not None and self.radius is None

    @property
    def basepoint(self) -> str:
        return self.complex.basepoint

    @property
    def sheets(self) -> int:
        if not self.complete:
            raise IncompleteCover("a truncated ball has no sheet count")
        return len(self.table)

    @property
    def universal(self) -> bool:
        return not any(free_reduce(h) for h in self.subgroup)

    def project(self, cell: str) -> str:
        if cell in self.vertex_label:
            return self.vertex_label[cell][1]
        if cell in self.edge_label:
            return self.edge_label[cell]
        return self.face_label[cell]

    def project_path(self, p: EdgePath) -> EdgePath:
        return EdgePath(
            self.project(p.start), tuple(self.edge_label[e] for e in p.edges), self.project(p.end)
        )

    @cached_property
    def lift_index(self) -> dict[tuple[str, str], list[str]]:
        """(cover vertex, base edge) -> cover edges over it leaving that vertex."""
        index: dict[tuple[str, str], list[str]] = {}
        for e in self.complex.edges:
            index.setdefault((e.source, self.edge_label[e.id]), []).append(e.id)
        return index

    @cached_property
    def over(self) -> dict[str, list[str]]:
        """Base vertex -> cover vertices over it, in cover order."""
        out: dict[str, list[str]] = {v: [] for v in self.base.vertices}
        for vid in self.complex.vertices:
            out[self.vertex_label[vid][1]].append(vid)
        return out

    @cached_property
    def _class_lookup(self):
        pres = self.group.presentation
        exact, by_image = {}, {}
        for vid, (k, v) in self.vertex_label.items():
            w = self.class_words[k]
            exact[(v, w)] = vid
            by_image.setdefault((v, abelian_image(w, pres)), []).append(vid)
        return exact, by_image

    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()

    def coset_words(self) -> dict[int, Word]:
        if self.table is not None:
            return self.table.representatives()
        return self.class_words

    def representative(self, vid: str) -> EdgePath:
        """A base path from the basepoint whose class is ``vid``."""
        k, v = self.vertex_label[vid]
        return self.group.word_to_path(self.coset_words()[k], self.base.basepoint, v)


def _assemble(
    group: EdgePathGroup,
    sheet_ids: Sequence[int],
    step,
    vertices_in: set[tuple[int, str]] | None = None,
) -> tuple[Complex2, dict, dict, dict, bool]:
    """Build the cover complex from a sheet transition function.

    ``step(k, base_edge)`` returns the sheet reached from sheet ``k`` along
    a positive base edge, or None when it leaves a truncated ball.
    """
    base = group.complex
    vertex_label = {}
    vertices = []
    for k in sheet_ids:
        for v in base.vertices:
            if vertices_in is None or (k, v) in vertices_in:
                vid = vertex_id(k, v)
                vertices.append(vid)
                vertex_label[vid] = (k, v)
    edges = []
    edge_label = {}
    for k in sheet_ids:
        for e in base.positive_edges:
            if vertices_in is not None and (k, e.source) not in vertices_in:
                continue
            k2 = step(k, e.id)
            if k2 is None:
                continue
            eid = f"{e.id}@{k}"
            edges.append((eid, vertex_id(k, e.source), vertex_id(k2, e.target)))
            edge_label[eid] = e.id
            edge_label[eid + "^-1"] = e.inverse
    skeleton = Complex2.build(vertices, edges, (), vertex_id(sheet_ids[0], base.basepoint))
    lifts: dict[tuple[str, str], str] = {}
    for ce in skeleton.edges:
        lifts[(ce.source, edge_label[ce.id])] = ce.id
    faces = []
    face_label = {}
    dropped = False
    for k in sheet_ids:
        for f in base.faces:
            here = vertex_id(k, base.source(f.boundary[0]))
            if here not in vertex_label:
                continue
            start, boundary = here, []
            for eid in f.boundary:
                ce = lifts.get((here, eid))
                if ce is None:
                    break
                boundary.append(ce)
                here = skeleton.target(ce)
            else:
                if here == start:
                    fid = f"{f.id}@{k}"
                    faces.append((fid, boundary))
                    face_label[fid] = f.id
                    continue
            if vertices_in is None:
                raise AssertionError(f"face {f.id} does not lift closed from sheet {k}")
            dropped = dropped or len(boundary) == len(f.boundary)
    cx = Complex2.build(vertices, edges, faces, skeleton.basepoint)
    return cx, vertex_label, edge_label, face_label, dropped


def cover_from_table(group: EdgePathGroup, table: CosetTable) -> CoverComplex:
    if not table.complete:
        raise EnumerationExhausted(table.exhausted)
    letter = group.letter

    def step(k: int, eid: str) -> int:
        lt = letter[eid]
        return k if lt is None else table.act(k, *lt)

    cx, vl, el, fl, _ = _assemble(group, range(1, len(table) + 1), step)
    return CoverComplex(group.complex, group, cx, vl, el, fl, tuple(table.subgroup), table)


def build_cover(c: Complex2, subgroup: Sequence[Word] = (), limits: Limits = DEFAULT_LIMITS) -> CoverComplex:
    """The cover of ``c`` belonging to ``subgroup`` (empty: the universal cover).

    Raises EnumerationExhausted when the index is not found within ``limits``.
    """
    group = edge_path_group(c)
    subgroup = tuple(tuple(h) for h in subgroup)
    for h in subgroup:
        group.presentation.check_word(h)
    return cover_from_table(group, todd_coxeter(group.presentation, subgroup, limits))


class _ClassIndex:
    """Path classes found so far, searchable by group word."""

    def __init__(self, group: EdgePathGroup, limits: Limits):
        self.pres = group.presentation
        self.limits = limits
        self.words: list[Word] = []
        self.ends: list[str] = []
        self.exact: dict[tuple[str, Word], int] = {}
        self.buckets: dict[tuple[str, tuple[int, ...]], list[int]] = {}
        self.free = not any(self.pres.relators)
        self.unknowns: list[str] = []

    def add(self, word: Word, v: str) -> int:
        word = free_reduce(word)
        cid = len(self.words) + 1
        self.words.append(word)
        self.ends.append(v)
        self.exact[(v, word)] = cid
        if not self.free:
            self.buckets.setdefault((v, abelian_image(word, self.pres)), []).append(cid)
        return cid

    def find(self, word: Word, v: str) -> int | None:
        word = free_reduce(word)
        hit = self.exact.get((v, word))
        if hit is not None or self.free:
            return hit
        # Different abelian images are certainly different classes.
        for cid in self.buckets.get((v, abelian_image(word, self.pres)), ()):
            d = is_trivial(multiply(word, inverse(self.words[cid - 1])), self.pres, self.limits)
            if d.answer is Answer.YES:
                self.exact[(v, word)] = cid
                return cid
            if d.answer is Answer.UNKNOWN:
                self.unknowns.append(
                    f"class {cid} vs word of length {len(word)} at {v}: {d.exhausted}"
                )
        return None


def _unfinished_vertices(base: Complex2, cx: Complex2, vertex_label) -> frozenset[str]:
    """Ball vertices missing a lift of some edge or face corner at their image."""
    corners = Counter(base.source(eid) for f in base.faces for eid in f.boundary)
    lifted = Counter(cx.source(eid) for f in cx.faces for eid in f.boundary)
    out = set()
    for x in cx.vertices:
        v = vertex_label[x][1]
        if len(cx.outgoing[x]) < len(base.outgoing[v]) or lifted[x] < corners[v]:
            out.add(x)
    return frozenset(out)


def build_universal_ball(c: Complex2, radius: int, limits: Limits = DEFAULT_LIMITS) -> CoverComplex:
    """Path classes with a representative of length <= ``radius``.

    Classes are merged only on a proven YES; an UNKNOWN keeps them apart and
    marks the ball approximate (the class count is then an upper bound).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    group = edge_path_group(c)
    letter = group.letter
    index = _ClassIndex(group, limits)
    root = index.add((), c.basepoint)
    dist = {root: 0}
    lifts: dict[tuple[int, str], int] = {}
    queue = deque([root])
    while queue:
        k = queue.popleft()
        v = index.ends[k - 1]
        for e in c.outgoing[v]:
            lt = letter[e.id]
            word = index.words[k - 1] + ((lt,) if lt else ())
            k2 = index.find(word, e.target)
            if k2 is None:
                if dist[k] == radius:
                    continue
                k2 = index.add(word, e.target)
                dist[k2] = dist[k] + 1
                queue.append(k2)
            lifts[(k, e.id)] = k2
    # Resolve each positive edge from either orientation.
    conflicts = False
    for (k, eid), k2 in list(lifts.items()):
        e = c.edge_map[eid]
        if not e.positive:
            prior = lifts.setdefault((k2, e.inverse), k)
            conflicts = conflicts or prior != k
    sheet_ids = list(range(1, len(index.words) + 1))
    present = {(k, index.ends[k - 1]) for k in sheet_ids}

    def step(k: int, eid: str) -> int | None:
        return lifts.get((k, eid))

    cx, vl, el, fl, dropped = _assemble(group, sheet_ids, step, present)
    frontier = _unfinished_vertices(c, cx, vl)
    class_words = {k: index.words[k - 1] for k in sheet_ids}
    approximate = bool(index.unknowns) or conflicts or dropped
    return CoverComplex(
        c, group, cx, vl, el, fl,
        radius=radius,
        frontier=frontier,
        class_words=class_words,
        approximate=approximate,
        unknowns=tuple(index.unknowns),
    )


def class_of_path(cover: CoverComplex, p: EdgePath, limits: Limits = DEFAULT_LIMITS) -> str | None:
    """The cover vertex of the class of base path ``p`` (from the basepoint).

    Computed from group words, independently of the cover's edges.  Returns
    None when a ball does not contain the class.
    """
    if p.start != cover.base.basepoint:
        raise ValueError("path must start at the basepoint")
    word = cover.group.path_to_word(p)
    if cover.complete:
        return vertex_id(trace_word(cover.table, word, 1), p.end)
    pres = cover.group.presentation
    word = free_reduce(word)
    exact, by_image = cover._class_lookup
    if (p.end, word) in exact:
        return exact[(p.end, word)]
    for vid in by_image.get((p.end, abelian_image(word, pres)), ()):
        w = cover.class_words[cover.vertex_label[vid][0]]
        if is_trivial(multiply(word, inverse(w)), pres, limits).answer is Answer.YES:
            return vid
    return None


def fiber(cover: CoverComplex, v: str) -> list[str]:
    if not cover.complete:
        raise IncompleteCover("fibers of a truncated ball are not known")
    return list(cover.over[v])


def deck_action(cover: CoverComplex, g: Word, vid: str) -> str:
    """Left action of the group element ``g`` on the cover vertex ``vid``."""
    if not cover.complete:
        raise IncompleteCover("deck action needs a complete cover")
    table = cover.table
    if not is_normal(table):
        raise NotNormal("subgroup is not normal; no transitive deck action")
    k, v = cover.vertex_label[vid]
    reps = cover.coset_words()
    return vertex_id(trace_word(table, reps[k], trace_word(table, tuple(g), 1)), v)


def whisker_neighborhood(cover: CoverComplex, w: str, U: Star) -> set[str]:
    """End points of lifts from ``w`` of all paths inside ``U``."""
    if not U.proper:
        raise NonProperStar(f"star of {U.center} is the whole complex")
    if cover.vertex_label[w][1] not in U.vertices:
        raise ValueError(f"{w} does not lie over the star of {U.center}")
    reached = {w}
    todo = [w]
    base = cover.base
    while todo:
        x = todo.pop()
        u = cover.vertex_label[x][1]
        for e in base.outgoing[u]:
            if e.id not in U.edges:
                continue
            lifted = cover.lift_index.get((x, e.id))
            if not lifted:
                raise FrontierEscape(f"no lift of {e.id} at {x}")
            y = cover.complex.target(lifted[0])
            if y not in reached:
                reached.add(y)
                todo.append(y)
    return reached


