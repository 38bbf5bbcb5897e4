"""Finite combinatorial 2-complexes, edge-paths, spanning trees and vertex stars.

Every edge is stored with both orientations; ``inverse`` links the pair.
Faces carry a closed boundary word over oriented edge ids.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

INVERSE_SUFFIX = "^-1"


class InvalidComplex(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class PathError(ValueError):
    pass


def inverse_name(edge_id: str) -> str:
    if edge_id.endswith(INVERSE_SUFFIX):
        return edge_id[: -len(INVERSE_SUFFIX)]
    return edge_id + INVERSE_SUFFIX


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    inverse: str
    positive: bool = True


@dataclass(frozen=True)
class Face:
    id: str
    boundary: tuple[str, ...]


@dataclass(frozen=True)
class EdgePath:
    """A path in a complex; ``edges`` may be empty (constant path at ``start``)."""

    start: str
    edges: tuple[str, ...]
    end: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_closed(self) -> bool:
        return self.start == self.end

    def __str__(self) -> str:
        return ",".join(self.edges) if self.edges else f"<empty at {self.start}>"


@dataclass(frozen=True)
class Complex2:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    basepoint: str

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str]] = (),
        faces: Iterable[tuple[str, Sequence[str]]] = (),
        basepoint: str | None = None,
    ) -> Complex2:
        """Build a complex from declared edges ``(id, source, target)``.

        Inverse edges are generated with the ``^-1`` suffix and placed right
        after their positive partner, which fixes the declaration order.
        """
        vertices = tuple(vertices)
        oriented = []
        for eid, src, tgt in edges:
            inv = inverse_name(eid)
            oriented.append(Edge(eid, src, tgt, inv, True))
            oriented.append(Edge(inv, tgt, src, eid, False))
        face_objs = tuple(Face(fid, tuple(word)) for fid, word in faces)
        if basepoint is None:
            basepoint = vertices[0]
        return cls(vertices, tuple(oriented), face_objs, basepoint)

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_map(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def positive_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.positive)

    @cached_property
    def outgoing(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(e.source, []).append(e)
        return {v: tuple(es) for v, es in out.items()}

    def inv(self, edge_id: str) -> str:
        return self.edge_map[edge_id].inverse

    def source(self, edge_id: str) -> str:
        return self.edge_map[edge_id].source

    def target(self, edge_id: str) -> str:
        return self.edge_map[edge_id].target

    def path(self, start: str, edges: Iterable[str] = ()) -> EdgePath:
        """Construct an edge-path, checking that consecutive edges compose."""
        edges = tuple(edges)
        if start not in self.outgoing:
            raise PathError(f"unknown vertex {start!r}")
        here = start
        for eid in edges:
            e = self.edge_map.get(eid)
            if e is None:
                raise PathError(f"unknown edge {eid!r}")
            if e.source != here:
                raise PathError(f"edge {eid!r} starts at {e.source!r}, path is at {here!r}")
            here = e.target
        return EdgePath(start, edges, here)

    def face_path(self, face_id: str) -> EdgePath:
        boundary = self.face_map[face_id].boundary
        return self.path(self.source(boundary[0]), boundary)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.positive_edges) + len(self.faces)

    def face_vertices(self, face: Face) -> set[str]:
        return {self.source(e) for e in face.boundary}


def validate(c: Complex2) -> list[str]:
    """Return the list of invariant violations of ``c``; empty means valid."""
    problems = []
    vset = set(c.vertices)
    if len(vset) != len(c.vertices):
        problems.append("duplicate vertex ids")
    seen: set[str] = set()
    for e in c.edges:
        if e.id in seen:
            problems.append(f"edge {e.id}: duplicate id")
        seen.add(e.id)
        for end in (e.source, e.target):
            if end not in vset:
                problems.append(f"edge {e.id}: unknown vertex {end}")
    emap = c.edge_map
    for e in c.edges:
        inv = emap.get(e.inverse)
        if inv is None:
            problems.append(f"edge {e.id}: missing inverse {e.inverse}")
            continue
        if inv.id == e.id:
            problems.append(f"edge {e.id}: involution has a fixed point")
        elif inv.inverse != e.id:
            problems.append(f"edge {e.id}: involution is not an involution")
        elif inv.source != e.target or inv.target != e.source:
            problems.append(f"edge {e.id}: involution endpoint mismatch")
        elif inv.positive == e.positive:
            problems.append(f"edge {e.id}: orientation pair has equal signs")
    face_ids: set[str] = set()
    for f in c.faces:
        if f.id in face_ids:
            problems.append(f"face {f.id}: duplicate id")
        face_ids.add(f.id)
        if not f.boundary:
            problems.append(f"face {f.id}: empty boundary")
            continue
        if any(eid not in emap for eid in f.boundary):
            problems.append(f"face {f.id}: unknown edge in boundary")
            continue
        n = len(f.boundary)
        for i in range(n):
            here, nxt = emap[f.boundary[i]], emap[f.boundary[(i + 1) % n]]
            if here.target != nxt.source:
                which = "not closed" if i == n - 1 else f"break after {here.id}"
                problems.append(f"face {f.id}: boundary {which}")
                break
    if c.basepoint not in vset:
        problems.append(f"basepoint {c.basepoint} is not a vertex")
    elif not problems and len(_reachable(c, c.basepoint)) != len(vset):
        problems.append("not path-connected")
    return problems


def check_valid(c: Complex2) -> Complex2:
    problems = validate(c)
    if problems:
        raise InvalidComplex(problems)
    return c


def _reachable(c: Complex2, root: str) -> set[str]:
    seen = {root}
    todo = [root]
    while todo:
        u = todo.pop()
        for e in c.outgoing.get(u, ()):
            if e.target not in seen:
                seen.add(e.target)
                todo.append(e.target)
    return seen


@dataclass(frozen=True)
class SpanningTree:
    root: str
    edges: frozenset[str]  # oriented away from the root
    paths: dict[str, EdgePath]

    def __hash__(self) -> int:
        return hash((self.root, self.edges))

    def contains(self, c: Complex2, edge_id: str) -> bool:
        return edge_id in self.edges or c.inv(edge_id) in self.edges


def spanning_tree(c: Complex2, root: str | None = None) -> SpanningTree:
    """Breadth-first spanning tree; edges are tried in declaration order."""
    root = c.basepoint if root is None else root
    parent_path: dict[str, tuple[str, ...]] = {root: ()}
    tree_edges = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in c.outgoing.get(u, ()):
            if e.target not in parent_path:
                parent_path[e.target] = parent_path[u] + (e.id,)
                tree_edges.add(e.id)
                queue.append(e.target)
    paths = {v: EdgePath(root, edges, v) for v, edges in parent_path.items()}
    return SpanningTree(root, frozenset(tree_edges), paths)


@dataclass(frozen=True)
class Star:
    """Closed star of ``center``: every cell touching it, plus their closure.

    ``edges`` holds both orientations of each edge.
    """

    center: str
    vertices: frozenset[str]
    edges: frozenset[str]
    faces: frozenset[str]
    proper: bool

    def as_complex(self, c: Complex2) -> Complex2:
        return subcomplex(c, self.vertices, self.edges, self.faces, self.center)


def star(c: Complex2, v: str) -> Star:
    if v not in c.outgoing:
        raise KeyError(v)
    faces = {f.id for f in c.faces if v in c.face_vertices(f)}
    edges = set()
    for e in c.edges:
        if v in (e.source, e.target):
            edges.update((e.id, e.inverse))
    for fid in faces:
        for eid in c.face_map[fid].boundary:
            edges.update((eid, c.inv(eid)))
    vertices = {v} | {c.source(eid) for eid in edges}
    proper = (
        len(vertices) < len(c.vertices)
        or len(edges) < len(c.edges)
        or len(faces) < len(c.faces)
    )
    return Star(v, frozenset(vertices), frozenset(edges), frozenset(faces), proper)


def subcomplex(
    c: Complex2,
    vertices: Iterable[str],
    edges: Iterable[str],
    faces: Iterable[str] = (),
    basepoint: str | None = None,
) -> Complex2:
    """Restrict ``c`` to the given cells, preserving declaration order.

    Edges may be listed in either orientation; both are kept.
    """
    vset, fset = set(vertices), set(faces)
    eset = {x for eid in edges for x in (eid, c.inv(eid))}
    sub = Complex2(
        tuple(v for v in c.vertices if v in vset),
        tuple(e for e in c.edges if e.id in eset),
        tuple(f for f in c.faces if f.id in fset),
        basepoint if basepoint is not None else c.basepoint,
    )
    return sub


def invert_path(c: Complex2, p: EdgePath) -> EdgePath:
    return EdgePath(p.end, tuple(c.inv(e) for e in reversed(p.edges)), p.start)


def reduce_path(c: Complex2, p: EdgePath) -> EdgePath:
    out: list[str] = []
    for eid in p.edges:
        if out and c.inv(out[-1]) == eid:
            out.pop()
        else:
            out.append(eid)
    return EdgePath(p.start, tuple(out), p.end)


def concat(p: EdgePath, q: EdgePath) -> EdgePath:
    if p.end != q.start:
        raise PathError(f"cannot concatenate: {p.end!r} != {q.start!r}")
    return EdgePath(p.start, p.edges + q.edges, q.end)


def concat_reduce(c: Complex2, p: EdgePath, q: EdgePath) -> EdgePath:
    """Concatenate and cancel adjacent ``e, inv(e)`` pairs at the seam."""
    if p.end != q.start:
        raise PathError(f"cannot concatenate: {p.end!r} != {q.start!r}")
    return reduce_path(c, EdgePath(p.start, p.edges + q.edges, q.end))


def subdivide(c: Complex2) -> Complex2:
    """Derived subdivision: every face becomes a cone of triangles.

    Edge ``e`` splits into ``e.0`` (source to midpoint ``<e>``) and ``e.1``.
    A face ``f`` of boundary length L gets a center ``[f]``, spokes
    ``f:c{i}`` to each corner and ``f:m{i}`` to each edge midpoint, and
    triangles ``f:{i}a``, ``f:{i}b``.  Two rounds turn any complex into a
    simplicial one, where every closed vertex star is a cone.
    """
    vertices = list(c.vertices)
    edges: list[tuple[str, str, str]] = []
    faces: list[tuple[str, list[str]]] = []
    for e in c.positive_edges:
        mid = f"<{e.id}>"
        vertices.append(mid)
        edges.append((f"{e.id}.0", e.source, mid))
        edges.append((f"{e.id}.1", mid, e.target))

    def halves(eid: str) -> tuple[str, str]:
        e = c.edge_map[eid]
        if e.positive:
            return f"{eid}.0", f"{eid}.1"
        return inverse_name(f"{e.inverse}.1"), inverse_name(f"{e.inverse}.0")

    def midpoint(eid: str) -> str:
        e = c.edge_map[eid]
        return f"<{eid if e.positive else e.inverse}>"

    for f in c.faces:
        center = f"[{f.id}]"
        vertices.append(center)
        n = len(f.boundary)
        for i, eid in enumerate(f.boundary):
            edges.append((f"{f.id}:c{i}", center, c.source(eid)))
            edges.append((f"{f.id}:m{i}", center, midpoint(eid)))
        for i, eid in enumerate(f.boundary):
            first, second = halves(eid)
            nxt = (i + 1) % n
            faces.append((f"{f.id}:{i}a", [f"{f.id}:c{i}", first, inverse_name(f"{f.id}:m{i}")]))
            faces.append((f"{f.id}:{i}b", [f"{f.id}:m{i}", second, inverse_name(f"{f.id}:c{nxt}")]))
    return Complex2.build(vertices, edges, faces, c.basepoint)


def subdivide_path(c: Complex2, p: EdgePath) -> EdgePath:
    """Image of a path of ``c`` in ``subdivide(c)``."""
    out: list[str] = []
    for eid in p.edges:
        e = c.edge_map[eid]
        if e.positive:
            out += [f"{eid}.0", f"{eid}.1"]
        else:
            out += [inverse_name(f"{e.inverse}.1"), inverse_name(f"{e.inverse}.0")]
    return EdgePath(p.start, tuple(out), p.end)
