"""Certificates for the covering-space claims.

Every certificate is three-valued.  A FAIL carries a witness that can be
replayed on its own; an UNKNOWN names the resource limit that ran out.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Any

from .complex import Complex2, EdgePath, Star, concat, invert_path, spanning_tree, star
from .cover import CoverComplex, IncompleteCover, NonProperStar
from .groupoid import edge_path_group
from .wordproblem import DEFAULT_LIMITS, Answer, Limits, abelianization_rejects, is_trivial, todd_coxeter
from .words import format_word


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Certificate:
    claim: str
    verdict: Verdict
    witness: Any = None
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def line(self) -> str:
        if self.witness is None:
            witness = "-"
        elif isinstance(self.witness, tuple):
            witness = " ".join(str(w) for w in self.witness)
        else:
            witness = str(self.witness)
        return f"{self.claim}\t{self.verdict.value}\t{witness}"


def check_surjective(cover: CoverComplex) -> Certificate:
    claim = "surjective"
    if not cover.complete:
        return Certificate(claim, Verdict.UNKNOWN, f"ball radius {cover.radius}", "truncated cover")
    for v in cover.base.vertices:
        if not cover.over.get(v):
            return Certificate(claim, Verdict.FAIL, v, f"empty fiber over {v}")
    return Certificate(claim, Verdict.PASS, details=f"{cover.sheets} points in every fiber")


def _preimage_adjacency(cover: CoverComplex, U: Star) -> dict[str, list[tuple[str, str]]]:
    adj: dict[str, list[tuple[str, str]]] = {}
    for vid in cover.complex.vertices:
        if cover.vertex_label[vid][1] in U.vertices:
            adj[vid] = []
    for e in cover.complex.edges:
        if cover.edge_label[e.id] in U.edges and e.source in adj and e.target in adj:
            adj[e.source].append((e.id, e.target))
    return adj


def sheet_decomposition(cover: CoverComplex, U: Star) -> list[list[str]]:
    """Connected components of the preimage of ``U``, in cover vertex order."""
    if not U.proper:
        raise NonProperStar(f"star of {U.center} is the whole complex")
    if not cover.complete:
        raise IncompleteCover("sheets of a truncated ball are not known")
    adj = _preimage_adjacency(cover, U)
    order = {v: i for i, v in enumerate(adj)}
    seen: set[str] = set()
    sheets = []
    for vid in adj:
        if vid in seen:
            continue
        comp = [vid]
        seen.add(vid)
        todo = [vid]
        while todo:
            x = todo.pop()
            for _, y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    todo.append(y)
        sheets.append(sorted(comp, key=order.__getitem__))
    return sheets


def _path_in_sheet(adj, x: str, y: str) -> tuple[str, ...]:
    prev: dict[str, tuple[str, str] | None] = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for eid, w in adj[u]:
            if w not in prev:
                prev[w] = (u, eid)
                queue.append(w)
    edges = []
    node = y
    while prev[node] is not None:
        u, eid = prev[node]
        edges.append(eid)
        node = u
    return tuple(reversed(edges))


def check_evenly_covered(cover: CoverComplex, U: Star, limits: Limits = DEFAULT_LIMITS) -> Certificate:
    """Each sheet over ``U`` must map onto ``U`` by a cell bijection.

    An injectivity failure is witnessed by ``(x, loop)``: a loop in ``U``
    whose lift from cover vertex ``x`` stays in one sheet but does not close.
    """
    claim = f"evenly_covered[star({U.center})]"
    if not U.proper:
        raise NonProperStar(f"star of {U.center} is the whole complex")
    if not cover.complete:
        return Certificate(claim, Verdict.UNKNOWN, f"ball radius {cover.radius}", "truncated cover")
    slsc = check_slsc(cover.base, U, limits)
    if slsc.verdict is Verdict.UNKNOWN:
        return Certificate(claim, Verdict.UNKNOWN, slsc.witness, "slsc status unknown")
    adj = _preimage_adjacency(cover, U)
    sheets = sheet_decomposition(cover, U)
    faces_by_vertex: dict[str, list[str]] = {}
    for f in cover.complex.faces:
        if cover.face_label[f.id] in U.faces:
            faces_by_vertex.setdefault(cover.complex.source(f.boundary[0]), []).append(f.id)
    for sheet in sheets:
        seen: dict[str, str] = {}
        for x in sheet:
            u = cover.vertex_label[x][1]
            if u in seen:
                first = seen[u]
                cover_edges = _path_in_sheet(adj, first, x)
                loop = EdgePath(u, tuple(cover.edge_label[e] for e in cover_edges), u)
                return Certificate(
                    claim, Verdict.FAIL, (first, loop),
                    f"{first} and {x} lie over {u} in one sheet",
                )
            seen[u] = x
        missing = U.vertices - set(seen)
        if missing:
            v = min(missing)
            return Certificate(claim, Verdict.FAIL, (sheet[0], v), f"sheet of {sheet[0]} misses {v}")
        for x in sheet:
            u = cover.vertex_label[x][1]
            for e in cover.base.outgoing[u]:
                if e.id not in U.edges:
                    continue
                n = len(cover.lift_index.get((x, e.id), ()))
                if n != 1:
                    return Certificate(claim, Verdict.FAIL, (x, e.id), f"{n} lifts of {e.id} at {x}")
        lifted = {}
        for x in sheet:
            for fid in faces_by_vertex.get(x, ()):
                base_face = cover.face_label[fid]
                boundary = cover.complex.face_map[fid].boundary
                if tuple(cover.edge_label[e] for e in boundary) != cover.base.face_map[base_face].boundary:
                    return Certificate(claim, Verdict.FAIL, (fid,), "face boundary does not project")
                if base_face in lifted:
                    return Certificate(claim, Verdict.FAIL, (x, base_face), f"face {base_face} lifts twice")
                lifted[base_face] = fid
        absent = U.faces - set(lifted)
        if absent:
            f = min(absent)
            return Certificate(claim, Verdict.FAIL, (sheet[0], f), f"sheet misses face {f}")
    if len(sheets) != cover.sheets:
        return Certificate(
            claim, Verdict.FAIL, f"{len(sheets)} sheets", f"expected {cover.sheets} sheets"
        )
    return Certificate(claim, Verdict.PASS, details=f"{len(sheets)} sheets")


def loop_generators(U: Complex2) -> list[EdgePath]:
    """Loops generating the fundamental group of each component of ``U``."""
    loops = []
    covered: set[str] = set()
    for root in U.vertices:
        if root in covered:
            continue
        tree = spanning_tree(U, root)
        covered.update(tree.paths)
        for e in U.positive_edges:
            if e.source not in tree.paths or tree.contains(U, e.id):
                continue
            loop = concat(tree.paths[e.source], EdgePath(e.source, (e.id,), e.target))
            loop = concat(loop, invert_path(U, tree.paths[e.target]))
            loops.append(loop)
    return loops


def check_slsc(c: Complex2, U: Star | Complex2, limits: Limits = DEFAULT_LIMITS) -> Certificate:
    """Every loop in ``U`` must be null-homotopic in ``c``."""
    if isinstance(U, Star):
        claim = f"slsc[star({U.center})]"
        U = U.as_complex(c)
    else:
        claim = "slsc"
    group = edge_path_group(c)
    unknown = None
    for loop in loop_generators(U):
        d = is_trivial(group.path_to_word(loop), group.presentation, limits)
        if d.answer is Answer.NO:
            return Certificate(claim, Verdict.FAIL, loop, f"loop is nontrivial ({d.method})")
        if d.answer is Answer.UNKNOWN and unknown is None:
            unknown = (loop, d)
    if unknown:
        loop, d = unknown
        return Certificate(claim, Verdict.UNKNOWN, d.exhausted, f"undecided loop {loop}")
    return Certificate(claim, Verdict.PASS)


def check_simply_connected(x: Complex2 | CoverComplex, limits: Limits = DEFAULT_LIMITS) -> Certificate:
    claim = "simply_connected"
    if isinstance(x, CoverComplex):
        if not x.complete:
            return Certificate(claim, Verdict.UNKNOWN, f"ball radius {x.radius}", "truncated cover")
        x = x.complex
    group = edge_path_group(x)
    pres = group.presentation
    if not pres.generators:
        return Certificate(claim, Verdict.PASS, details="1-skeleton is a tree")

    def witness(g: str) -> EdgePath:
        return group.word_to_path(((g, 1),))

    if not any(pres.relators):
        g = pres.generators[0]
        return Certificate(claim, Verdict.FAIL, witness(g), f"free group of rank {len(pres.generators)}")
    table = todd_coxeter(pres, (), limits)
    if not table.complete:
        for g in pres.generators:
            if abelianization_rejects(((g, 1),), pres):
                return Certificate(claim, Verdict.FAIL, witness(g), f"generator {g} survives abelianization")
        return Certificate(claim, Verdict.UNKNOWN, table.exhausted, "coset enumeration")
    if len(table) == 1:
        return Certificate(claim, Verdict.PASS, details="coset table has one coset")
    for g in pres.generators:
        if table.trace(((g, 1),), 1) != 1:
            return Certificate(
                claim, Verdict.FAIL, witness(g),
                f"group has order {len(table)}; {format_word(((g, 1),))} is nontrivial",
            )
    raise AssertionError("nontrivial table with trivial generators")


def verify_all(cover: CoverComplex, limits: Limits = DEFAULT_LIMITS) -> list[Certificate]:
    """Run every certificate; even-covering checks run on each proper star."""
    certs = [check_surjective(cover)]
    for v in cover.base.vertices:
        U = star(cover.base, v)
        if not U.proper:
            certs.append(
                Certificate(f"evenly_covered[star({v})]", Verdict.UNKNOWN, "non-proper star",
                            "subdivide the complex")
            )
            continue
        certs.append(check_slsc(cover.base, U, limits))
        certs.append(check_evenly_covered(cover, U, limits))
    if cover.universal:
        certs.append(check_simply_connected(cover, limits))
    return certs
