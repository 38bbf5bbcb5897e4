"""Plain-text complex files (``.cx``) and DOT export.

A file has four sections; ``#`` starts a comment::

    vertices: v w
    edges:
      a v w
      b w v
    faces:
      f a b
    basepoint: v

Only positive edges are declared; ``a^-1`` is generated.  Cover files may
attach ``label:<base cell>`` to any vertex, edge or face line to record
the projection.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

from .complex import INVERSE_SUFFIX, Complex2, EdgePath

if TYPE_CHECKING:
    from .cover import CoverComplex

SECTIONS = ("vertices", "edges", "faces", "basepoint")


class ParseError(ValueError):
    pass


def _split_label(tokens: list[str]) -> tuple[list[str], str | None]:
    label = None
    rest = []
    for tok in tokens:
        if tok.startswith("label:"):
            label = tok[len("label:"):]
        else:
            rest.append(tok)
    return rest, label


def parse_complex_with_labels(text: str) -> tuple[Complex2, dict[str, str]]:
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    faces: list[tuple[str, list[str]]] = []
    basepoint: str | None = None
    labels: dict[str, str] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if sep and head.strip() in SECTIONS and " " not in head.strip():
            section = head.strip()
            line = tail.strip()
            if not line:
                continue
        if section is None:
            raise ParseError(f"line {lineno}: content before any section")
        tokens, label = _split_label(line.replace(",", " ").split())
        if section == "vertices":
            vertices.extend(tokens)
            if label is not None:
                if len(tokens) != 1:
                    raise ParseError(f"line {lineno}: label needs exactly one vertex")
                labels[tokens[0]] = label
        elif section == "edges":
            if len(tokens) != 3:
                raise ParseError(f"line {lineno}: expected 'id from to'")
            if tokens[0].endswith(INVERSE_SUFFIX):
                raise ParseError(f"line {lineno}: declared edge may not end in {INVERSE_SUFFIX}")
            edges.append((tokens[0], tokens[1], tokens[2]))
            if label is not None:
                labels[tokens[0]] = label
        elif section == "faces":
            if len(tokens) < 2:
                raise ParseError(f"line {lineno}: expected 'id boundary-word'")
            faces.append((tokens[0], tokens[1:]))
            if label is not None:
                labels[tokens[0]] = label
        elif section == "basepoint":
            if len(tokens) != 1 or basepoint is not None:
                raise ParseError(f"line {lineno}: expected a single basepoint")
            basepoint = tokens[0]
    if not vertices:
        raise ParseError("no vertices")
    return Complex2.build(vertices, edges, faces, basepoint), labels


def parse_complex(text: str) -> Complex2:
    return parse_complex_with_labels(text)[0]


def read_complex(path) -> Complex2:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


def format_complex(c: Complex2, labels: dict[str, str] | None = None) -> str:
    labels = labels or {}

    def tag(cell: str) -> str:
        return f" label:{labels[cell]}" if cell in labels else ""

    lines = ["vertices:"]
    lines += [f"  {v}{tag(v)}" for v in c.vertices]
    lines.append("edges:")
    lines += [f"  {e.id} {e.source} {e.target}{tag(e.id)}" for e in c.positive_edges]
    lines.append("faces:")
    lines += [f"  {f.id} {' '.join(f.boundary)}{tag(f.id)}" for f in c.faces]
    lines.append(f"basepoint: {c.basepoint}")
    return "\n".join(lines) + "\n"


def format_cover(cover: CoverComplex) -> str:
    labels = {}
    for vid, (_, v) in cover.vertex_label.items():
        labels[vid] = v
    for eid, base in cover.edge_label.items():
        labels[eid] = base
    labels.update(cover.face_label)
    return format_complex(cover.complex, labels)


def parse_path(c: Complex2, text: str, start: str | None = None) -> EdgePath:
    """Parse a comma-separated edge list such as ``a,b,a^-1``."""
    edges = [tok for tok in text.replace(",", " ").split()]
    if start is None:
        start = c.source(edges[0]) if edges else c.basepoint
    return c.path(start, edges)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(cover: CoverComplex) -> str:
    """DOT digraph of the cover's 1-skeleton, one arc per positive edge."""
    lines = ["digraph cover {"]
    for vid in cover.complex.vertices:
        k, v = cover.vertex_label[vid]
        attrs = f"label={_quote(f'({k},{v})')}"
        if vid in cover.frontier:
            attrs += ", style=dashed"
        lines.append(f"  {_quote(vid)} [{attrs}];")
    for e in cover.complex.positive_edges:
        lines.append(
            f"  {_quote(e.source)} -> {_quote(e.target)} [label={_quote(cover.edge_label[e.id])}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
