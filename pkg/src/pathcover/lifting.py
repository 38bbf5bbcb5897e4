"""Unique path lifting along the cover's cell maps."""
from __future__ import annotations

from dataclasses import dataclass

from .complex import EdgePath
from .cover import CoverComplex, FrontierEscape, IncompleteCover


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class LiftedPath:
    cover_path: EdgePath
    base_path: EdgePath
    start: str
    vertices: tuple[str, ...]


def lift_path(cover: CoverComplex, base_path: EdgePath, start: str) -> LiftedPath:
    """Lift ``base_path`` edge by edge from the cover vertex ``start``.

    At every step exactly one cover edge may lie over the base edge;
    anything else means the map is not a covering there.
    """
    if cover.vertex_label[start][1] != base_path.start:
        raise LiftError(f"{start} does not lie over {base_path.start}")
    here = start
    edges = []
    visited = [start]
    for eid in base_path.edges:
        candidates = cover.lift_index.get((here, eid), [])
        if not candidates:
            if here in cover.frontier or not cover.complete:
                raise FrontierEscape(f"lift leaves the ball at {here} along {eid}")
            raise LiftError(f"no lift of {eid} at {here}")
        if len(candidates) > 1:
            raise LiftError(f"{len(candidates)} lifts of {eid} at {here}")
        edges.append(candidates[0])
        here = cover.complex.target(candidates[0])
        visited.append(here)
    return LiftedPath(EdgePath(start, tuple(edges), here), base_path, start, tuple(visited))


def prefix_classes(cover: CoverComplex, p: EdgePath) -> list[str]:
    """Cover vertices of the classes of all prefixes of ``p``.

    The first entry is the class of the constant path, the last that of
    ``p`` itself; consecutive entries are joined by lifted edges.
    """
    if not cover.universal:
        raise ValueError("prefix classes live in the universal cover")
    if p.start != cover.base.basepoint:
        raise ValueError("path must start at the basepoint")
    return list(lift_path(cover, p, cover.basepoint).vertices)


def loop_lifts_to_loop(cover: CoverComplex, loop: EdgePath) -> bool:
    if not cover.complete:
        raise IncompleteCover("loop criterion needs a complete cover")
    if loop.start != cover.base.basepoint or not loop.is_closed:
        raise ValueError("expected a loop at the basepoint")
    lifted = lift_path(cover, loop, cover.basepoint)
    return lifted.cover_path.end == cover.basepoint
