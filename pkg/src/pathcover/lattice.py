"""Row-style Hermite normal form over Python integers and lattice residues."""
from __future__ import annotations

from typing import Sequence


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Return the nonzero rows of the HNF of the lattice spanned by ``rows``.

    Pivots are positive, pivot columns strictly increase, and entries above
    each pivot lie in ``[0, pivot)``.
    """
    basis = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while basis and col < ncols:
        active = [r for r in basis if r[col] != 0]
        rest = [r for r in basis if r[col] == 0]
        if not active:
            col += 1
            continue
        # Euclid on column ``col`` until one row holds the gcd.
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            nxt = [pivot]
            for r in active[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        out.append(pivot)
        basis = rest
        col += 1
    for i, row in enumerate(out):
        pc = _pivot_col(row)
        for above in out[:i]:
            q = above[pc] // row[pc]
            if q:
                for k in range(len(above)):
                    above[k] -= q * row[k]
    return out


def _pivot_col(row: Sequence[int]) -> int:
    return next(i for i, a in enumerate(row) if a != 0)


def residue(vector: Sequence[int], hnf: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Canonical representative of ``vector`` modulo the lattice in HNF."""
    v = list(vector)
    for row in hnf:
        pc = _pivot_col(row)
        q = v[pc] // row[pc]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def contains(hnf: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    return not any(residue(vector, hnf))
