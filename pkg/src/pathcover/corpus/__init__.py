"""Bundled example complexes."""
from __future__ import annotations

from importlib import resources

from ..complex import Complex2
from ..fileformat import parse_complex


def names() -> list[str]:
    files = resources.files(__name__).iterdir()
    return sorted(f.name[:-3] for f in files if f.name.endswith(".cx"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.cx").read_text(encoding="utf-8")


def load(name: str) -> Complex2:
    return parse_complex(text(name))


def cyclic(n: int) -> Complex2:
    """One vertex, one loop ``a``, one face ``a^n``: fundamental group Z/n."""
    return Complex2.build(["v"], [("a", "v", "v")], [("f", ["a"] * n)], "v")


def wedge(k: int) -> Complex2:
    gens = "abcdefghijklmnopqrstuvwxyz"[:k]
    return Complex2.build(["v"], [(g, "v", "v") for g in gens], (), "v")
