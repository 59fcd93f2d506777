"""The quiver Q_E on subsets of E and its path category C_E.

Relations: going back along an arrow is zero, and the two routes around a
square agree.  So a nonzero path is determined by its source and the set of
coordinates it toggles, and a path toggling some coordinate twice is zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

Vertex = frozenset


def vertex(indices: Iterable[int] = ()) -> Vertex:
    return frozenset(indices)


def vertex_label(U: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(U)) + "}"


def subsets(E: Iterable[int]) -> list[Vertex]:
    E = sorted(set(E))
    return [frozenset(c) for r in range(len(E) + 1) for c in combinations(E, r)]


@dataclass(frozen=True)
class PathNF:
    """Zero (``source is None``) or the reduced path toggling ``toggles`` from ``source``."""

    source: Vertex | None
    toggles: frozenset = frozenset()

    @property
    def is_zero(self) -> bool:
        return self.source is None

    @property
    def target(self) -> Vertex | None:
        return None if self.source is None else self.source ^ self.toggles

    @property
    def length(self) -> int:
        return len(self.toggles)

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"{vertex_label(self.source)}--{vertex_label(self.toggles)}-->{vertex_label(self.target)}"


ZERO_PATH = PathNF(None)


def identity(U: Iterable[int]) -> PathNF:
    return PathNF(frozenset(U))


def arrow(U: Iterable[int], i: int) -> PathNF:
    return PathNF(frozenset(U), frozenset([i]))


class CompositionError(ValueError):
    pass


def path_compose(a: PathNF, b: PathNF) -> PathNF:
    """``a`` followed by ``b``."""
    if a.is_zero or b.is_zero:
        return ZERO_PATH
    if a.target != b.source:
        raise CompositionError(f"cannot follow {a} by {b}")
    if a.toggles & b.toggles:
        return ZERO_PATH
    return PathNF(a.source, a.toggles | b.toggles)


def reduce_word(source: Iterable[int], coords: Iterable[int]) -> PathNF:
    """Normal form of the arrow word toggling ``coords`` in order from ``source``."""
    path = identity(source)
    for i in coords:
        if path.is_zero:
            return ZERO_PATH
        path = path_compose(path, arrow(path.target, i))
    return path


def hom_basis(U: Iterable[int], W: Iterable[int]) -> list[PathNF]:
    U, W = frozenset(U), frozenset(W)
    return [PathNF(U, U ^ W)]


def algebra_dim(E: Iterable[int]) -> int:
    V = subsets(E)
    return sum(len(hom_basis(U, W)) for U in V for W in V)


def arrows(E: Iterable[int]) -> list[tuple[Vertex, Vertex, int]]:
    E = sorted(set(E))
    return [(U, U ^ {i}, i) for U in subsets(E) for i in E]


def relations(E: Iterable[int]) -> list[dict]:
    E = sorted(set(E))
    rels = [{"kind": "zero", "coords": [i, i], "text": f"a{i}^2=0"} for i in E]
    for i, j in combinations(E, 2):
        rels.append({"kind": "commute", "coords": [i, j], "text": f"a{i}a{j}=a{j}a{i}"})
    return rels


def quiver_export(E: Iterable[int], format: str = "dot") -> str:
    """Render Q_E as DOT or JSON; arrows toggling coordinate i are named a<i>."""
    E = sorted(set(E))
    V = subsets(E)
    if format == "json":
        payload = {
            "vertices": [sorted(U) for U in V],
            "arrows": [{"from": sorted(U), "to": sorted(W), "coord": i} for U, W, i in arrows(E)],
            "relations": relations(E),
        }
        return json.dumps(payload, sort_keys=True)
    if format != "dot":
        raise ValueError(f"unknown quiver format {format!r}")
    lines = ["digraph Q {"]
    rels = "; ".join(r["text"] for r in relations(E))
    if rels:
        lines.append(f'  label="relations: {rels}";')
    for U in V:
        lines.append(f'  "{vertex_label(U)}";')
    for U, W, i in arrows(E):
        lines.append(f'  "{vertex_label(U)}" -> "{vertex_label(W)}" [label="a{i}", coord={i}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
