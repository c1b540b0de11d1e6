"""Combinatorial 2-dimensional CW-complexes realizing computads.

Only cell data is kept: vertices, edges with endpoints, and 2-cells with a
cyclically reduced boundary word. That is enough for Euler characteristics,
integer homology and presentations of the fundamental groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import MalformedInput
from .fincat import FinGraph, graph_to_dot
from .present import (
    AbelianGroup,
    Computad2,
    Presentation,
    Relation,
    Word,
    components,
    concat,
    inverse_word,
    letter_ends,
    reduce_word,
    word_nodes,
)
from .snf import IntMatrix, SNFResult, smith_normal_form

__all__ = [
    "CWComplex2",
    "IntMatrix",
    "SNFResult",
    "realize2",
    "euler_characteristic",
    "homology",
    "fundamental_groupoid_presentation",
    "smith_normal_form",
    "boundary_matrices",
]


def cyclic_reduce(g: FinGraph, w: Word) -> Word:
    w = reduce_word(w)
    letters = list(w.letters)
    start = w.start
    while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
        start = letter_ends(g, letters[0])[1]
        letters = letters[1:-1]
    return Word(start, tuple(letters))


class CWComplex2:
    def __init__(
        self,
        cells0,
        cells1: Mapping[str, tuple[str, str]],
        cells2: Mapping[str, Word],
    ):
        self.skeleton = FinGraph(cells0, [(e, s, t) for e, (s, t) in cells1.items()])
        self.cells0 = self.skeleton.nodes
        self.cells1 = {e: (s, t) for e, s, t in self.skeleton.edges}
        boundaries = {}
        for c in sorted(cells2):
            w = cells2[c]
            nodes = word_nodes(self.skeleton, w)
            if nodes[0] != nodes[-1]:
                raise MalformedInput(f"boundary of 2-cell {c!r} is not a closed walk")
            boundaries[c] = cyclic_reduce(self.skeleton, w)
        self.cells2: dict[str, Word] = boundaries

    def __repr__(self):
        return f"CWComplex2({len(self.cells0)}, {len(self.cells1)}, {len(self.cells2)})"


def realize2(c: Computad2) -> CWComplex2:
    """Vertices = nodes, 1-cells = edges, one 2-cell per relation glued along lhs . rhs^-1."""
    g = c.graph
    cells2 = {r.id: concat(g, r.lhs, inverse_word(g, r.rhs)) for r in c.relations}
    return CWComplex2(g.nodes, {e: (s, t) for e, s, t in g.edges}, cells2)


def _split(x: CWComplex2):
    """Yield (vertices, edges, 2-cells) per connected component."""
    for nodes, _ in components(x.skeleton):
        node_set = set(nodes)
        edges = [e for e, (s, _) in x.cells1.items() if s in node_set]
        cells = [c for c, w in x.cells2.items() if w.start in node_set]
        yield nodes, edges, cells


@dataclass(frozen=True)
class EulerCharacteristic:
    components: tuple[tuple[tuple[str, ...], int], ...]
    total: int

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "components": [{"nodes": list(n), "chi": chi} for n, chi in self.components],
        }


def euler_characteristic(x: CWComplex2) -> EulerCharacteristic:
    comps = tuple((nodes, len(nodes) - len(edges) + len(cells)) for nodes, edges, cells in _split(x))
    return EulerCharacteristic(comps, len(x.cells0) - len(x.cells1) + len(x.cells2))


def boundary_matrices(x: CWComplex2, vertices=None, edges=None, cells=None) -> tuple[IntMatrix, IntMatrix]:
    """(d1, d2): d1 is vertices x edges, d2 is edges x 2-cells; source->target counts +1."""
    vertices = list(x.cells0 if vertices is None else vertices)
    edges = list(x.cells1 if edges is None else edges)
    cells = list(x.cells2 if cells is None else cells)
    vi = {v: i for i, v in enumerate(vertices)}
    ei = {e: i for i, e in enumerate(edges)}
    d1 = [[0] * len(edges) for _ in vertices]
    for j, e in enumerate(edges):
        s, t = x.cells1[e]
        d1[vi[s]][j] -= 1
        d1[vi[t]][j] += 1
    d2 = [[0] * len(cells) for _ in edges]
    for j, c in enumerate(cells):
        for e, sign in x.cells2[c].letters:
            d2[ei[e]][j] += sign
    return IntMatrix.from_rows(d1, len(edges)), IntMatrix.from_rows(d2, len(cells))


def _h1(x: CWComplex2, vertices, edges, cells) -> AbelianGroup:
    d1, d2 = boundary_matrices(x, vertices, edges, cells)
    r1 = smith_normal_form(d1).rank
    snf2 = smith_normal_form(d2)
    kernel_rank = len(edges) - r1
    return AbelianGroup(kernel_rank - snf2.rank, tuple(d for d in snf2.diagonal if d > 1))


@dataclass(frozen=True)
class Homology:
    h0_rank: int
    h1: AbelianGroup
    components: tuple[tuple[tuple[str, ...], AbelianGroup], ...]

    def to_json(self) -> dict:
        return {
            "h0_rank": self.h0_rank,
            "h1": self.h1.to_json(),
            "components": [{"nodes": list(n), "h1": g.to_json()} for n, g in self.components],
        }


def homology(x: CWComplex2) -> Homology:
    """H0 rank and H1 = ker d1 / im d2, globally and per component."""
    comps = tuple((nodes, _h1(x, nodes, edges, cells)) for nodes, edges, cells in _split(x))
    total = _h1(x, x.cells0, list(x.cells1), list(x.cells2))
    return Homology(len(comps), total, comps)


def fundamental_groupoid_presentation(x: CWComplex2) -> Presentation:
    """Groupoidal presentation: all 1-cells as generators, each 2-cell boundary set to 1."""
    rels = [Relation(c, w, Word(w.start)) for c, w in x.cells2.items()]
    return Presentation(Computad2(x.skeleton, rels, groupoidal=True))


def to_dot(x: CWComplex2, name: str = "X") -> str:
    return graph_to_dot(x.skeleton, name)
