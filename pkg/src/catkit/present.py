"""Computads, presentations of categories and groupoids, and a bounded word problem.

Words are sequences of oriented edges. In category mode every letter is
forward; in groupoid mode letters may be inverted and words are kept freely
reduced.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field

from .errors import MalformedInput, NotGroupoidal, NotParallel, UnknownNode
from .fincat import FinGraph, Functor, Path
from .snf import IntMatrix, in_integer_span, smith_normal_form

Letter = tuple[str, int]


@dataclass(frozen=True)
class Word:
    start: str
    letters: tuple[Letter, ...] = ()

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return f"1_{self.start}"
        return ".".join(e if s > 0 else e + "'" for e, s in self.letters)

    @classmethod
    def from_path(cls, p: Path) -> "Word":
        return cls(p.start, tuple((e, 1) for e in p.steps))


def letter_ends(g: FinGraph, letter: Letter) -> tuple[str, str]:
    e, s = letter
    return (g.src(e), g.tgt(e)) if s > 0 else (g.tgt(e), g.src(e))


def word_nodes(g: FinGraph, w: Word) -> list[str]:
    """Nodes visited by ``w``, length ``len(w) + 1``; raises if not composable."""
    if w.start not in g.nodes:
        raise UnknownNode(w.start)
    nodes = [w.start]
    for letter in w.letters:
        if not g.has_edge(letter[0]):
            raise MalformedInput(f"unknown edge {letter[0]!r}")
        if letter[1] not in (1, -1):
            raise MalformedInput(f"orientation must be +1 or -1, got {letter[1]!r}")
        a, b = letter_ends(g, letter)
        if a != nodes[-1]:
            raise MalformedInput(f"word {w} is not composable at {letter[0]!r}")
        nodes.append(b)
    return nodes


def word_end(g: FinGraph, w: Word) -> str:
    return word_nodes(g, w)[-1]


def reduce_letters(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for e, s in letters:
        if out and out[-1] == (e, -s):
            out.pop()
        else:
            out.append((e, s))
    return tuple(out)


def reduce_word(w: Word) -> Word:
    return Word(w.start, reduce_letters(w.letters))


def inverse_word(g: FinGraph, w: Word) -> Word:
    return Word(word_end(g, w), tuple((e, -s) for e, s in reversed(w.letters)))


def concat(g: FinGraph, *words: Word) -> Word:
    letters: tuple[Letter, ...] = ()
    for i, w in enumerate(words):
        if i and w.start != word_end(g, Word(words[0].start, letters)):
            raise MalformedInput("words are not composable")
        letters += w.letters
    return Word(words[0].start, letters)


_TOKEN = re.compile(r"([^\s.,'^]+)(\^-1|'|\^\+?1)?")


def parse_word(g: FinGraph, text: str, start: str | None = None) -> Word:
    """Parse ``"a.b.a'"``, ``"a b a^-1"`` or, for one-letter edge names, ``"aba'"``.

    An apostrophe or ``^-1`` marks an inverted letter. The start node is the
    source of the first letter unless given explicitly.
    """
    text = text.strip()
    letters: list[Letter] = []
    if text and not (text in ("1", "ε") and not g.has_edge(text)):
        single = all(len(e) == 1 for e, _, _ in g.edges)
        spaced = bool(re.search(r"[\s.,]", text))
        if single and not spaced and not g.has_edge(text.rstrip("'")):
            tokens = re.findall(r"(.)('|\^-1)?", text)
        else:
            tokens = [(m.group(1), m.group(2) or "") for m in _TOKEN.finditer(text)]
        for name, mark in tokens:
            if not g.has_edge(name):
                raise MalformedInput(f"unknown edge {name!r} in word {text!r}")
            letters.append((name, -1 if mark in ("'", "^-1") else 1))
    if start is None:
        if not letters:
            raise MalformedInput("empty word needs an explicit start node")
        start = letter_ends(g, letters[0])[0]
    w = Word(start, tuple(letters))
    word_nodes(g, w)
    return w


@dataclass(frozen=True)
class Relation:
    id: str
    lhs: Word
    rhs: Word


class Computad2:
    """A graph with relations between parallel words."""

    def __init__(self, graph: FinGraph, relations=(), groupoidal: bool = False):
        self.graph = graph
        self.groupoidal = bool(groupoidal)
        rels: list[Relation] = []
        seen: set[str] = set()
        for r in relations:
            if r.id in seen:
                raise MalformedInput(f"duplicate relation id {r.id!r}")
            seen.add(r.id)
            lhs, rhs = r.lhs, r.rhs
            for w in (lhs, rhs):
                word_nodes(graph, w)
                if not self.groupoidal and any(s < 0 for _, s in w.letters):
                    raise MalformedInput(f"relation {r.id!r} uses an inverse in category mode")
            if lhs.start != rhs.start or word_end(graph, lhs) != word_end(graph, rhs):
                raise NotParallel(f"relation {r.id!r} sides are not parallel")
            if self.groupoidal:
                lhs, rhs = reduce_word(lhs), reduce_word(rhs)
            rels.append(Relation(r.id, lhs, rhs))
        self.relations: tuple[Relation, ...] = tuple(rels)

    def __repr__(self):
        kind = "groupoidal" if self.groupoidal else "categorical"
        return f"Computad2({kind}, {len(self.graph.nodes)} nodes, {len(self.graph.edges)} edges, {len(self.relations)} relations)"


class Presentation:
    def __init__(self, computad: Computad2, bound: int | None = None):
        longest = max((max(len(r.lhs), len(r.rhs)) for r in computad.relations), default=0)
        if bound is None:
            bound = longest
        if bound < longest:
            raise MalformedInput(f"bound {bound} is shorter than a relation side ({longest})")
        self.computad = computad
        self.bound = bound

    @property
    def graph(self) -> FinGraph:
        return self.computad.graph

    @property
    def groupoidal(self) -> bool:
        return self.computad.groupoidal

    @property
    def relations(self) -> tuple[Relation, ...]:
        return self.computad.relations

    def word(self, text: str, start: str | None = None) -> Word:
        return parse_word(self.graph, text, start)

    def __repr__(self):
        return f"Presentation({self.computad!r}, bound={self.bound})"


# ---------------------------------------------------------------------------
# construction


def presentation_from_graph(g: FinGraph, groupoidal: bool = False) -> Presentation:
    return Presentation(Computad2(g, (), groupoidal))


def _alpha_edge(a: str) -> str:
    return f"alpha[{a}]"


def coinserter(f0: Functor, f1: Functor, normalize: bool = True) -> Presentation:
    """Presentation of the coinserter of a parallel pair f0, f1 : A -> B.

    The raw presentation has one edge per morphism of B, a fresh edge
    ``alpha[a]: f0(a) -> f1(a)`` per object of A, B's composition table and
    identity relations, and one naturality relation per morphism of A. With
    ``normalize`` the identity edges are eliminated and relations that became
    trivial are dropped.
    """
    A, B = f0.dom, f0.cod
    if f1.dom != A or f1.cod != B:
        raise MalformedInput("coinserter needs a parallel pair of functors")
    edges = [(m, B.src(m), B.tgt(m)) for m in B.morphisms]
    edges += [(_alpha_edge(a), f0.omap[a], f1.omap[a]) for a in A.objects]
    g = FinGraph(B.objects, edges)

    def path(*steps: str, start: str | None = None) -> Word:
        s = start if start is not None else g.src(steps[0])
        return Word(s, tuple((e, 1) for e in steps))

    rels = []
    for (h, f), gf in B.table.items():
        rels.append(Relation(f"comp[{h},{f}]", path(f, h), path(gf)))
    for x in B.objects:
        rels.append(Relation(f"unit[{x}]", path(B.identity[x]), path(start=x)))
    for m in A.morphisms:
        a, a2 = A.bounds(m)
        rels.append(
            Relation(
                f"nat[{m}]",
                path(f0.mmap[m], _alpha_edge(a2)),
                path(_alpha_edge(a), f1.mmap[m]),
            )
        )
    p = Presentation(Computad2(g, rels, groupoidal=False))
    return normalize_presentation(p)[0] if normalize else p


def normalize_presentation(p: Presentation) -> tuple[Presentation, frozenset[str]]:
    """Eliminate loop edges declared equal to an empty word; drop trivial relations.

    Returns the normalized presentation and the set of eliminated edge ids.
    """
    g = p.graph
    dead: set[str] = set()
    changed = True
    rels = list(p.relations)
    while changed:
        changed = False
        for r in rels:
            for one, other in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                if len(one) == 1 and len(other) == 0 and one.letters[0][0] not in dead:
                    e = one.letters[0][0]
                    if g.src(e) == g.tgt(e):
                        dead.add(e)
                        changed = True
        if changed:
            rels = [
                Relation(r.id, _drop(r.lhs, dead, p.groupoidal), _drop(r.rhs, dead, p.groupoidal))
                for r in rels
            ]
    rels = [r for r in rels if r.lhs != r.rhs]
    g2 = FinGraph(g.nodes, [e for e in g.edges if e[0] not in dead])
    comp = Computad2(g2, rels, p.groupoidal)
    return Presentation(comp, p.bound), frozenset(dead)


def _drop(w: Word, dead, groupoidal: bool) -> Word:
    letters = tuple(l for l in w.letters if l[0] not in dead)
    return Word(w.start, reduce_letters(letters) if groupoidal else letters)


# ---------------------------------------------------------------------------
# components and abelian invariants


def components(g: FinGraph) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Connected components with a BFS spanning tree each.

    Each BFS starts at the lexicographically least unvisited node and scans
    incident edges in id order. Returns ``(nodes, tree_edges)`` pairs.
    """
    incident: dict[str, list[tuple[str, str]]] = {n: [] for n in g.nodes}
    for e, s, t in g.edges:
        incident[s].append((e, t))
        incident[t].append((e, s))
    for n in incident:
        incident[n].sort()
    seen: set[str] = set()
    out = []
    for root in g.nodes:
        if root in seen:
            continue
        seen.add(root)
        order = [root]
        tree = []
        queue = deque([root])
        while queue:
            n = queue.popleft()
            for e, other in incident[n]:
                if other not in seen:
                    seen.add(other)
                    tree.append(e)
                    order.append(other)
                    queue.append(other)
        out.append((tuple(sorted(order)), tuple(sorted(tree))))
    return out


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    @classmethod
    def from_factors(cls, n_generators: int, diagonal) -> "AbelianGroup":
        torsion = tuple(d for d in diagonal if d > 1)
        return cls(n_generators - len(tuple(diagonal)), torsion)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.free_rank

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


@dataclass(frozen=True)
class ComponentInvariant:
    nodes: tuple[str, ...]
    group: AbelianGroup


def _count(letters, index: dict[str, int], n: int) -> list[int]:
    v = [0] * n
    for e, s in letters:
        if e in index:
            v[index[e]] += s
    return v


def abelianization(p: Presentation) -> list[ComponentInvariant]:
    """Per-component abelianized vertex group of the presented groupoid."""
    if not p.groupoidal:
        raise NotGroupoidal("abelianization needs a groupoidal presentation")
    g = p.graph
    out = []
    for nodes, tree in components(g):
        node_set = set(nodes)
        tree_set = set(tree)
        gens = [e for e, s, _ in g.edges if s in node_set and e not in tree_set]
        index = {e: i for i, e in enumerate(gens)}
        rows = [
            [a - b for a, b in zip(_count(r.lhs.letters, index, len(gens)), _count(r.rhs.letters, index, len(gens)))]
            for r in p.relations
            if r.lhs.start in node_set
        ]
        snf = smith_normal_form(IntMatrix.from_rows(rows, len(gens)))
        out.append(ComponentInvariant(nodes, AbelianGroup.from_factors(len(gens), snf.diagonal)))
    return out


def deficiency(p: Presentation) -> int:
    """Rank of the free groupoid on the graph minus the number of relations."""
    g = p.graph
    rank = len(g.edges) - len(g.nodes) + len(components(g))
    return rank - len(p.relations)


class Thinness(str, enum.Enum):
    NOT_THIN = "NotThin"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ThinnessResult:
    verdict: Thinness
    component_chi: tuple[tuple[tuple[str, ...], int], ...]
    scope: str = "per-component"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "scope": self.scope,
            "components": [{"nodes": list(n), "chi": chi} for n, chi in self.component_chi],
        }


def thinness_obstruction(p: Presentation) -> ThinnessResult:
    """NotThin when some component of the realization has Euler characteristic below 1."""
    from .topo import euler_characteristic, realize2

    chi = euler_characteristic(realize2(p.computad))
    verdict = Thinness.NOT_THIN if any(c < 1 for _, c in chi.components) else Thinness.INCONCLUSIVE
    return ThinnessResult(verdict, chi.components)


# ---------------------------------------------------------------------------
# bounded word problem


class Verdict(str, enum.Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class _Rule:
    node: str
    pattern: tuple[Letter, ...]
    replacement: tuple[Letter, ...]


def _rules(p: Presentation) -> list[_Rule]:
    g = p.graph
    rules: set[_Rule] = set()
    for r in p.relations:
        if not p.groupoidal:
            rules.add(_Rule(r.lhs.start, r.lhs.letters, r.rhs.letters))
            rules.add(_Rule(r.rhs.start, r.rhs.letters, r.lhs.letters))
            continue
        loop = reduce_word(concat(g, r.lhs, inverse_word(g, r.rhs)))
        if not loop.letters:
            continue
        closed = []
        nodes = word_nodes(g, loop)
        n = len(loop)
        for i in range(n):
            rot = Word(nodes[i], loop.letters[i:] + loop.letters[:i])
            closed.append(rot)
            closed.append(inverse_word(g, rot))
        for c in closed:
            for k in range(len(c) + 1):
                pat = c.letters[:k]
                rep = tuple((e, -s) for e, s in reversed(c.letters[k:]))
                if pat != rep:
                    rules.add(_Rule(c.start, pat, rep))
    return sorted(rules, key=lambda r: (len(r.pattern), r.pattern, r.replacement, r.node))


def _neighbours(g: FinGraph, start: str, word: tuple[Letter, ...], rules, bound: int, groupoidal: bool):
    nodes = [start]
    for letter in word:
        nodes.append(letter_ends(g, letter)[1])
    n = len(word)
    for rule in rules:
        k = len(rule.pattern)
        for i in range(n - k + 1):
            if nodes[i] != rule.node or word[i : i + k] != rule.pattern:
                continue
            new = word[:i] + rule.replacement + word[i + k :]
            if groupoidal:
                new = reduce_letters(new)
            if len(new) <= bound:
                yield new


def _abelian_separates(p: Presentation, w1: Word, w2: Word) -> bool:
    edges = [e for e, _, _ in p.graph.edges]
    index = {e: i for i, e in enumerate(edges)}
    n = len(edges)
    diff = [a - b for a, b in zip(_count(w1.letters, index, n), _count(w2.letters, index, n))]
    if not any(diff):
        return False
    rels = [
        [a - b for a, b in zip(_count(r.lhs.letters, index, n), _count(r.rhs.letters, index, n))]
        for r in p.relations
    ]
    rels = [v for v in rels if any(v)]
    return not in_integer_span(rels, diff)


def word_eq(
    p: Presentation,
    w1: Word,
    w2: Word,
    bound: int | None = None,
    max_states: int = 200_000,
) -> Verdict:
    """Decide equality of parallel words where the bounded search can.

    ``Equal`` is certified by a chain of relation rewrites staying within the
    length bound; ``Distinct`` by the abelianization separating the words.
    Anything else is ``Unknown``.
    """
    g = p.graph
    for w in (w1, w2):
        word_nodes(g, w)
        if not p.groupoidal and any(s < 0 for _, s in w.letters):
            raise MalformedInput("inverse letters are not allowed in category mode")
    if w1.start != w2.start or word_end(g, w1) != word_end(g, w2):
        raise NotParallel(f"{w1} and {w2} are not parallel")
    p, dead = normalize_presentation(p)
    w1, w2 = _drop(w1, dead, p.groupoidal), _drop(w2, dead, p.groupoidal)
    if p.groupoidal:
        w1, w2 = reduce_word(w1), reduce_word(w2)
    if w1 == w2:
        return Verdict.EQUAL
    limit = max(bound if bound is not None else p.bound, p.bound, len(w1), len(w2))
    rules = _rules(p)
    g = p.graph
    start = w1.start

    seen = [{w1.letters}, {w2.letters}]
    frontier = [[w1.letters], [w2.letters]]
    exhausted = False
    while not exhausted:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        nxt = []
        for word in frontier[side]:
            for new in _neighbours(g, start, word, rules, limit, p.groupoidal):
                if new in seen[1 - side]:
                    return Verdict.EQUAL
                if new not in seen[side]:
                    seen[side].add(new)
                    nxt.append(new)
        frontier[side] = nxt
        if not nxt:
            exhausted = True
        elif len(seen[0]) + len(seen[1]) > max_states:
            break
    if _abelian_separates(p, w1, w2):
        return Verdict.DISTINCT
    return Verdict.UNKNOWN
