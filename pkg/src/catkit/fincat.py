"""Finite categories, functors, natural transformations, limits and Kan extensions.

Every category is held as an explicit composition table. Ids are strings and
every enumeration is returned in lexicographic id order so that output is
byte-deterministic.
"""

from __future__ import annotations

import itertools
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    MalformedInput,
    NoExtension,
    NotComposable,
    SizeLimitExceeded,
    UnknownNode,
)

# ---------------------------------------------------------------------------
# size budget


@dataclass(frozen=True)
class Budget:
    objects: int = 64
    morphisms: int = 4096


DEFAULT_BUDGET = Budget()
_budget_override: ContextVar[Budget | None] = ContextVar("catkit_budget", default=None)


def parse_budget(text: str) -> Budget:
    """Parse ``"OBJECTS,MORPHISMS"`` or a bare ``"MORPHISMS"``."""
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise MalformedInput(f"bad budget {text!r}") from None
    if len(nums) == 1:
        return Budget(DEFAULT_BUDGET.objects, nums[0])
    if len(nums) == 2:
        return Budget(nums[0], nums[1])
    raise MalformedInput(f"bad budget {text!r}")


def current_budget() -> Budget:
    override = _budget_override.get()
    if override is not None:
        return override
    env = os.environ.get("CATKIT_BUDGET")
    if env:
        return parse_budget(env)
    return DEFAULT_BUDGET


@contextmanager
def budget(value: Budget | str):
    if isinstance(value, str):
        value = parse_budget(value)
    token = _budget_override.set(value)
    try:
        yield value
    finally:
        _budget_override.reset(token)


def _check_budget(n_objects: int, n_morphisms: int, what: str = "category") -> None:
    b = current_budget()
    if n_objects > b.objects or n_morphisms > b.morphisms:
        raise SizeLimitExceeded(
            f"{what} has {n_objects} objects / {n_morphisms} morphisms; "
            f"budget is {b.objects} / {b.morphisms}"
        )


# ---------------------------------------------------------------------------
# validation reports


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, *where, detail: str = "") -> None:
        self.violations.append(Violation(kind, tuple(where), detail))

    def extend(self, other: "ValidationReport", prefix: str | None = None) -> None:
        for v in other.violations:
            where = (prefix,) + v.where if prefix else v.where
            self.violations.append(Violation(v.kind, where, v.detail))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.violations]

    def __len__(self) -> int:
        return len(self.violations)


# ---------------------------------------------------------------------------
# graphs and paths


class FinGraph:
    """A finite directed multigraph with string node and edge ids."""

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple[str, str, str]]):
        nodes = list(nodes)
        edges = [tuple(e) for e in edges]
        if len(set(nodes)) != len(nodes):
            raise MalformedInput("duplicate node ids")
        node_set = set(nodes)
        ends: dict[str, tuple[str, str]] = {}
        for eid, s, t in edges:
            if eid in ends:
                raise MalformedInput(f"duplicate edge id {eid!r}")
            if s not in node_set or t not in node_set:
                raise MalformedInput(f"edge {eid!r} has an undeclared endpoint")
            ends[eid] = (s, t)
        self.nodes: tuple[str, ...] = tuple(sorted(nodes))
        self.edges: tuple[tuple[str, str, str], ...] = tuple(
            sorted((e, s, t) for e, (s, t) in ends.items())
        )
        self._ends = ends
        out: dict[str, list[str]] = {n: [] for n in self.nodes}
        for e, s, _ in self.edges:
            out[s].append(e)
        self._out = {n: tuple(v) for n, v in out.items()}

    def src(self, e: str) -> str:
        return self._ends[e][0]

    def tgt(self, e: str) -> str:
        return self._ends[e][1]

    def has_edge(self, e: str) -> bool:
        return e in self._ends

    def out_edges(self, n: str) -> tuple[str, ...]:
        return self._out[n]

    def __eq__(self, other):
        return (
            isinstance(other, FinGraph)
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.nodes, self.edges))

    def __repr__(self):
        return f"FinGraph(nodes={list(self.nodes)}, edges={list(self.edges)})"


@dataclass(frozen=True)
class Path:
    graph: FinGraph
    start: str
    steps: tuple[str, ...] = ()

    def __post_init__(self):
        node = self.start
        if node not in self.graph.nodes:
            raise UnknownNode(node)
        for e in self.steps:
            if not self.graph.has_edge(e):
                raise MalformedInput(f"unknown edge {e!r}")
            if self.graph.src(e) != node:
                raise NotComposable(f"edge {e!r} does not start at {node!r}")
            node = self.graph.tgt(e)
        object.__setattr__(self, "_end", node)

    @property
    def end(self) -> str:
        return self._end

    def __len__(self):
        return len(self.steps)

    def then(self, other: "Path") -> "Path":
        """Concatenate: walk ``self`` first, then ``other``."""
        if other.graph is not self.graph and other.graph != self.graph:
            raise MalformedInput("paths live in different graphs")
        if other.start != self.end:
            raise NotComposable(f"path ends at {self.end!r}, next starts at {other.start!r}")
        return Path(self.graph, self.start, self.steps + other.steps)

    def __str__(self):
        return ".".join(self.steps) if self.steps else f"1_{self.start}"


def enumerate_paths(g: FinGraph, a: str, b: str, maxlen: int) -> list[Path]:
    """All paths a -> b of length <= maxlen, shortest first, then lexicographic."""
    if a not in g.nodes:
        raise UnknownNode(a)
    if b not in g.nodes:
        raise UnknownNode(b)
    if maxlen < 0:
        raise ValueError("maxlen must be >= 0")
    found: list[Path] = []
    layer: list[tuple[tuple[str, ...], str]] = [((), a)]
    for length in range(maxlen + 1):
        for steps, end in layer:
            if end == b:
                found.append(Path(g, a, steps))
        if length == maxlen:
            break
        layer = [
            (steps + (e,), g.tgt(e)) for steps, end in layer for e in g.out_edges(end)
        ]
    return found


# ---------------------------------------------------------------------------
# categories


class FinCat:
    """A finite category given by an explicit composition table.

    ``compose`` maps ``(g, f)`` to ``g o f`` for every composable pair
    (``tgt(f) == src(g)``). Missing identity-law entries are filled in;
    everything else must be supplied.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[tuple[str, str, str]],
        identity: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        *,
        fill_units: bool = True,
    ):
        objects = list(objects)
        morphisms = [tuple(m) for m in morphisms]
        if len(set(objects)) != len(objects):
            raise MalformedInput("duplicate object ids")
        _check_budget(len(objects), len(morphisms))
        obj_set = set(objects)
        bounds: dict[str, tuple[str, str]] = {}
        for mid, s, t in morphisms:
            if mid in bounds:
                raise MalformedInput(f"duplicate morphism id {mid!r}")
            if s not in obj_set or t not in obj_set:
                raise MalformedInput(f"morphism {mid!r} has a dangling endpoint")
            bounds[mid] = (s, t)
        ident = dict(identity)
        for x, m in ident.items():
            if x not in obj_set:
                raise MalformedInput(f"identity declared for unknown object {x!r}")
            if m not in bounds:
                raise MalformedInput(f"identity of {x!r} is unknown morphism {m!r}")
        missing = obj_set - set(ident)
        if missing:
            raise MalformedInput(f"objects without identity: {sorted(missing)}")
        table: dict[tuple[str, str], str] = {}
        for (g, f), h in dict(compose).items():
            for m in (g, f, h):
                if m not in bounds:
                    raise MalformedInput(f"composition table mentions unknown {m!r}")
            table[(g, f)] = h
        if fill_units:
            for m, (s, t) in bounds.items():
                table.setdefault((ident[t], m), m)
                table.setdefault((m, ident[s]), m)

        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphisms: tuple[str, ...] = tuple(sorted(bounds))
        self.identity: dict[str, str] = {x: ident[x] for x in self.objects}
        self.table = {k: table[k] for k in sorted(table)}
        self._bounds = bounds
        hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            hom.setdefault(bounds[m], []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._identities = set(self.identity.values())

    # -- basic queries
    def src(self, m: str) -> str:
        return self._bounds[m][0]

    def tgt(self, m: str) -> str:
        return self._bounds[m][1]

    def bounds(self, m: str) -> tuple[str, str]:
        return self._bounds[m]

    def has_morphism(self, m: str) -> bool:
        return m in self._bounds

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom.get((a, b), ())

    def is_identity(self, m: str) -> bool:
        return m in self._identities

    def compose(self, g: str, f: str) -> str:
        """``g o f``."""
        if self.tgt(f) != self.src(g):
            raise NotComposable(
                f"cannot compose {g!r} after {f!r}: {self.tgt(f)!r} != {self.src(g)!r}"
            )
        try:
            return self.table[(g, f)]
        except KeyError:
            raise MalformedInput(f"composition table lacks ({g!r}, {f!r})") from None

    def compose_all(self, *ms: str) -> str:
        """Compose right-to-left: ``compose_all(h, g, f) == h o g o f``."""
        result = ms[-1]
        for m in reversed(ms[:-1]):
            result = self.compose(m, result)
        return result

    def inverse(self, m: str) -> str | None:
        s, t = self._bounds[m]
        for n in self.hom(t, s):
            if self.table.get((n, m)) == self.identity[s] and self.table.get((m, n)) == self.identity[t]:
                return n
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._hom.values())

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for f in self.morphisms:
            for g in self.morphisms:
                if self.src(g) == self.tgt(f):
                    yield g, f

    def key(self) -> tuple:
        return (
            self.objects,
            tuple((m,) + self._bounds[m] for m in self.morphisms),
            tuple(self.identity.items()),
            tuple(self.table.items()),
        )

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FinCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def compose(c: FinCat, g: str, f: str) -> str:
    return c.compose(g, f)


def validate_category(c: FinCat) -> ValidationReport:
    """List every violated category axiom instance; empty iff ``c`` is a category."""
    report = ValidationReport()
    for x, i in c.identity.items():
        if c.bounds(i) != (x, x):
            report.add("boundary", "identity", x, i, detail=f"identity has bounds {c.bounds(i)}")
    for (g, f), h in c.table.items():
        if c.tgt(f) != c.src(g):
            report.add("spurious", g, f, detail="entry for a non-composable pair")
            continue
        if c.bounds(h) != (c.src(f), c.tgt(g)):
            report.add(
                "boundary", g, f, h,
                detail=f"composite should run {c.src(f)}->{c.tgt(g)}, got {c.src(h)}->{c.tgt(h)}",
            )
    pairs = list(c.composable_pairs())
    for g, f in pairs:
        if (g, f) not in c.table:
            report.add("missing", g, f, detail="no composite recorded")
    for m in c.morphisms:
        s, t = c.bounds(m)
        if c.table.get((c.identity[t], m)) != m:
            report.add("unit", "left", m)
        if c.table.get((m, c.identity[s])) != m:
            report.add("unit", "right", m)
    for g, f in pairs:
        gf = c.table.get((g, f))
        if gf is None:
            continue
        for h in c.morphisms:
            if c.src(h) != c.tgt(g):
                continue
            hg = c.table.get((h, g))
            if hg is None:
                continue
            left = c.table.get((h, gf))
            right = c.table.get((hg, f))
            if left is None or right is None or left != right:
                report.add("associativity", h, g, f, detail=f"{left} != {right}")
    return report


# -- standard small categories


def poset_category(elements: Iterable[str], leq) -> FinCat:
    """Thin category of a finite preorder; the morphism x<=y is named ``"x->y"``."""
    elems = sorted(elements)
    arrows = [(f"{x}->{y}", x, y) for x in elems for y in elems if leq(x, y)]
    table = {}
    for x, y, z in itertools.product(elems, repeat=3):
        if leq(x, y) and leq(y, z):
            table[(f"{y}->{z}", f"{x}->{y}")] = f"{x}->{z}"
    return FinCat(elems, arrows, {x: f"{x}->{x}" for x in elems}, table)


def chain(n: int) -> FinCat:
    """The ordinal 0 < 1 < ... < n-1 (requires n <= 10 for lexicographic order)."""
    return poset_category([str(i) for i in range(n)], lambda a, b: int(a) <= int(b))


def discrete(n_or_names) -> FinCat:
    names = [str(i) for i in range(n_or_names)] if isinstance(n_or_names, int) else list(n_or_names)
    return poset_category(names, lambda a, b: a == b)


def terminal() -> FinCat:
    return poset_category(["*"], lambda a, b: True)


def empty_category() -> FinCat:
    return FinCat([], [], {}, {})


def product_category(a: FinCat, b: FinCat) -> FinCat:
    def ob(x, y):
        return f"({x},{y})"

    def mor(f, g):
        return f"({f},{g})"

    objects = [ob(x, y) for x in a.objects for y in b.objects]
    arrows = [
        (mor(f, g), ob(a.src(f), b.src(g)), ob(a.tgt(f), b.tgt(g)))
        for f in a.morphisms
        for g in b.morphisms
    ]
    identity = {ob(x, y): mor(a.identity[x], b.identity[y]) for x in a.objects for y in b.objects}
    table = {}
    for (f2, f1), f in a.table.items():
        for (g2, g1), g in b.table.items():
            table[(mor(f2, g2), mor(f1, g1))] = mor(f, g)
    return FinCat(objects, arrows, identity, table)


def underlying_graph(c: FinCat) -> FinGraph:
    return FinGraph(c.objects, [(m, c.src(m), c.tgt(m)) for m in c.morphisms if not c.is_identity(m)])


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: FinGraph, name: str = "G") -> str:
    lines = [f"digraph {_dot_id(name)} {{"]
    lines += [f"  {_dot_id(n)};" for n in g.nodes]
    lines += [f"  {_dot_id(s)} -> {_dot_id(t)} [label={_dot_id(e)}];" for e, s, t in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(c: FinCat, name: str = "C") -> str:
    """DOT rendering of the underlying graph (identities omitted)."""
    return graph_to_dot(underlying_graph(c), name)


# ---------------------------------------------------------------------------
# functors and natural transformations


class Functor:
    def __init__(
        self,
        dom: FinCat,
        cod: FinCat,
        omap: Mapping[str, str] | None,
        mmap: Mapping[str, str],
    ):
        self.dom = dom
        self.cod = cod
        mmap = dict(mmap)
        if omap is None:
            try:
                omap = {x: cod.src(mmap[dom.identity[x]]) for x in dom.objects}
            except KeyError as exc:
                raise MalformedInput(f"functor map incomplete at {exc}") from None
        self.omap = {x: omap[x] for x in dom.objects if x in omap}
        self.mmap = {m: mmap[m] for m in dom.morphisms if m in mmap}
        if len(self.omap) != len(dom.objects) or len(self.mmap) != len(dom.morphisms):
            raise MalformedInput("functor maps are not total")

    @classmethod
    def identity(cls, c: FinCat) -> "Functor":
        return cls(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})

    @classmethod
    def constant(cls, dom: FinCat, cod: FinCat, x: str) -> "Functor":
        i = cod.identity[x]
        return cls(dom, cod, {a: x for a in dom.objects}, {m: i for m in dom.morphisms})

    def ob(self, x: str) -> str:
        return self.omap[x]

    def mor(self, m: str) -> str:
        return self.mmap[m]

    def key(self) -> tuple:
        return tuple(self.mmap[m] for m in self.dom.morphisms) + tuple(
            self.omap[x] for x in self.dom.objects
        )

    def __eq__(self, other):
        return (
            isinstance(other, Functor)
            and self.omap == other.omap
            and self.mmap == other.mmap
            and self.dom == other.dom
            and self.cod == other.cod
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Functor({self.omap})"


def compose_functors(g: Functor, f: Functor) -> Functor:
    """``g o f``."""
    if f.cod != g.dom:
        raise NotComposable("functor codomain/domain mismatch")
    return Functor(
        f.dom,
        g.cod,
        {x: g.omap[f.omap[x]] for x in f.dom.objects},
        {m: g.mmap[f.mmap[m]] for m in f.dom.morphisms},
    )


def check_functor(F: Functor) -> ValidationReport:
    report = ValidationReport()
    A, B = F.dom, F.cod
    for x, y in F.omap.items():
        if y not in B.objects:
            report.add("dangling", "object", x, y)
    for m, n in F.mmap.items():
        if not B.has_morphism(n):
            report.add("dangling", "morphism", m, n)
    if not report.ok:
        return report
    for m, n in F.mmap.items():
        s, t = A.bounds(m)
        if B.bounds(n) != (F.omap[s], F.omap[t]):
            report.add("boundary", m, n)
    for x in A.objects:
        if F.mmap[A.identity[x]] != B.identity[F.omap[x]]:
            report.add("identity", x)
    if not report.ok:
        return report
    for (g, f), h in A.table.items():
        if B.table.get((F.mmap[g], F.mmap[f])) != F.mmap[h]:
            report.add("composition", g, f)
    return report


class NatTrans:
    """A natural transformation ``dom => cod`` given by its components."""

    def __init__(self, dom: Functor, cod: Functor, components: Mapping[str, str]):
        if dom.dom != cod.dom or dom.cod != cod.cod:
            raise MalformedInput("natural transformation between non-parallel functors")
        self.dom = dom
        self.cod = cod
        self.components = {x: components[x] for x in dom.dom.objects if x in components}
        if len(self.components) != len(dom.dom.objects):
            raise MalformedInput("natural transformation components are not total")

    @property
    def source(self) -> FinCat:
        return self.dom.dom

    @property
    def target(self) -> FinCat:
        return self.dom.cod

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def __eq__(self, other):
        return (
            isinstance(other, NatTrans)
            and self.components == other.components
            and self.dom == other.dom
            and self.cod == other.cod
        )

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __repr__(self):
        return f"NatTrans({self.components})"


def identity_transformation(F: Functor) -> NatTrans:
    return NatTrans(F, F, {x: F.cod.identity[F.omap[x]] for x in F.dom.objects})


def check_natural(alpha: NatTrans) -> ValidationReport:
    report = ValidationReport()
    F, G, C = alpha.dom, alpha.cod, alpha.target
    for x, a in alpha.components.items():
        if not C.has_morphism(a):
            report.add("dangling", x, a)
        elif C.bounds(a) != (F.omap[x], G.omap[x]):
            report.add("boundary", x, a, detail=f"expected {F.omap[x]}->{G.omap[x]}")
    if not report.ok:
        return report
    for m in alpha.source.morphisms:
        s, t = alpha.source.bounds(m)
        lhs = C.compose(G.mmap[m], alpha.components[s])
        rhs = C.compose(alpha.components[t], F.mmap[m])
        if lhs != rhs:
            report.add("naturality", m, detail=f"{lhs} != {rhs}")
    return report


def vcompose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Vertical composite ``beta . alpha``."""
    if alpha.cod != beta.dom:
        raise NotComposable("vertical composite of non-matching transformations")
    C = alpha.target
    return NatTrans(
        alpha.dom,
        beta.cod,
        {x: C.compose(beta.components[x], alpha.components[x]) for x in alpha.source.objects},
    )


def whisker_left(H: Functor, alpha: NatTrans) -> NatTrans:
    """``H * alpha : H F => H G``."""
    return NatTrans(
        compose_functors(H, alpha.dom),
        compose_functors(H, alpha.cod),
        {x: H.mmap[a] for x, a in alpha.components.items()},
    )


def whisker_right(alpha: NatTrans, K: Functor) -> NatTrans:
    """``alpha * K : F K => G K``."""
    return NatTrans(
        compose_functors(alpha.dom, K),
        compose_functors(alpha.cod, K),
        {x: alpha.components[K.omap[x]] for x in K.dom.objects},
    )


def is_invertible(alpha: NatTrans) -> bool:
    return all(alpha.target.is_iso(a) for a in alpha.components.values())


# -- enumeration


def enumerate_functors(a: FinCat, b: FinCat) -> list[Functor]:
    """Every functor a -> b, by backtracking; sorted by image tuple."""
    objs = a.objects
    # non-identity morphisms in an order that lets composition constraints bite early
    order = [m for m in a.morphisms if not a.is_identity(m)]
    order.sort(key=lambda m: (max(objs.index(a.src(m)), objs.index(a.tgt(m))), m))
    constraints: dict[str, list[tuple[str, str, str]]] = {m: [] for m in a.morphisms}
    for (g, f), h in a.table.items():
        for m in (g, f, h):
            constraints[m].append((g, f, h))

    results: list[Functor] = []
    omap: dict[str, str] = {}
    mmap: dict[str, str] = {}

    def consistent(m: str) -> bool:
        for g, f, h in constraints[m]:
            if g in mmap and f in mmap and h in mmap:
                if b.table.get((mmap[g], mmap[f])) != mmap[h]:
                    return False
        return True

    def assign_morphisms(i: int):
        if i == len(order):
            results.append(Functor(a, b, dict(omap), dict(mmap)))
            return
        m = order[i]
        for n in b.hom(omap[a.src(m)], omap[a.tgt(m)]):
            mmap[m] = n
            if consistent(m):
                assign_morphisms(i + 1)
            del mmap[m]

    def assign_objects(i: int):
        if i == len(objs):
            assign_morphisms(0)
            return
        x = objs[i]
        for y in b.objects:
            omap[x] = y
            ok = True
            for m in a.morphisms:
                s, t = a.bounds(m)
                if s in omap and t in omap and not b.hom(omap[s], omap[t]):
                    ok = False
                    break
            if ok:
                mmap[a.identity[x]] = b.identity[y]
                if consistent(a.identity[x]):
                    assign_objects(i + 1)
                del mmap[a.identity[x]]
            del omap[x]

    assign_objects(0)
    results.sort(key=lambda F: F.key())
    return results


def enumerate_transformations(F: Functor, G: Functor) -> list[NatTrans]:
    """Every natural transformation F => G."""
    A, C = F.dom, F.cod
    objs = A.objects
    comps: dict[str, str] = {}
    results: list[NatTrans] = []

    def ok(x: str) -> bool:
        for m in A.morphisms:
            s, t = A.bounds(m)
            if (s == x or t == x) and s in comps and t in comps:
                if C.compose(G.mmap[m], comps[s]) != C.compose(comps[t], F.mmap[m]):
                    return False
        return True

    def go(i: int):
        if i == len(objs):
            results.append(NatTrans(F, G, dict(comps)))
            return
        x = objs[i]
        for c in C.hom(F.omap[x], G.omap[x]):
            comps[x] = c
            if ok(x):
                go(i + 1)
            del comps[x]

    go(0)
    return results


def functor_id(F: Functor) -> str:
    return "<" + ",".join(F.mmap[m] for m in F.dom.morphisms) + ">" if F.dom.morphisms else "<>"


def transformation_id(alpha: NatTrans) -> str:
    comps = ",".join(alpha.components[x] for x in alpha.source.objects)
    return f"{functor_id(alpha.dom)}=>{functor_id(alpha.cod)}[{comps}]"


class FunctorCategory(FinCat):
    """``[a, b]`` together with the functors and transformations behind each id."""

    def __init__(self, a: FinCat, b: FinCat, functors: dict[str, Functor],
                 transformations: dict[str, NatTrans], table: dict):
        self.source = a
        self.target = b
        self.functors = functors
        self.transformations = transformations
        self._fid_by_key = {F.key(): fid for fid, F in functors.items()}
        self._tid_by_key = {
            (alpha.dom.key(), alpha.cod.key(), tuple(alpha.components.items())): tid
            for tid, alpha in transformations.items()
        }
        super().__init__(
            functors,
            [(tid, functor_id(t.dom), functor_id(t.cod)) for tid, t in transformations.items()],
            {fid: transformation_id(identity_transformation(F)) for fid, F in functors.items()},
            table,
            fill_units=False,
        )

    def object_of(self, F: Functor) -> str:
        return self._fid_by_key[F.key()]

    def morphism_of(self, alpha: NatTrans) -> str:
        return self._tid_by_key[(alpha.dom.key(), alpha.cod.key(), tuple(alpha.components.items()))]


def functor_category(a: FinCat, b: FinCat) -> FunctorCategory:
    """Category of all functors a -> b and natural transformations, composed componentwise."""
    b_limit = current_budget()
    functors = {}
    for F in enumerate_functors(a, b):
        functors[functor_id(F)] = F
        if len(functors) > b_limit.objects:
            raise SizeLimitExceeded(f"functor category exceeds {b_limit.objects} objects")
    transformations: dict[str, NatTrans] = {}
    by_pair: dict[tuple[str, str], list[str]] = {}
    for fid, F in functors.items():
        for gid, G in functors.items():
            for alpha in enumerate_transformations(F, G):
                tid = transformation_id(alpha)
                if tid in transformations:
                    raise MalformedInput(f"transformation id collision {tid!r}")
                transformations[tid] = alpha
                by_pair.setdefault((fid, gid), []).append(tid)
                if len(transformations) > b_limit.morphisms:
                    raise SizeLimitExceeded(
                        f"functor category exceeds {b_limit.morphisms} morphisms"
                    )
    table = {}
    for (fid, gid), firsts in by_pair.items():
        for hid in functors:
            seconds = by_pair.get((gid, hid), ())
            for t1 in firsts:
                for t2 in seconds:
                    table[(t2, t1)] = transformation_id(
                        vcompose(transformations[t2], transformations[t1])
                    )
    return FunctorCategory(a, b, functors, transformations, table)


# ---------------------------------------------------------------------------
# limits and Kan extensions


@dataclass(frozen=True)
class Cone:
    apex: str
    legs: tuple[tuple[str, str], ...]  # (diagram object, leg) in diagram-object order

    def leg(self, j: str) -> str:
        return dict(self.legs)[j]


def enumerate_cones(d: Functor, apex: str | None = None) -> list[Cone]:
    J, C = d.dom, d.cod
    apexes = [apex] if apex is not None else list(C.objects)
    objs = J.objects
    cones: list[Cone] = []
    for c in apexes:
        legs: dict[str, str] = {}

        def ok(j: str) -> bool:
            for u in J.morphisms:
                s, t = J.bounds(u)
                if (s == j or t == j) and s in legs and t in legs:
                    if C.compose(d.mmap[u], legs[s]) != legs[t]:
                        return False
            return True

        def go(i: int):
            if i == len(objs):
                cones.append(Cone(c, tuple((j, legs[j]) for j in objs)))
                return
            j = objs[i]
            for m in C.hom(c, d.omap[j]):
                legs[j] = m
                if ok(j):
                    go(i + 1)
                del legs[j]

        go(0)
    return cones


def factorizations(d: Functor, competitor: Cone, cone: Cone) -> list[str]:
    """All m: competitor.apex -> cone.apex with cone.leg(j) o m == competitor.leg(j)."""
    C = d.cod
    lim_legs = dict(cone.legs)
    other = dict(competitor.legs)
    return [
        m
        for m in C.hom(competitor.apex, cone.apex)
        if all(C.compose(lim_legs[j], m) == other[j] for j in d.dom.objects)
    ]


def limit(d: Functor) -> Cone | None:
    """A limiting cone for ``d``, verified universal against every cone; ``None`` if none exists."""
    cones = enumerate_cones(d)
    for candidate in cones:
        if all(len(factorizations(d, other, candidate)) == 1 for other in cones):
            return candidate
    return None


def comma_category(b: str, k: Functor) -> tuple[FinCat, Functor]:
    """The comma category (b | k) and its projection to the domain of ``k``."""
    A, B = k.dom, k.cod
    objects: list[str] = []
    info: dict[str, tuple[str, str]] = {}
    for a in A.objects:
        for h in B.hom(b, k.omap[a]):
            oid = f"({a},{h})"
            objects.append(oid)
            info[oid] = (a, h)
    arrows = []
    under: dict[str, str] = {}
    for s in objects:
        a, h = info[s]
        for t in objects:
            a2, h2 = info[t]
            for u in A.hom(a, a2):
                if B.compose(k.mmap[u], h) == h2:
                    mid = f"({s},{u},{t})"
                    arrows.append((mid, s, t))
                    under[mid] = u
    by_ends: dict[tuple[str, str, str], str] = {
        (s, under[m], t): m for m, s, t in arrows
    }
    identity = {o: by_ends[(o, A.identity[info[o][0]], o)] for o in objects}
    table = {}
    for m1, s1, t1 in arrows:
        for m2, s2, t2 in arrows:
            if s2 == t1:
                table[(m2, m1)] = by_ends[(s1, A.compose(under[m2], under[m1]), t2)]
    comma = FinCat(objects, arrows, identity, table)
    proj = Functor(comma, A, {o: info[o][0] for o in objects}, under)
    return comma, proj


@dataclass
class KanExtension:
    functor: Functor
    counit: NatTrans  # functor o k => f
    cones: dict[str, Cone]


def right_kan_extension(k: Functor, f: Functor) -> KanExtension:
    """Pointwise right Kan extension of ``f`` along ``k``.

    Raises NoExtension when a pointwise limit is missing.
    """
    if k.dom != f.dom:
        raise MalformedInput("k and f must share a domain")
    A, B, C = k.dom, k.cod, f.cod
    commas: dict[str, tuple[FinCat, Functor]] = {}
    cones: dict[str, Cone] = {}
    for b in B.objects:
        comma, proj = comma_category(b, k)
        cone = limit(compose_functors(f, proj))
        if cone is None:
            raise NoExtension(f"no limit over the comma category at {b!r}")
        commas[b] = (comma, proj)
        cones[b] = cone
    omap = {b: cones[b].apex for b in B.objects}
    mmap: dict[str, str] = {}
    for beta in B.morphisms:
        b, b2 = B.bounds(beta)
        src_legs = dict(cones[b].legs)
        tgt_legs = dict(cones[b2].legs)
        wanted = {}
        for oid in commas[b2][0].objects:
            a, h2 = _comma_parts(oid, commas[b2][1])
            wanted[oid] = src_legs[f"({a},{B.compose(h2, beta)})"]
        hits = [
            m
            for m in C.hom(omap[b], omap[b2])
            if all(C.compose(tgt_legs[o], m) == w for o, w in wanted.items())
        ]
        if len(hits) != 1:
            raise NoExtension(f"induced map for {beta!r} is not unique")
        mmap[beta] = hits[0]
    R = Functor(B, C, omap, mmap)
    counit = NatTrans(
        compose_functors(R, k),
        f,
        {a: dict(cones[k.omap[a]].legs)[f"({a},{B.identity[k.omap[a]]})"] for a in A.objects},
    )
    return KanExtension(R, counit, cones)


def _comma_parts(oid: str, proj: Functor) -> tuple[str, str]:
    a = proj.omap[oid]
    return a, oid[len(a) + 2 : -1]


def check_kan_universal(k: Functor, f: Functor, ext: KanExtension) -> ValidationReport:
    """Every (G, gamma: G k => f) factors uniquely through the counit."""
    report = ValidationReport()
    B, C = k.cod, f.cod
    R = ext.functor
    for G in enumerate_functors(B, C):
        Gk = compose_functors(G, k)
        sigmas = enumerate_transformations(G, R)
        for gamma in enumerate_transformations(Gk, f):
            hits = [s for s in sigmas if vcompose(ext.counit, whisker_right(s, k)) == gamma]
            if len(hits) != 1:
                report.add("universal", functor_id(G), transformation_id(gamma),
                           detail=f"{len(hits)} factorizations")
    return report


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass
class Isomorphism:
    forward: Functor
    backward: Functor


def _signature(c: FinCat, x: str) -> tuple:
    return (
        len(c.hom(x, x)),
        tuple(sorted(len(c.hom(x, y)) for y in c.objects)),
        tuple(sorted(len(c.hom(y, x)) for y in c.objects)),
    )


def iso_search(a: FinCat, b: FinCat) -> Isomorphism | None:
    """Find mutually inverse functors a <-> b, or ``None`` after exhaustive search."""
    for c in (a, b):
        _check_budget(len(c.objects), len(c.morphisms), "iso_search input")
    if len(a.objects) != len(b.objects) or len(a.morphisms) != len(b.morphisms):
        return None
    sig_a = {x: _signature(a, x) for x in a.objects}
    sig_b = {y: _signature(b, y) for y in b.objects}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None
    objs = a.objects
    omap: dict[str, str] = {}
    used: set[str] = set()

    def objects_ok(x: str) -> bool:
        y = omap[x]
        for x2, y2 in omap.items():
            if len(a.hom(x, x2)) != len(b.hom(y, y2)) or len(a.hom(x2, x)) != len(b.hom(y2, y)):
                return False
        return True

    def match_morphisms() -> dict[str, str] | None:
        mmap = {a.identity[x]: b.identity[omap[x]] for x in objs}
        rest = [m for m in a.morphisms if m not in mmap]
        taken = set(mmap.values())

        def ok(m: str) -> bool:
            for g in a.morphisms:
                if g not in mmap:
                    continue
                for pair in ((g, m), (m, g)):
                    h = a.table.get(pair)
                    if h is not None and h in mmap:
                        if b.table.get((mmap[pair[0]], mmap[pair[1]])) != mmap[h]:
                            return False
            return True

        def go(i: int) -> bool:
            if i == len(rest):
                return True
            m = rest[i]
            s, t = a.bounds(m)
            for n in b.hom(omap[s], omap[t]):
                if n in taken:
                    continue
                mmap[m] = n
                taken.add(n)
                if ok(m) and go(i + 1):
                    return True
                del mmap[m]
                taken.discard(n)
            return False

        return mmap if go(0) else None

    def go(i: int) -> dict[str, str] | None:
        if i == len(objs):
            return match_morphisms()
        x = objs[i]
        for y in b.objects:
            if y in used or sig_b[y] != sig_a[x]:
                continue
            omap[x] = y
            used.add(y)
            if objects_ok(x):
                found = go(i + 1)
                if found is not None:
                    return found
            del omap[x]
            used.discard(y)
        return None

    mmap = go(0)
    if mmap is None:
        return None
    forward = Functor(a, b, dict(omap), mmap)
    backward = Functor(b, a, {y: x for x, y in omap.items()}, {n: m for m, n in mmap.items()})
    return Isomorphism(forward, backward)
