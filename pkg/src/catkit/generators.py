"""Seeded random instances and the named corpus of small categories and computads."""

from __future__ import annotations

import itertools
import random

from .fincat import (
    FinCat,
    FinGraph,
    Functor,
    NatTrans,
    chain,
    compose_functors,
    discrete,
    empty_category,
    poset_category,
    terminal,
)
from .mates import AdjunctionData, MateSquare, thin_adjunction
from .present import Computad2, Presentation, Relation, parse_word
from .descent import FinMonad, closure_monad

# ---------------------------------------------------------------------------
# posets and monotone maps


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> FinCat:
    """A random partial order on ``"0".."n-1"`` (a transitive closure of a random DAG)."""
    names = [str(i) for i in range(n)]
    below = {i: {i} for i in range(n)}
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                below[j] |= below[i]
    return poset_category(names, lambda a, b: int(a) in below[int(b)])


def _order(p: FinCat) -> frozenset[tuple[str, str]]:
    cached = p.__dict__.get("_order_pairs")
    if cached is None:
        cached = frozenset((p.src(m), p.tgt(m)) for m in p.morphisms)
        p.__dict__["_order_pairs"] = cached
    return cached


def leq(p: FinCat, a: str, b: str) -> bool:
    return (a, b) in _order(p)


def monotone_functor(p: FinCat, q: FinCat, omap: dict[str, str]) -> Functor:
    """The functor between thin categories induced by a monotone object map."""
    mmap = {}
    for m in p.morphisms:
        s, t = p.bounds(m)
        hom = q.hom(omap[s], omap[t])
        if not hom:
            raise ValueError(f"object map is not monotone at {m!r}")
        mmap[m] = hom[0]
    return Functor(p, q, omap, mmap)


def random_monotone_map(rng: random.Random, p: FinCat, q: FinCat, tries: int = 200) -> dict[str, str] | None:
    """A random monotone map, built in a linear extension order with backtracking-free retries."""
    order = _linear_extension(p)
    po, qo = _order(p), _order(q)
    for _ in range(tries):
        omap: dict[str, str] = {}
        for x in order:
            below = [omap[w] for w in omap if (w, x) in po]
            above = [omap[w] for w in omap if (x, w) in po]
            choices = [
                y
                for y in q.objects
                if all((b, y) in qo for b in below) and all((y, a) in qo for a in above)
            ]
            if not choices:
                break
            omap[x] = rng.choice(choices)
        else:
            return omap
    return None


def _linear_extension(p: FinCat) -> list[str]:
    return sorted(p.objects, key=lambda x: (sum(1 for y in p.objects if leq(p, y, x)), x))


def closure_map(p: FinCat, closed: set[str]) -> dict[str, str]:
    """Least closed element above each point, enlarging ``closed`` until it exists."""
    closed = set(closed)
    while True:
        out = {}
        for x in p.objects:
            above = [s for s in closed if leq(p, x, s)]
            least = [s for s in above if all(leq(p, s, t) for t in above)]
            if not least:
                closed.add(x)
                break
            out[x] = least[0]
        else:
            return out


def random_closure_monad(rng: random.Random, n: int | None = None) -> FinMonad:
    n = rng.randint(1, 8) if n is None else n
    p = random_poset(rng, n)
    closed = {x for x in p.objects if rng.random() < 0.4}
    return closure_monad(p, closure_map(p, closed))


def random_galois_connection(rng: random.Random, y: FinCat, z: FinCat, tries: int = 20) -> AdjunctionData | None:
    """Random ``f -| g`` with ``f: y -> z``; ``g`` is sampled and ``f`` solved for."""
    for _ in range(tries):
        gmap = random_monotone_map(rng, z, y)
        if gmap is None:
            return None
        fmap = {}
        for x in y.objects:
            ups = [q for q in z.objects if leq(y, x, gmap[q])]
            least = [q for q in ups if all(leq(z, q, r) for r in ups)]
            if not least:
                break
            fmap[x] = least[0]
        else:
            return thin_adjunction(monotone_functor(y, z, fmap), monotone_functor(z, y, gmap))
    return None


def random_adjunction(rng: random.Random, max_objects: int = 4) -> AdjunctionData:
    while True:
        y = random_poset(rng, rng.randint(1, max_objects))
        z = random_poset(rng, rng.randint(1, max_objects))
        adj = random_galois_connection(rng, y, z)
        if adj is not None:
            return adj


def thin_transformation(F: Functor, G: Functor) -> NatTrans | None:
    """The unique ``F => G`` between functors into a thin category, if it exists."""
    comps = {}
    for x in F.dom.objects:
        hom = F.cod.hom(F.ob(x), G.ob(x))
        if not hom:
            return None
        comps[x] = hom[0]
    return NatTrans(F, G, comps)


def random_mate_square(
    rng: random.Random,
    lu: AdjunctionData | None = None,
    max_objects: int = 4,
    tries: int = 500,
) -> MateSquare:
    """A square of Galois connections ``l -| u: W -> X``, ``f -| g: Z -> Y`` with its 2-cell."""
    lu = lu or random_adjunction(rng, max_objects)
    while True:
        fg = random_adjunction(rng, max_objects)
        for _ in range(tries // 10):
            mmap = random_monotone_map(rng, lu.target, fg.target)
            nmap = random_monotone_map(rng, lu.source, fg.source)
            if mmap is None or nmap is None:
                break
            m = monotone_functor(lu.target, fg.target, mmap)
            n = monotone_functor(lu.source, fg.source, nmap)
            alpha = thin_transformation(compose_functors(n, lu.right), compose_functors(fg.right, m))
            if alpha is not None:
                return MateSquare(lu, fg, m, n, alpha)


# ---------------------------------------------------------------------------
# corpus of categories


def divisibility() -> FinCat:
    return poset_category(["1", "2", "3", "6"], lambda a, b: int(b) % int(a) == 0)


def monoid_category(elements: list[str], unit: str, mult) -> FinCat:
    """One-object category ``"*"`` from a finite monoid; ``mult(g, f)`` is ``g o f``."""
    return FinCat(
        ["*"],
        [(e, "*", "*") for e in elements],
        {"*": unit},
        {(g, f): mult(g, f) for g in elements for f in elements},
    )


def idempotent() -> FinCat:
    return monoid_category(["1", "e"], "1", lambda g, f: "e" if "e" in (g, f) else "1")


def cyclic2() -> FinCat:
    return monoid_category(["0", "1"], "0", lambda g, f: str((int(g) + int(f)) % 2))


def parallel_pair() -> FinCat:
    return FinCat(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b"), ("v", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {},
    )


def arrow_ab() -> FinCat:
    """Objects ``a, b`` with one non-identity ``u: a -> b``."""
    return FinCat(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {},
    )


def finset(n: int = 3) -> FinCat:
    """Finite sets ``{0..k-1}`` for ``k < n`` and all functions between them."""
    objs = [str(k) for k in range(n)]
    arrows = {}
    for s in range(n):
        for t in range(n):
            for f in itertools.product(range(t), repeat=s):
                arrows[f"{s}>{t}:" + "".join(map(str, f))] = (str(s), str(t), f)
    table = {}
    for gid, (gs, gt, g) in arrows.items():
        for fid, (fs, ft, f) in arrows.items():
            if ft == gs:
                h = tuple(g[i] for i in f)
                table[(gid, fid)] = f"{fs}>{gt}:" + "".join(map(str, h))
    ident = {str(k): f"{k}>{k}:" + "".join(str(i) for i in range(k)) for k in range(n)}
    return FinCat(objs, [(m, s, t) for m, (s, t, _) in arrows.items()], ident, table)


def corpus_categories() -> dict[str, FinCat]:
    return {
        "arrow_ab": arrow_ab(),
        "chain2": chain(2),
        "chain3": chain(3),
        "cyclic2": cyclic2(),
        "discrete2": discrete(2),
        "divisibility": divisibility(),
        "empty": empty_category(),
        "finset3": finset(3),
        "idempotent": idempotent(),
        "parallel_pair": parallel_pair(),
        "terminal": terminal(),
    }


# ---------------------------------------------------------------------------
# corpus of computads


def computad(nodes, edges, relations=(), groupoidal: bool = True) -> Computad2:
    """Build from ``(id, src, tgt)`` edges and ``(id, lhs, rhs)`` relations in word syntax.

    An empty side is written ``"1"`` and starts where the other side starts.
    """
    g = FinGraph(nodes, edges)
    rels = []
    for rid, lhs, rhs in relations:
        wl = parse_word(g, lhs) if lhs != "1" else None
        wr = parse_word(g, rhs) if rhs != "1" else None
        start = (wl or wr).start
        rels.append(Relation(rid, wl or parse_word(g, "1", start), wr or parse_word(g, "1", start)))
    return Computad2(g, rels, groupoidal)


def corpus_computads() -> dict[str, Computad2]:
    pt = ["p"]
    return {
        "disconnected": computad(
            ["p", "q", "r"],
            [("a", "p", "p"), ("e", "q", "r")],
        ),
        "edge": computad(["p", "q"], [("e", "p", "q")]),
        "free_loop": computad(pt, [("x", "p", "p")]),
        "klein": computad(pt, [("a", "p", "p"), ("b", "p", "p")], [("k", "a.b.a'.b", "1")]),
        "point": computad(pt, []),
        "rp2": computad(pt, [("a", "p", "p")], [("r", "a.a", "1")]),
        "sphere": computad(["n", "s"], [("u", "n", "s"), ("v", "n", "s")], [("h", "u", "v")]),
        "torsion3": computad(pt, [("a", "p", "p")], [("r", "a.a.a", "1")]),
        "torus": computad(pt, [("a", "p", "p"), ("b", "p", "p")], [("c", "a.b", "b.a")]),
        "triangle": computad(
            ["0", "1", "2"],
            [("f", "0", "1"), ("g", "1", "2"), ("h", "0", "2")],
            [("t", "f.g", "h")],
        ),
        "trivial_loop": computad(pt, [("a", "p", "p")], [("r", "a", "1")]),
        "wedge": computad(pt, [("a", "p", "p"), ("b", "p", "p")]),
    }


def corpus_presentations() -> dict[str, Presentation]:
    return {k: Presentation(c) for k, c in corpus_computads().items()}
