"""The bicategories of finite spans and of FinSet-valued matrices, and monads in them.

Elements of finite sets are hashable Python values (strings, integers or
nested tuples). Composites are built with a fixed element order so that the
associativity and unit constraints are concrete, checkable bijections:

* the pullback of ``m`` then ``n`` is the list of pairs ``(p, q)`` with
  ``p`` from ``m.mid`` and ``q`` from ``n.mid``, in lexicographic order;
* the entry ``(i, j)`` of a matrix composite is the list of triples
  ``(k, x, y)`` with ``x`` in ``m[i, k]`` and ``y`` in ``n[k, j]``.

A monad in spans is an internal category; a monad in matrices is a category
enriched in finite sets. Both round-trip with :class:`FinCat`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .errors import BoundaryMismatch, MalformedInput, NotAMonad
from .fincat import FinCat, ValidationReport, validate_category

Element = Hashable


def _unique(xs: Sequence, what: str) -> tuple:
    xs = tuple(xs)
    if len(set(xs)) != len(xs):
        raise MalformedInput(f"duplicate elements in {what}")
    return xs


# ---------------------------------------------------------------------------
# spans


@dataclass(frozen=True)
class FinSpan:
    """``left <-legL- mid -legR-> right``."""

    left: tuple
    mid: tuple
    right: tuple
    legL: Mapping[Element, Element]
    legR: Mapping[Element, Element]

    def __post_init__(self):
        object.__setattr__(self, "left", _unique(self.left, "left"))
        object.__setattr__(self, "mid", _unique(self.mid, "mid"))
        object.__setattr__(self, "right", _unique(self.right, "right"))
        L, R = set(self.left), set(self.right)
        for p in self.mid:
            if p not in self.legL or p not in self.legR:
                raise MalformedInput(f"span legs are not total at {p!r}")
            if self.legL[p] not in L or self.legR[p] not in R:
                raise MalformedInput(f"span leg at {p!r} leaves its codomain")
        object.__setattr__(self, "legL", {p: self.legL[p] for p in self.mid})
        object.__setattr__(self, "legR", {p: self.legR[p] for p in self.mid})


def identity_span(a: Sequence) -> FinSpan:
    a = tuple(a)
    ident = {x: x for x in a}
    return FinSpan(a, a, a, ident, ident)


def span_compose(n: FinSpan, m: FinSpan) -> FinSpan:
    """``n o m`` by the canonical pullback over ``m.right == n.left``."""
    if m.right != n.left:
        raise BoundaryMismatch("spans do not meet")
    mid = [(p, q) for p in m.mid for q in n.mid if m.legR[p] == n.legL[q]]
    return FinSpan(
        m.left,
        tuple(mid),
        n.right,
        {(p, q): m.legL[p] for p, q in mid},
        {(p, q): n.legR[q] for p, q in mid},
    )


def is_span_map(s: FinSpan, t: FinSpan, phi: Mapping) -> bool:
    """Is ``phi: s.mid -> t.mid`` a bijection commuting with both legs?"""
    if s.left != t.left or s.right != t.right:
        return False
    if set(phi) != set(s.mid) or sorted(map(repr, phi.values())) != sorted(map(repr, t.mid)):
        return False
    return all(t.legL[phi[p]] == s.legL[p] and t.legR[phi[p]] == s.legR[p] for p in s.mid)


def span_associator(c: FinSpan, b: FinSpan, a: FinSpan) -> dict:
    """``(c b) a -> c (b a)``: ``(x, (y, z)) |-> ((x, y), z)``."""
    src = span_compose(span_compose(c, b), a)
    return {e: ((e[0], e[1][0]), e[1][1]) for e in src.mid}


def span_left_unitor(m: FinSpan) -> dict:
    """``id o m -> m``."""
    return {e: e[0] for e in span_compose(identity_span(m.right), m).mid}


def span_right_unitor(m: FinSpan) -> dict:
    """``m o id -> m``."""
    return {e: e[1] for e in span_compose(m, identity_span(m.left)).mid}


def span_whisker(outer: Mapping | None, inner: Mapping | None, composite: FinSpan) -> dict:
    """Act on ``n o m`` by a map on the inner (``m``) and/or outer (``n``) factor."""
    fi = inner or {}
    fo = outer or {}
    return {(p, q): (fi.get(p, p), fo.get(q, q)) for p, q in composite.mid}


def span_pentagon(d: FinSpan, c: FinSpan, b: FinSpan, a: FinSpan) -> bool:
    """The two reassociations ``((d c) b) a -> d (c (b a))`` agree and are span maps."""
    dc = span_compose(d, c)
    start = span_compose(span_compose(dc, b), a)
    end = span_compose(d, span_compose(c, span_compose(b, a)))
    # route 1: two associators
    a1 = span_associator(dc, b, a)
    a2 = span_associator(d, c, span_compose(b, a))
    route1 = {e: a2[a1[e]] for e in start.mid}
    # route 2: three associators, two of them whiskered
    w1 = span_whisker(span_associator(d, c, b), None, start)
    mid1 = span_compose(span_compose(d, span_compose(c, b)), a)
    a3 = span_associator(d, span_compose(c, b), a)
    mid2 = span_compose(d, span_compose(span_compose(c, b), a))
    w2 = span_whisker(None, span_associator(c, b, a), mid2)
    route2 = {e: w2[a3[w1[e]]] for e in start.mid}
    return (
        route1 == route2
        and is_span_map(start, end, route1)
        and is_span_map(start, mid1, w1)
        and is_span_map(mid1, mid2, a3)
    )


def span_triangle(n: FinSpan, m: FinSpan) -> bool:
    """``(n id) m -> n (id m) -> n m`` equals ``(n id) m -> n m`` by the right unitor."""
    idb = identity_span(m.right)
    start = span_compose(span_compose(n, idb), m)
    assoc = span_associator(n, idb, m)
    lam = span_whisker(None, span_left_unitor(m), span_compose(n, span_compose(idb, m)))
    rho = span_whisker(span_right_unitor(n), None, start)
    return all(lam[assoc[e]] == rho[e] for e in start.mid)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class FinMatrix:
    rows: tuple
    cols: tuple
    entry: Mapping[tuple[Element, Element], tuple]

    def __post_init__(self):
        object.__setattr__(self, "rows", _unique(self.rows, "rows"))
        object.__setattr__(self, "cols", _unique(self.cols, "cols"))
        full = {}
        for i in self.rows:
            for j in self.cols:
                full[(i, j)] = _unique(self.entry.get((i, j), ()), f"entry {(i, j)!r}")
        extra = set(self.entry) - set(full)
        if extra:
            raise MalformedInput(f"matrix entries outside the index sets: {sorted(map(repr, extra))}")
        object.__setattr__(self, "entry", full)

    def __getitem__(self, ij):
        return self.entry[ij]

    def sizes(self) -> list[list[int]]:
        return [[len(self.entry[(i, j)]) for j in self.cols] for i in self.rows]


def identity_matrix(a: Sequence) -> FinMatrix:
    a = tuple(a)
    return FinMatrix(a, a, {(i, j): (("*",) if i == j else ()) for i in a for j in a})


def zero_matrix(rows: Sequence, cols: Sequence) -> FinMatrix:
    return FinMatrix(tuple(rows), tuple(cols), {})


def mat_compose(n: FinMatrix, m: FinMatrix) -> FinMatrix:
    """``(n o m)[i, j] = sum over k of m[i, k] x n[k, j]``, tagged by ``k``."""
    if m.cols != n.rows:
        raise BoundaryMismatch("matrices do not meet")
    entry = {}
    for i in m.rows:
        for j in n.cols:
            entry[(i, j)] = tuple(
                (k, x, y) for k in m.cols for x in m[i, k] for y in n[k, j]
            )
    return FinMatrix(m.rows, n.cols, entry)


def is_matrix_map(s: FinMatrix, t: FinMatrix, phi: Mapping) -> bool:
    """``phi`` sends each entry of ``s`` bijectively onto the same entry of ``t``."""
    if s.rows != t.rows or s.cols != t.cols:
        return False
    for ij, xs in s.entry.items():
        image = [phi.get((ij, x)) for x in xs]
        if sorted(map(repr, image)) != sorted(map(repr, t[ij])):
            return False
    return True


def mat_associator(c: FinMatrix, b: FinMatrix, a: FinMatrix) -> dict:
    """``(c b) a -> c (b a)``: ``(k, x, (l, y, z)) |-> (l, (k, x, y), z)``."""
    src = mat_compose(mat_compose(c, b), a)
    out = {}
    for ij, xs in src.entry.items():
        for e in xs:
            k, x, (l, y, z) = e
            out[(ij, e)] = (l, (k, x, y), z)
    return out


def mat_left_unitor(m: FinMatrix) -> dict:
    src = mat_compose(identity_matrix(m.cols), m)
    return {(ij, e): e[1] for ij, xs in src.entry.items() for e in xs}


def mat_right_unitor(m: FinMatrix) -> dict:
    src = mat_compose(m, identity_matrix(m.rows))
    return {(ij, e): e[2] for ij, xs in src.entry.items() for e in xs}


def mat_whisker(outer: Mapping | None, inner: Mapping | None, n: FinMatrix, m: FinMatrix) -> dict:
    """Act on ``n o m`` by entrywise maps on ``m`` (inner) and/or ``n`` (outer)."""
    comp = mat_compose(n, m)
    out = {}
    for (i, j), xs in comp.entry.items():
        for e in xs:
            k, x, y = e
            x2 = inner[((i, k), x)] if inner else x
            y2 = outer[((k, j), y)] if outer else y
            out[((i, j), e)] = (k, x2, y2)
    return out


def mat_pentagon(d: FinMatrix, c: FinMatrix, b: FinMatrix, a: FinMatrix) -> bool:
    dc = mat_compose(d, c)
    cb = mat_compose(c, b)
    ba = mat_compose(b, a)
    start = mat_compose(mat_compose(dc, b), a)
    end = mat_compose(d, mat_compose(c, ba))
    a1 = mat_associator(dc, b, a)
    a2 = mat_associator(d, c, ba)
    w1 = mat_whisker(mat_associator(d, c, b), None, mat_compose(dc, b), a)
    a3 = mat_associator(d, cb, a)
    w2 = mat_whisker(None, mat_associator(c, b, a), d, mat_compose(cb, a))
    route1, route2 = {}, {}
    for ij, xs in start.entry.items():
        for e in xs:
            route1[(ij, e)] = a2[(ij, a1[(ij, e)])]
            route2[(ij, e)] = w2[(ij, a3[(ij, w1[(ij, e)])])]
    mid1 = mat_compose(mat_compose(d, cb), a)
    return route1 == route2 and is_matrix_map(start, end, route1) and is_matrix_map(start, mid1, w1)


def mat_triangle(n: FinMatrix, m: FinMatrix) -> bool:
    idb = identity_matrix(m.cols)
    start = mat_compose(mat_compose(n, idb), m)
    assoc = mat_associator(n, idb, m)
    lam = mat_whisker(None, mat_left_unitor(m), n, mat_compose(idb, m))
    rho = mat_whisker(mat_right_unitor(n), None, mat_compose(n, idb), m)
    return all(
        lam[(ij, assoc[(ij, e)])] == rho[(ij, e)] for ij, xs in start.entry.items() for e in xs
    )


# ---------------------------------------------------------------------------
# monads


@dataclass
class SpanMonad:
    """An internal category: ``dom, cod: morset -> objset``, composition on the pullback.

    ``comp`` is keyed by composable pairs ``(p, q)`` with ``cod(p) == dom(q)``
    (``p`` first) and returns the composite ``q o p``.
    """

    objset: tuple
    morset: tuple
    dom: Mapping[Element, Element]
    cod: Mapping[Element, Element]
    comp: Mapping[tuple, Element]
    ident: Mapping[Element, Element]

    @property
    def span(self) -> FinSpan:
        return FinSpan(self.objset, self.morset, self.objset, self.dom, self.cod)

    def pullback(self) -> FinSpan:
        return span_compose(self.span, self.span)

    def check(self) -> ValidationReport:
        report = ValidationReport()
        try:
            pb = self.pullback()
        except MalformedInput as exc:
            report.add("boundary", "span", detail=str(exc))
            return report
        mors = set(self.morset)
        for x in self.objset:
            i = self.ident.get(x)
            if i not in mors:
                report.add("missing", "ident", str(x))
            elif self.dom[i] != x or self.cod[i] != x:
                report.add("unit", "ident-boundary", str(x))
        if set(self.comp) != set(pb.mid):
            report.add("missing", "comp", detail="comp is not defined exactly on the pullback")
        if not report.ok:
            return report
        for p, q in pb.mid:
            h = self.comp[(p, q)]
            if h not in mors or self.dom[h] != self.dom[p] or self.cod[h] != self.cod[q]:
                report.add("boundary", "comp", str(p), str(q))
        if not report.ok:
            return report
        for p in self.morset:
            if self.comp[(self.ident[self.dom[p]], p)] != p or self.comp[(p, self.ident[self.cod[p]])] != p:
                report.add("unit", "square", str(p))
        # associativity square, through the canonical reassociation of the triple pullback
        for (p, q) in pb.mid:
            for r in self.morset:
                if self.dom[r] == self.cod[q]:
                    if self.comp[(self.comp[(p, q)], r)] != self.comp[(p, self.comp[(q, r)])]:
                        report.add("associativity", "square", str(p), str(q), str(r))
        return report


def cat_to_span_monad(c: FinCat) -> SpanMonad:
    s = SpanMonad(
        c.objects,
        c.morphisms,
        {m: c.src(m) for m in c.morphisms},
        {m: c.tgt(m) for m in c.morphisms},
        {},
        dict(c.identity),
    )
    s.comp = {(p, q): c.compose(q, p) for p, q in s.pullback().mid}
    report = s.check()
    if not report.ok:  # pragma: no cover - a valid category always encodes
        raise NotAMonad("encoding failed", report)
    return s


def span_monad_to_cat(s: SpanMonad) -> FinCat:
    report = s.check()
    if not report.ok:
        raise NotAMonad("span data violates the monad laws", report)
    c = FinCat(
        s.objset,
        [(m, s.dom[m], s.cod[m]) for m in s.morset],
        dict(s.ident),
        {(q, p): h for (p, q), h in s.comp.items()},
        fill_units=False,
    )
    report = validate_category(c)
    if not report.ok:  # pragma: no cover - check() covers every axiom
        raise NotAMonad("decoded table is not a category", report)
    return c


@dataclass
class MatMonad:
    """A category enriched in finite sets.

    ``comp`` is keyed by ``(a, b, c, f, g)`` with ``f`` in ``hom[a, b]`` and
    ``g`` in ``hom[b, c]``, returning ``g o f`` in ``hom[a, c]``.
    """

    objset: tuple
    hom: FinMatrix
    comp: Mapping[tuple, Element] = field(default_factory=dict)
    ident: Mapping[Element, Element] = field(default_factory=dict)

    def composable(self):
        H = self.hom
        for a in self.objset:
            for b in self.objset:
                for c in self.objset:
                    for f in H[a, b]:
                        for g in H[b, c]:
                            yield a, b, c, f, g

    def check(self) -> ValidationReport:
        report = ValidationReport()
        H = self.hom
        if H.rows != tuple(self.objset) or H.cols != tuple(self.objset):
            report.add("boundary", "hom", detail="hom matrix is not indexed by the objects")
            return report
        for a in self.objset:
            if self.ident.get(a) not in H[a, a]:
                report.add("missing", "ident", str(a))
        keys = set(self.composable())
        if set(self.comp) != keys:
            report.add("missing", "comp", detail="comp is not defined exactly on composable pairs")
        if not report.ok:
            return report
        for a, b, c, f, g in keys:
            if self.comp[(a, b, c, f, g)] not in H[a, c]:
                report.add("boundary", "comp", str(f), str(g))
        if not report.ok:
            return report
        for a in self.objset:
            for b in self.objset:
                for f in H[a, b]:
                    if (
                        self.comp[(a, a, b, self.ident[a], f)] != f
                        or self.comp[(a, b, b, f, self.ident[b])] != f
                    ):
                        report.add("unit", str(f))
        for a, b, c, f, g in sorted(keys, key=repr):
            gf = self.comp[(a, b, c, f, g)]
            for d in self.objset:
                for h in H[c, d]:
                    lhs = self.comp[(a, c, d, gf, h)]
                    rhs = self.comp[(a, b, d, f, self.comp[(b, c, d, g, h)])]
                    if lhs != rhs:
                        report.add("associativity", str(f), str(g), str(h))
        return report


def cat_to_mat_monad(c: FinCat) -> MatMonad:
    hom = FinMatrix(c.objects, c.objects, {(a, b): c.hom(a, b) for a in c.objects for b in c.objects})
    m = MatMonad(c.objects, hom, {}, dict(c.identity))
    m.comp = {k: c.compose(k[4], k[3]) for k in m.composable()}
    return m


def mat_monad_to_cat(m: MatMonad) -> FinCat:
    """Decode; hom elements keep their names when those are globally unique strings."""
    report = m.check()
    if not report.ok:
        raise NotAMonad("matrix data violates the monad laws", report)
    H = m.hom
    elems = [(a, b, f) for a in m.objset for b in m.objset for f in H[a, b]]
    plain = all(isinstance(f, str) for _, _, f in elems) and len({f for *_, f in elems}) == len(elems)
    name: Callable = (lambda a, b, f: f) if plain else (lambda a, b, f: f"{a}:{f}:{b}")
    c = FinCat(
        [str(a) for a in m.objset],
        [(name(a, b, f), str(a), str(b)) for a, b, f in elems],
        {str(a): name(a, a, m.ident[a]) for a in m.objset},
        {
            (name(b, cc, g), name(a, b, f)): name(a, cc, h)
            for (a, b, cc, f, g), h in m.comp.items()
        },
        fill_units=False,
    )
    report = validate_category(c)
    if not report.ok:  # pragma: no cover
        raise NotAMonad("decoded table is not a category", report)
    return c
