"""JSON documents: loading with validation, and deterministic dumping.

Schemas (the ``"schema"`` field is optional on input and always written):

* ``fincat/v1``     ``{objects, morphisms:[{id,src,tgt}], identities:{obj:id}, compose:[{g,f,result}]}``
* ``graph``         ``{nodes:[id], edges:[{id,src,tgt}]}`` (embedded in ``computad/v1``)
* ``computad/v1``   ``{graph, groupoidal, relations:[{id, lhs, rhs, start?}]}``; a word is a list of
  ``[edge, +1|-1]`` pairs or a string such as ``"a.b.a'"``
* ``adjunction/v1``, ``descent/v1``, ``monad/v1`` share an environment of named
  ``categories``, ``functors`` ``{dom, cod, omap?, mmap}`` and ``transformations``
  ``{dom, cod, components}``. A functor reference is a name, ``"id:C"`` or a list
  ``[g, f]`` meaning ``g o f``.
* ``span/v1``       ``{left, mid, right, legL, legR}`` with legs aligned to ``mid``
* ``matrix/v1``     ``{rows, cols, entries:[{row, col, elements}]}``
* ``cw/v1``         ``{cells0, cells1:[{id,src,tgt}], cells2:[{id, boundary, start?}]}``
"""

from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Any

from .bicat import FinMatrix, FinSpan
from .descent import DescentInput, FinMonad
from .errors import MalformedInput
from .fincat import FinCat, FinGraph, Functor, NatTrans, compose_functors, identity_transformation
from .mates import AdjunctionData, MateSquare
from .present import Computad2, Relation, Word, parse_word, word_nodes
from .topo import CWComplex2

# ---------------------------------------------------------------------------
# helpers


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, ASCII, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def read_json(path: str | FsPath) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON ({exc.msg})") from None


def _field(doc: Any, key: str, kind=None, default=...):
    if not isinstance(doc, dict):
        raise MalformedInput(f"expected an object holding {key!r}")
    if key not in doc:
        if default is not ...:
            return default
        raise MalformedInput(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedInput(f"field {key!r} has the wrong type")
    return value


def _ids(values, what: str) -> list[str]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise MalformedInput(f"{what} must be a list of string ids")
    return list(values)


def _check_schema(doc: Any, expected: str) -> None:
    schema = doc.get("schema") if isinstance(doc, dict) else None
    if schema is not None and schema != expected:
        raise MalformedInput(f"expected schema {expected!r}, got {schema!r}")


def _elem(v):
    """JSON arrays become tuples so set elements are hashable."""
    if isinstance(v, list):
        return tuple(_elem(x) for x in v)
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return v
    raise MalformedInput(f"unsupported set element {v!r}")


def _unelem(v):
    if isinstance(v, tuple):
        return [_unelem(x) for x in v]
    return v


# ---------------------------------------------------------------------------
# categories and graphs


def load_fincat(doc: Any) -> FinCat:
    _check_schema(doc, "fincat/v1")
    objects = _ids(_field(doc, "objects", list), "objects")
    morphisms = []
    for m in _field(doc, "morphisms", list):
        morphisms.append((_field(m, "id", str), _field(m, "src", str), _field(m, "tgt", str)))
    identities = _field(doc, "identities", dict)
    table = {}
    for entry in _field(doc, "compose", list, []):
        key = (_field(entry, "g", str), _field(entry, "f", str))
        if key in table:
            raise MalformedInput(f"composite {key!r} listed twice")
        table[key] = _field(entry, "result", str)
    return FinCat(objects, morphisms, identities, table)


def dump_fincat(c: FinCat) -> dict:
    return {
        "schema": "fincat/v1",
        "objects": list(c.objects),
        "morphisms": [{"id": m, "src": c.src(m), "tgt": c.tgt(m)} for m in c.morphisms],
        "identities": dict(c.identity),
        "compose": [{"g": g, "f": f, "result": h} for (g, f), h in c.table.items()],
    }


def load_graph(doc: Any) -> FinGraph:
    nodes = _ids(_field(doc, "nodes", list), "nodes")
    edges = [
        (_field(e, "id", str), _field(e, "src", str), _field(e, "tgt", str))
        for e in _field(doc, "edges", list)
    ]
    return FinGraph(nodes, edges)


def dump_graph(g: FinGraph) -> dict:
    return {
        "nodes": list(g.nodes),
        "edges": [{"id": e, "src": s, "tgt": t} for e, s, t in g.edges],
    }


# ---------------------------------------------------------------------------
# words and computads


def load_word(g: FinGraph, value: Any, start: str | None = None) -> Word:
    if isinstance(value, str):
        return parse_word(g, value, start)
    if not isinstance(value, list):
        raise MalformedInput("a word is a string or a list of [edge, sign] pairs")
    letters = []
    for item in value:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not isinstance(item[0], str)
            or item[1] not in (1, -1)
            or isinstance(item[1], bool)
        ):
            raise MalformedInput(f"bad letter {item!r}")
        if not g.has_edge(item[0]):
            raise MalformedInput(f"unknown edge {item[0]!r}")
        letters.append((item[0], item[1]))
    if start is None:
        if not letters:
            raise MalformedInput("an empty word needs a start node")
        e, s = letters[0]
        start = g.src(e) if s > 0 else g.tgt(e)
    w = Word(start, tuple(letters))
    word_nodes(g, w)
    return w


def dump_word(w: Word) -> list:
    return [[e, s] for e, s in w.letters]


def _relation_start(g: FinGraph, r: dict) -> str | None:
    start = _field(r, "start", str, None)
    if start is not None:
        return start
    for side in ("lhs", "rhs"):
        v = _field(r, side)
        if isinstance(v, list) and v:
            return load_word(g, v).start
        if isinstance(v, str) and v.strip() not in ("", "1", "ε"):
            return parse_word(g, v).start
    return None


def load_computad(doc: Any) -> Computad2:
    _check_schema(doc, "computad/v1")
    g = load_graph(_field(doc, "graph", dict))
    groupoidal = _field(doc, "groupoidal", bool, False)
    rels = []
    for r in _field(doc, "relations", list, []):
        start = _relation_start(g, r)
        if start is None:
            raise MalformedInput(f"relation {r.get('id')!r} between empty words needs a start")
        rels.append(
            Relation(
                _field(r, "id", str),
                load_word(g, _field(r, "lhs"), start),
                load_word(g, _field(r, "rhs"), start),
            )
        )
    return Computad2(g, rels, groupoidal)


def dump_computad(c: Computad2) -> dict:
    return {
        "schema": "computad/v1",
        "graph": dump_graph(c.graph),
        "groupoidal": c.groupoidal,
        "relations": [
            {"id": r.id, "start": r.lhs.start, "lhs": dump_word(r.lhs), "rhs": dump_word(r.rhs)}
            for r in c.relations
        ],
    }


# ---------------------------------------------------------------------------
# environments of named categories, functors and transformations


class Environment:
    def __init__(self, doc: dict):
        self.categories: dict[str, FinCat] = {}
        for name, cdoc in _field(doc, "categories", dict, {}).items():
            self.categories[name] = load_fincat(cdoc)
        self._functor_docs = _field(doc, "functors", dict, {})
        self._trans_docs = _field(doc, "transformations", dict, {})
        self._functors: dict[str, Functor] = {}
        self._trans: dict[str, NatTrans] = {}

    def category(self, ref: Any) -> FinCat:
        if not isinstance(ref, str) or ref not in self.categories:
            raise MalformedInput(f"unknown category {ref!r}")
        return self.categories[ref]

    def functor(self, ref: Any) -> Functor:
        if isinstance(ref, list):
            if not ref:
                raise MalformedInput("empty functor composite")
            parts = [self.functor(r) for r in ref]
            out = parts[-1]
            for f in reversed(parts[:-1]):
                if out.cod != f.dom:
                    raise MalformedInput(f"functor composite {ref!r} does not typecheck")
                out = compose_functors(f, out)
            return out
        if not isinstance(ref, str):
            raise MalformedInput(f"bad functor reference {ref!r}")
        if ref.startswith("id:"):
            return Functor.identity(self.category(ref[3:]))
        if ref not in self._functors:
            if ref not in self._functor_docs:
                raise MalformedInput(f"unknown functor {ref!r}")
            fd = self._functor_docs[ref]
            omap = _field(fd, "omap", dict, None)
            self._functors[ref] = Functor(
                self.category(_field(fd, "dom", str)),
                self.category(_field(fd, "cod", str)),
                omap,
                _field(fd, "mmap", dict),
            )
        return self._functors[ref]

    def transformation(self, ref: Any) -> NatTrans:
        if isinstance(ref, str) and ref.startswith("id:"):
            return identity_transformation(self.functor(ref[3:]))
        if not isinstance(ref, str) or ref not in self._trans_docs:
            raise MalformedInput(f"unknown transformation {ref!r}")
        if ref not in self._trans:
            td = self._trans_docs[ref]
            self._trans[ref] = NatTrans(
                self.functor(_field(td, "dom")),
                self.functor(_field(td, "cod")),
                _field(td, "components", dict),
            )
        return self._trans[ref]


class EnvironmentWriter:
    """Collects named pieces while dumping composite structures."""

    def __init__(self):
        self.categories: dict[str, dict] = {}
        self.functors: dict[str, dict] = {}
        self.transformations: dict[str, dict] = {}
        self._cat_names: list[tuple[FinCat, str]] = []

    def category(self, c: FinCat, name: str) -> str:
        for known, n in self._cat_names:
            if known is c:
                return n
        self._cat_names.append((c, name))
        self.categories[name] = dump_fincat(c)
        return name

    def functor(self, F: Functor, name: str, dom: str, cod: str) -> str:
        self.functors[name] = {"dom": dom, "cod": cod, "omap": dict(F.omap), "mmap": dict(F.mmap)}
        return name

    def transformation(self, t: NatTrans, name: str, dom: Any, cod: Any) -> str:
        self.transformations[name] = {"dom": dom, "cod": cod, "components": dict(t.components)}
        return name

    def document(self, schema: str, **extra) -> dict:
        doc = {
            "schema": schema,
            "categories": self.categories,
            "functors": self.functors,
            "transformations": self.transformations,
        }
        doc.update(extra)
        return doc


# ---------------------------------------------------------------------------
# adjunctions and mate squares


def _load_adjunction(env: Environment, ad: Any) -> AdjunctionData:
    return AdjunctionData(
        env.functor(_field(ad, "left")),
        env.functor(_field(ad, "right")),
        env.transformation(_field(ad, "counit")),
        env.transformation(_field(ad, "unit")),
    )


def load_adjunction(doc: Any) -> AdjunctionData:
    """The adjunction under ``"adjunction"``."""
    _check_schema(doc, "adjunction/v1")
    env = Environment(doc)
    return _load_adjunction(env, _field(doc, "adjunction", dict))


def load_mate_square(doc: Any) -> MateSquare:
    """``{..., "adjunctions": {name: {...}}, "square": {lu, fg, m, n, alpha}}``."""
    _check_schema(doc, "adjunction/v1")
    env = Environment(doc)
    adjs = {k: _load_adjunction(env, v) for k, v in _field(doc, "adjunctions", dict).items()}
    sq = _field(doc, "square", dict)

    def adj(ref):
        if ref not in adjs:
            raise MalformedInput(f"unknown adjunction {ref!r}")
        return adjs[ref]

    return MateSquare(
        adj(_field(sq, "lu")),
        adj(_field(sq, "fg")),
        env.functor(_field(sq, "m")),
        env.functor(_field(sq, "n")),
        env.transformation(_field(sq, "alpha")),
    )


def _write_adjunction(w: EnvironmentWriter, a: AdjunctionData, prefix: str, y: str, z: str) -> dict:
    f = w.functor(a.left, f"{prefix}.left", y, z)
    g = w.functor(a.right, f"{prefix}.right", z, y)
    return {
        "left": f,
        "right": g,
        "counit": w.transformation(a.counit, f"{prefix}.counit", [f, g], f"id:{z}"),
        "unit": w.transformation(a.unit, f"{prefix}.unit", f"id:{y}", [g, f]),
    }


def dump_adjunction(a: AdjunctionData) -> dict:
    w = EnvironmentWriter()
    y = w.category(a.source, "Y")
    z = w.category(a.target, "Z")
    return w.document("adjunction/v1", adjunction=_write_adjunction(w, a, "adj", y, z))


def dump_mate_square(sq: MateSquare) -> dict:
    w = EnvironmentWriter()
    W = w.category(sq.lu.source, "W")
    X = w.category(sq.lu.target, "X")
    Z = w.category(sq.fg.source, "Z")
    Y = w.category(sq.fg.target, "Y")
    adjs = {
        "lu": _write_adjunction(w, sq.lu, "lu", W, X),
        "fg": _write_adjunction(w, sq.fg, "fg", Z, Y),
    }
    m = w.functor(sq.m, "m", X, Y)
    n = w.functor(sq.n, "n", W, Z)
    alpha = w.transformation(sq.alpha, "alpha", [n, "lu.right"], ["fg.right", m])
    return w.document(
        "adjunction/v1",
        adjunctions=adjs,
        square={"lu": "lu", "fg": "fg", "m": m, "n": n, "alpha": alpha},
    )


# ---------------------------------------------------------------------------
# descent inputs and monads


DESCENT_CATS = ("d1", "d2", "d3")


def load_descent(doc: Any) -> DescentInput:
    """``{categories, functors, transformations, diagram: {d1.., F_d0.., T_sigma00..}}``."""
    _check_schema(doc, "descent/v1")
    env = Environment(doc)
    dia = _field(doc, "diagram", dict)
    kwargs = {k: env.category(_field(dia, k)) for k in DESCENT_CATS}
    kwargs.update({k: env.functor(_field(dia, k)) for k in DescentInput.FUNCTORS})
    kwargs.update({k: env.transformation(_field(dia, k)) for k in DescentInput.TRANSFORMATIONS})
    return DescentInput(**kwargs)


def dump_descent(D: DescentInput) -> dict:
    w = EnvironmentWriter()
    names = {k: w.category(getattr(D, k), k) for k in DESCENT_CATS}
    shapes = {
        "F_d0": ("d1", "d2"), "F_d1": ("d1", "d2"), "F_s0": ("d2", "d1"),
        "F_del0": ("d2", "d3"), "F_del1": ("d2", "d3"), "F_del2": ("d2", "d3"),
    }
    dia = dict(names)
    for k, (a, b) in shapes.items():
        dia[k] = w.functor(getattr(D, k), k, names[a], names[b])
    bounds = {
        "T_sigma00": (["F_del0", "F_d0"], ["F_del1", "F_d0"]),
        "T_sigma01": (["F_del0", "F_d1"], ["F_del2", "F_d0"]),
        "T_sigma21": (["F_del2", "F_d1"], ["F_del1", "F_d1"]),
        "T_n0": (f"id:{names['d1']}", ["F_s0", "F_d0"]),
        "T_n1": (f"id:{names['d1']}", ["F_s0", "F_d1"]),
    }
    for k, (a, b) in bounds.items():
        dia[k] = w.transformation(getattr(D, k), k, a, b)
    return w.document("descent/v1", diagram=dia)


def _load_monad(env: Environment, md: Any) -> FinMonad:
    return FinMonad(
        env.category(_field(md, "base")),
        env.functor(_field(md, "T")),
        env.transformation(_field(md, "mult")),
        env.transformation(_field(md, "unit")),
    )


def load_monads(doc: Any) -> dict[str, FinMonad]:
    """``{categories, functors, transformations, monads: {name: {base, T, mult, unit}}}``."""
    _check_schema(doc, "monad/v1")
    env = Environment(doc)
    return {k: _load_monad(env, v) for k, v in _field(doc, "monads", dict).items()}


def dump_monads(monads: dict[str, FinMonad]) -> dict:
    w = EnvironmentWriter()
    out = {}
    for name, M in monads.items():
        base = w.category(M.base, f"{name}.base")
        T = w.functor(M.T, f"{name}.T", base, base)
        out[name] = {
            "base": base,
            "T": T,
            "mult": w.transformation(M.mult, f"{name}.mult", [T, T], T),
            "unit": w.transformation(M.unit, f"{name}.unit", f"id:{base}", T),
        }
    return w.document("monad/v1", monads=out)


# ---------------------------------------------------------------------------
# spans and matrices


def load_span(doc: Any) -> FinSpan:
    _check_schema(doc, "span/v1")
    mid = [_elem(x) for x in _field(doc, "mid", list)]
    legL = [_elem(x) for x in _field(doc, "legL", list)]
    legR = [_elem(x) for x in _field(doc, "legR", list)]
    if len(legL) != len(mid) or len(legR) != len(mid):
        raise MalformedInput("span legs must be aligned with mid")
    return FinSpan(
        tuple(_elem(x) for x in _field(doc, "left", list)),
        tuple(mid),
        tuple(_elem(x) for x in _field(doc, "right", list)),
        dict(zip(mid, legL)),
        dict(zip(mid, legR)),
    )


def dump_span(s: FinSpan) -> dict:
    return {
        "schema": "span/v1",
        "left": [_unelem(x) for x in s.left],
        "mid": [_unelem(x) for x in s.mid],
        "right": [_unelem(x) for x in s.right],
        "legL": [_unelem(s.legL[p]) for p in s.mid],
        "legR": [_unelem(s.legR[p]) for p in s.mid],
    }


def load_matrix(doc: Any) -> FinMatrix:
    _check_schema(doc, "matrix/v1")
    rows = tuple(_elem(x) for x in _field(doc, "rows", list))
    cols = tuple(_elem(x) for x in _field(doc, "cols", list))
    entry = {}
    for e in _field(doc, "entries", list, []):
        key = (_elem(_field(e, "row")), _elem(_field(e, "col")))
        if key in entry:
            raise MalformedInput(f"matrix entry {key!r} listed twice")
        entry[key] = tuple(_elem(x) for x in _field(e, "elements", list))
    return FinMatrix(rows, cols, entry)


def dump_matrix(m: FinMatrix) -> dict:
    return {
        "schema": "matrix/v1",
        "rows": [_unelem(x) for x in m.rows],
        "cols": [_unelem(x) for x in m.cols],
        "entries": [
            {"row": _unelem(i), "col": _unelem(j), "elements": [_unelem(x) for x in m[i, j]]}
            for i in m.rows
            for j in m.cols
            if m[i, j]
        ],
    }


def load_sequence(doc: Any, key: str, loader) -> list:
    """Either a single document or ``{key: [doc, ...]}``."""
    if isinstance(doc, dict) and key in doc:
        items = _field(doc, key, list)
        if not items:
            raise MalformedInput(f"{key!r} is empty")
        return [loader(d) for d in items]
    return [loader(doc)]


# ---------------------------------------------------------------------------
# CW complexes


def load_cw(doc: Any) -> CWComplex2:
    _check_schema(doc, "cw/v1")
    cells0 = _ids(_field(doc, "cells0", list), "cells0")
    cells1 = {}
    for e in _field(doc, "cells1", list):
        eid = _field(e, "id", str)
        if eid in cells1:
            raise MalformedInput(f"duplicate 1-cell {eid!r}")
        cells1[eid] = (_field(e, "src", str), _field(e, "tgt", str))
    skeleton = FinGraph(cells0, [(e, s, t) for e, (s, t) in cells1.items()])
    cells2 = {}
    for c in _field(doc, "cells2", list, []):
        cid = _field(c, "id", str)
        if cid in cells2:
            raise MalformedInput(f"duplicate 2-cell {cid!r}")
        cells2[cid] = load_word(skeleton, _field(c, "boundary"), _field(c, "start", str, None))
    return CWComplex2(cells0, cells1, cells2)


def dump_cw(x: CWComplex2) -> dict:
    return {
        "schema": "cw/v1",
        "cells0": list(x.cells0),
        "cells1": [{"id": e, "src": s, "tgt": t} for e, (s, t) in x.cells1.items()],
        "cells2": [
            {"id": c, "start": w.start, "boundary": dump_word(w)} for c, w in x.cells2.items()
        ],
    }
