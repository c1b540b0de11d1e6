"""Colax and strict descent categories, monads and Eilenberg-Moore categories.

A :class:`DescentInput` is a strict 2-functor out of the truncated shape with
objects 1, 2, 3::

    1 --d0,d1--> 2 --del0,del1,del2--> 3,   s0: 2 -> 1

and 2-cells sigma00, sigma01, sigma21, n0, n1. Its colax descent category has
as objects the pairs ``(f, xi)`` with ``f`` in ``d1`` and
``xi: F_d0(f) -> F_d1(f)`` in ``d2`` satisfying

* associativity: ``sigma21_f . del2(xi) . sigma01_f . del0(xi) = del1(xi) . sigma00_f``
* identity:      ``s0(xi) . n0_f = n1_f``

(composites read right to left). For the diagram built from a monad these are
exactly the algebra axioms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput, NotAMonad, NotAnAdjunction
from .fincat import (
    FinCat,
    Functor,
    FunctorCategory,
    NatTrans,
    ValidationReport,
    check_functor,
    check_natural,
    compose_functors,
    enumerate_functors,
    enumerate_transformations,
    functor_category,
    functor_id,
    identity_transformation,
    iso_search,
    transformation_id,
    whisker_left,
    whisker_right,
)
from .mates import AdjunctionData, check_adjunction


@dataclass
class DescentInput:
    d1: FinCat
    d2: FinCat
    d3: FinCat
    F_d0: Functor
    F_d1: Functor
    F_s0: Functor
    F_del0: Functor
    F_del1: Functor
    F_del2: Functor
    T_sigma00: NatTrans  # del0 d0 => del1 d0
    T_sigma01: NatTrans  # del0 d1 => del2 d0
    T_sigma21: NatTrans  # del2 d1 => del1 d1
    T_n0: NatTrans  # Id => s0 d0
    T_n1: NatTrans  # Id => s0 d1

    FUNCTORS = ("F_d0", "F_d1", "F_s0", "F_del0", "F_del1", "F_del2")
    TRANSFORMATIONS = ("T_sigma00", "T_sigma01", "T_sigma21", "T_n0", "T_n1")


def validate_descent_input(D: DescentInput) -> ValidationReport:
    """Boundary and naturality conditions for every functor and 2-cell."""
    report = ValidationReport()
    shapes = {
        "F_d0": (D.d1, D.d2),
        "F_d1": (D.d1, D.d2),
        "F_s0": (D.d2, D.d1),
        "F_del0": (D.d2, D.d3),
        "F_del1": (D.d2, D.d3),
        "F_del2": (D.d2, D.d3),
    }
    for name, (dom, cod) in shapes.items():
        F = getattr(D, name)
        if F.dom != dom or F.cod != cod:
            report.add("boundary", name, detail="functor has the wrong domain or codomain")
        else:
            report.extend(check_functor(F), name)
    if not report.ok:
        return report
    c = compose_functors
    ident = Functor.identity(D.d1)
    expected = {
        "T_sigma00": (c(D.F_del0, D.F_d0), c(D.F_del1, D.F_d0)),
        "T_sigma01": (c(D.F_del0, D.F_d1), c(D.F_del2, D.F_d0)),
        "T_sigma21": (c(D.F_del2, D.F_d1), c(D.F_del1, D.F_d1)),
        "T_n0": (ident, c(D.F_s0, D.F_d0)),
        "T_n1": (ident, c(D.F_s0, D.F_d1)),
    }
    for name, (dom, cod) in expected.items():
        t = getattr(D, name)
        if t.dom != dom or t.cod != cod:
            report.add("boundary", name, detail="2-cell has the wrong source or target functor")
        else:
            report.extend(check_natural(t), name)
    return report


def descent_equations(D: DescentInput, f: str, xi: str) -> tuple[tuple[str, str], tuple[str, str]]:
    """Both sides of the associativity and identity equations at ``(f, xi)``."""
    d3, d1 = D.d3, D.d1
    assoc = (
        d3.compose_all(D.T_sigma21[f], D.F_del2.mor(xi), D.T_sigma01[f], D.F_del0.mor(xi)),
        d3.compose(D.F_del1.mor(xi), D.T_sigma00[f]),
    )
    unit = (d1.compose(D.F_s0.mor(xi), D.T_n0[f]), D.T_n1[f])
    return assoc, unit


class StructuredCategory(FinCat):
    """A category of pairs ``(x, s)`` over a base category, morphisms inherited from the base."""

    def __init__(self, base: FinCat, pairs: list[tuple[str, str]], admits):
        self.base = base
        self.pairs: dict[str, tuple[str, str]] = {}
        for x, s in pairs:
            self.pairs[f"({x},{s})"] = (x, s)
        arrows = []
        self.underlying: dict[str, str] = {}
        by_key: dict[tuple[str, str, str], str] = {}
        for sid, (x, s) in self.pairs.items():
            for tid, (y, t) in self.pairs.items():
                for m in base.hom(x, y):
                    if admits((x, s), (y, t), m):
                        mid = f"({sid},{m},{tid})"
                        arrows.append((mid, sid, tid))
                        self.underlying[mid] = m
                        by_key[(sid, m, tid)] = mid
        identity = {sid: by_key[(sid, base.identity[x], sid)] for sid, (x, _) in self.pairs.items()}
        table = {}
        for m1, s1, t1 in arrows:
            for m2, s2, t2 in arrows:
                if s2 == t1:
                    table[(m2, m1)] = by_key[
                        (s1, base.compose(self.underlying[m2], self.underlying[m1]), t2)
                    ]
        super().__init__(self.pairs, arrows, identity, table)

    def forgetful(self) -> Functor:
        return Functor(self, self.base, {k: v[0] for k, v in self.pairs.items()}, self.underlying)


def _require_valid(D: DescentInput) -> None:
    report = validate_descent_input(D)
    if not report.ok:
        raise InvalidInput("invalid descent input", report)


def descent_pairs(D: DescentInput) -> list[tuple[str, str]]:
    out = []
    for f in D.d1.objects:
        for xi in D.d2.hom(D.F_d0.ob(f), D.F_d1.ob(f)):
            (a_l, a_r), (u_l, u_r) = descent_equations(D, f, xi)
            if a_l == a_r and u_l == u_r:
                out.append((f, xi))
    return out


def _descent_morphism(D: DescentInput):
    d2 = D.d2

    def admits(src, tgt, m):
        (_, xi), (_, zeta) = src, tgt
        return d2.compose(D.F_d1.mor(m), xi) == d2.compose(zeta, D.F_d0.mor(m))

    return admits


def colax_descent_category(D: DescentInput, validate: bool = True) -> StructuredCategory:
    if validate:
        _require_valid(D)
    return StructuredCategory(D.d1, descent_pairs(D), _descent_morphism(D))


def descent_category(D: DescentInput, validate: bool = True) -> StructuredCategory:
    """Full subcategory of the colax descent category on invertible ``xi``."""
    if validate:
        _require_valid(D)
    pairs = [(f, xi) for f, xi in descent_pairs(D) if D.d2.is_iso(xi)]
    return StructuredCategory(D.d1, pairs, _descent_morphism(D))


# ---------------------------------------------------------------------------
# monads


@dataclass
class FinMonad:
    base: FinCat
    T: Functor
    mult: NatTrans  # T T => T
    unit: NatTrans  # Id => T


def check_monad(M: FinMonad) -> ValidationReport:
    report = ValidationReport()
    Y, T = M.base, M.T
    if T.dom != Y or T.cod != Y:
        report.add("boundary", "T")
        return report
    report.extend(check_functor(T), "T")
    if M.mult.dom != compose_functors(T, T) or M.mult.cod != T:
        report.add("boundary", "mult")
    if M.unit.dom != Functor.identity(Y) or M.unit.cod != T:
        report.add("boundary", "unit")
    if not report.ok:
        return report
    report.extend(check_natural(M.mult), "mult")
    report.extend(check_natural(M.unit), "unit")
    mu, eta = M.mult, M.unit
    for x in Y.objects:
        tx = T.ob(x)
        if Y.compose(mu[x], T.mor(mu[x])) != Y.compose(mu[x], mu[tx]):
            report.add("associativity", x)
        if Y.compose(mu[x], T.mor(eta[x])) != Y.identity[tx]:
            report.add("unit", "left", x)
        if Y.compose(mu[x], eta[tx]) != Y.identity[tx]:
            report.add("unit", "right", x)
    return report


def identity_monad(c: FinCat) -> FinMonad:
    i = Functor.identity(c)
    return FinMonad(c, i, identity_transformation(i), identity_transformation(i))


def closure_monad(c: FinCat, closure: dict[str, str]) -> FinMonad:
    """Monad on a thin category from an extensive, monotone, idempotent map."""
    mmap = {}
    for m in c.morphisms:
        s, t = c.bounds(m)
        hom = c.hom(closure[s], closure[t])
        if not hom:
            raise NotAMonad(f"closure is not monotone at {m!r}")
        mmap[m] = hom[0]
    T = Functor(c, c, closure, mmap)
    TT = compose_functors(T, T)
    try:
        mult = NatTrans(TT, T, {x: c.hom(TT.ob(x), T.ob(x))[0] for x in c.objects})
        unit = NatTrans(Functor.identity(c), T, {x: c.hom(x, T.ob(x))[0] for x in c.objects})
    except IndexError:
        raise NotAMonad("map is not extensive and idempotent") from None
    M = FinMonad(c, T, mult, unit)
    report = check_monad(M)
    if not report.ok:
        raise NotAMonad("closure map does not give a monad", report)
    return M


def em_diagram(M: FinMonad) -> DescentInput:
    """The descent diagram whose colax descent category is the category of algebras."""
    Y, T = M.base, M.T
    ident = Functor.identity(Y)
    return DescentInput(
        d1=Y, d2=Y, d3=Y,
        F_d0=T, F_d1=ident, F_s0=ident,
        F_del0=T, F_del1=ident, F_del2=ident,
        T_sigma00=NatTrans(compose_functors(T, T), T, M.mult.components),
        T_sigma01=identity_transformation(T),
        T_sigma21=identity_transformation(ident),
        T_n0=NatTrans(ident, T, M.unit.components),
        T_n1=identity_transformation(ident),
    )


def eilenberg_moore(M: FinMonad) -> StructuredCategory:
    """Algebras ``(x, a: Tx -> x)`` and their morphisms, by direct enumeration."""
    Y, T, mu, eta = M.base, M.T, M.mult, M.unit
    algebras = []
    for x in Y.objects:
        for a in Y.hom(T.ob(x), x):
            if Y.compose(a, T.mor(a)) == Y.compose(a, mu[x]) and Y.compose(a, eta[x]) == Y.identity[x]:
                algebras.append((x, a))

    def admits(src, tgt, m):
        (_, a), (_, b) = src, tgt
        return Y.compose(m, a) == Y.compose(b, T.mor(m))

    return StructuredCategory(Y, algebras, admits)


def em_equivalence_check(M: FinMonad):
    """Isomorphism between the algebra category and the colax descent category, or ``None``."""
    return iso_search(eilenberg_moore(M), colax_descent_category(em_diagram(M)))


def monad_from_adjunction(adj: AdjunctionData) -> FinMonad:
    """``(Y, g f, g eps f, eta)``."""
    report = check_adjunction(adj)
    if not report.ok:
        raise NotAnAdjunction("not an adjunction", report)
    f, g = adj.left, adj.right
    Y = f.dom
    T = compose_functors(g, f)
    mult = NatTrans(
        compose_functors(T, T), T, {y: g.mor(adj.counit[f.ob(y)]) for y in Y.objects}
    )
    M = FinMonad(Y, T, mult, NatTrans(Functor.identity(Y), T, adj.unit.components))
    report = check_monad(M)
    if not report.ok:
        raise NotAMonad("induced data fails the monad laws", report)
    return M


# ---------------------------------------------------------------------------
# monad morphisms (colax direction) f T_y => T_z f


@dataclass
class MonadMorphism:
    f: Functor
    phi: NatTrans  # f T_y => T_z f


def is_monad_morphism(y: FinMonad, z: FinMonad, mm: MonadMorphism) -> bool:
    f, phi = mm.f, mm.phi
    Z = z.base
    for x in y.base.objects:
        tx = y.T.ob(x)
        # mult_z f . T_z phi . phi T_y  ==  phi . f mult_y
        lhs = Z.compose_all(z.mult[f.ob(x)], z.T.mor(phi[x]), phi[tx])
        rhs = Z.compose(phi[x], f.mor(y.mult[x]))
        if lhs != rhs:
            return False
        # phi . f unit_y == unit_z f
        if Z.compose(phi[x], f.mor(y.unit[x])) != z.unit[f.ob(x)]:
            return False
    return True


def monad_morphisms(y: FinMonad, z: FinMonad) -> list[MonadMorphism]:
    out = []
    for f in enumerate_functors(y.base, z.base):
        src = compose_functors(f, y.T)
        tgt = compose_functors(z.T, f)
        for phi in enumerate_transformations(src, tgt):
            mm = MonadMorphism(f, phi)
            if is_monad_morphism(y, z, mm):
                out.append(mm)
    return out


def monad_morphism_category(y: FinMonad, z: FinMonad) -> FinCat:
    """Monad morphisms ``(f, phi)`` and the transformations ``f => h`` compatible with phi."""
    objs: dict[str, MonadMorphism] = {}
    for mm in monad_morphisms(y, z):
        objs[f"({functor_id(mm.f)},{transformation_id(mm.phi)})"] = mm
    Z = z.base
    arrows = []
    under: dict[str, NatTrans] = {}
    for sid, a in objs.items():
        for tid, b in objs.items():
            for t in enumerate_transformations(a.f, b.f):
                ok = all(
                    Z.compose(z.T.mor(t[x]), a.phi[x]) == Z.compose(b.phi[x], t[y.T.ob(x)])
                    for x in y.base.objects
                )
                if ok:
                    mid = f"({sid},{transformation_id(t)},{tid})"
                    arrows.append((mid, sid, tid))
                    under[mid] = t
    by_key = {(s, transformation_id(under[m]), t): m for m, s, t in arrows}
    identity = {
        sid: by_key[(sid, transformation_id(identity_transformation(a.f)), sid)]
        for sid, a in objs.items()
    }
    table = {}
    for m1, s1, t1 in arrows:
        for m2, s2, t2 in arrows:
            if s2 == t1:
                comp = NatTrans(
                    under[m1].dom,
                    under[m2].cod,
                    {x: Z.compose(under[m2][x], under[m1][x]) for x in y.base.objects},
                )
                table[(m2, m1)] = by_key[(s1, transformation_id(comp), t2)]
    cat = FinCat(objs, arrows, identity, table)
    cat.monad_morphisms = objs
    return cat


def monad_hom_diagram(y: FinMonad, z: FinMonad) -> DescentInput:
    """The descent diagram on ``[Y, Z]`` whose colax descent category is the monad-morphism category.

    Legs: ``d0 = - o T_y`` and ``d1 = T_z o -`` so that ``xi: f T_y -> T_z f``;
    ``del0 = - o T_y``, ``del1 = Id``, ``del2 = T_z o -``, ``s0 = Id``;
    ``sigma00 = f mult_y``, ``sigma01 = id``, ``sigma21 = mult_z f``,
    ``n0 = f unit_y``, ``n1 = unit_z f``.
    """
    FC = functor_category(y.base, z.base)
    ident = Functor.identity(FC)

    def pre(T: Functor) -> Functor:
        return Functor(
            FC, FC,
            {fid: FC.object_of(compose_functors(F, T)) for fid, F in FC.functors.items()},
            {tid: FC.morphism_of(whisker_right(t, T)) for tid, t in FC.transformations.items()},
        )

    def post(S: Functor) -> Functor:
        return Functor(
            FC, FC,
            {fid: FC.object_of(compose_functors(S, F)) for fid, F in FC.functors.items()},
            {tid: FC.morphism_of(whisker_left(S, t)) for tid, t in FC.transformations.items()},
        )

    pre_t, post_s = pre(y.T), post(z.T)
    c = compose_functors

    def cell(dom: Functor, cod: Functor, component) -> NatTrans:
        return NatTrans(dom, cod, {fid: FC.morphism_of(component(F)) for fid, F in FC.functors.items()})

    return DescentInput(
        d1=FC, d2=FC, d3=FC,
        F_d0=pre_t, F_d1=post_s, F_s0=ident,
        F_del0=pre_t, F_del1=ident, F_del2=post_s,
        T_sigma00=cell(c(pre_t, pre_t), pre_t, lambda F: whisker_left(F, y.mult)),
        T_sigma01=identity_transformation(c(pre_t, post_s)),
        T_sigma21=cell(c(post_s, post_s), post_s, lambda F: whisker_right(z.mult, F)),
        T_n0=cell(ident, pre_t, lambda F: whisker_left(F, y.unit)),
        T_n1=cell(ident, post_s, lambda F: whisker_right(z.unit, F)),
    )
