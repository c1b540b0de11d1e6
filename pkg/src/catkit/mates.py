"""Adjunctions between finite categories, mates and the Beck-Chevalley condition."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundaryMismatch, NotAnAdjunction, NotComposable
from .fincat import (
    FinCat,
    Functor,
    NatTrans,
    ValidationReport,
    check_functor,
    check_natural,
    compose_functors,
    identity_transformation,
    vcompose,
    whisker_left,
    whisker_right,
)


@dataclass
class AdjunctionData:
    """``left -| right`` with ``counit: left o right => Id`` and ``unit: Id => right o left``."""

    left: Functor
    right: Functor
    counit: NatTrans
    unit: NatTrans

    @property
    def source(self) -> FinCat:
        return self.left.dom

    @property
    def target(self) -> FinCat:
        return self.left.cod


def identity_adjunction(c: FinCat) -> AdjunctionData:
    i = Functor.identity(c)
    return AdjunctionData(i, i, identity_transformation(i), identity_transformation(i))


def thin_adjunction(f: Functor, g: Functor) -> AdjunctionData:
    """Adjunction data for monotone maps between thin categories (a Galois connection)."""
    Y, Z = f.dom, f.cod
    fg = compose_functors(f, g)
    gf = compose_functors(g, f)
    try:
        counit = {z: Z.hom(fg.omap[z], z)[0] for z in Z.objects}
        unit = {y: Y.hom(y, gf.omap[y])[0] for y in Y.objects}
    except IndexError:
        raise NotAnAdjunction("maps do not form a Galois connection") from None
    return AdjunctionData(
        f,
        g,
        NatTrans(fg, Functor.identity(Z), counit),
        NatTrans(Functor.identity(Y), gf, unit),
    )


def check_adjunction(a: AdjunctionData) -> ValidationReport:
    """Both triangle identities, checked at every object."""
    report = ValidationReport()
    f, g = a.left, a.right
    Y, Z = f.dom, f.cod
    if g.dom != Z or g.cod != Y:
        report.add("boundary", "right adjoint does not run back")
        return report
    report.extend(check_functor(f), "left")
    report.extend(check_functor(g), "right")
    if a.counit.dom != compose_functors(f, g) or a.counit.cod != Functor.identity(Z):
        report.add("boundary", "counit")
    if a.unit.dom != Functor.identity(Y) or a.unit.cod != compose_functors(g, f):
        report.add("boundary", "unit")
    if not report.ok:
        return report
    report.extend(check_natural(a.counit), "counit")
    report.extend(check_natural(a.unit), "unit")
    for y in Y.objects:
        fy = f.omap[y]
        if Z.compose(a.counit[fy], f.mmap[a.unit[y]]) != Z.identity[fy]:
            report.add("triangle", "left", y)
    for z in Z.objects:
        gz = g.omap[z]
        if Y.compose(g.mmap[a.counit[z]], a.unit[gz]) != Y.identity[gz]:
            report.add("triangle", "right", z)
    return report


def compose_adjunctions(a2: AdjunctionData, a1: AdjunctionData) -> AdjunctionData:
    """``a1: X -> Y`` followed by ``a2: Y -> Z`` gives ``f2 f1 -| g1 g2``."""
    if a1.target != a2.source:
        raise NotComposable("adjunctions do not meet")
    f1, g1, f2, g2 = a1.left, a1.right, a2.left, a2.right
    X, Z = a1.source, a2.target
    f = compose_functors(f2, f1)
    g = compose_functors(g1, g2)
    counit = {
        z: Z.compose(a2.counit[z], f2.mmap[a1.counit[g2.omap[z]]]) for z in Z.objects
    }
    unit = {
        x: X.compose(g1.mmap[a2.unit[f1.omap[x]]], a1.unit[x]) for x in X.objects
    }
    return AdjunctionData(
        f,
        g,
        NatTrans(compose_functors(f, g), Functor.identity(Z), counit),
        NatTrans(Functor.identity(X), compose_functors(g, f), unit),
    )


@dataclass
class MateSquare:
    """A 2-cell ``alpha: n u => g m`` between adjunctions ``l -| u: W -> X`` and ``f -| g: Z -> Y``.

    ``m: X -> Y`` and ``n: W -> Z``.
    """

    lu: AdjunctionData
    fg: AdjunctionData
    m: Functor
    n: Functor
    alpha: NatTrans

    def check(self) -> ValidationReport:
        report = ValidationReport()
        W, X = self.lu.source, self.lu.target
        Z, Y = self.fg.source, self.fg.target
        if self.m.dom != X or self.m.cod != Y:
            report.add("boundary", "m")
        if self.n.dom != W or self.n.cod != Z:
            report.add("boundary", "n")
        if not report.ok:
            return report
        u, g = self.lu.right, self.fg.right
        if self.alpha.dom != compose_functors(self.n, u) or self.alpha.cod != compose_functors(g, self.m):
            report.add("boundary", "alpha")
            return report
        report.extend(check_natural(self.alpha), "alpha")
        return report


def _require(sq: MateSquare) -> None:
    report = sq.check()
    if not report.ok:
        raise BoundaryMismatch(f"mate square is malformed: {report.to_json()}")


def mate(sq: MateSquare) -> NatTrans:
    """The mate ``f n => m l`` of ``alpha``, read componentwise from the pasting."""
    _require(sq)
    l, rho = sq.lu.left, sq.lu.unit
    f, eps = sq.fg.left, sq.fg.counit
    m, n, alpha = sq.m, sq.n, sq.alpha
    Y = f.cod
    comps = {}
    for w in l.dom.objects:
        lw = l.omap[w]
        comps[w] = Y.compose_all(
            eps[m.omap[lw]],
            f.mmap[alpha[lw]],
            f.mmap[n.mmap[rho[w]]],
        )
    return NatTrans(compose_functors(f, n), compose_functors(m, l), comps)


def mate_inverse(sq: MateSquare, beta: NatTrans) -> NatTrans:
    """Inverse correspondence: ``beta: f n => m l`` to a 2-cell ``n u => g m``."""
    _require(sq)
    u, mu = sq.lu.right, sq.lu.counit
    f, g, eta = sq.fg.left, sq.fg.right, sq.fg.unit
    m, n = sq.m, sq.n
    if beta.dom != compose_functors(f, n) or beta.cod != compose_functors(m, sq.lu.left):
        raise BoundaryMismatch("beta must run f n => m l")
    Z = g.cod
    comps = {}
    for x in u.dom.objects:
        ux = u.omap[x]
        comps[x] = Z.compose_all(
            g.mmap[m.mmap[mu[x]]],
            g.mmap[beta[ux]],
            eta[n.omap[ux]],
        )
    return NatTrans(compose_functors(n, u), compose_functors(g, m), comps)


@dataclass(frozen=True)
class BeckChevalley:
    satisfied: bool
    witness: str | None = None
    component: str | None = None

    def to_json(self) -> dict:
        if self.satisfied:
            return {"verdict": "Satisfied"}
        return {"verdict": "Violated", "witness": self.witness, "component": self.component}


def beck_chevalley(sq: MateSquare) -> BeckChevalley:
    """Satisfied iff every component of the mate is invertible; else the first bad object."""
    beta = mate(sq)
    Y = beta.target
    for w in beta.source.objects:
        if not Y.is_iso(beta[w]):
            return BeckChevalley(False, w, beta[w])
    return BeckChevalley(True)


def paste_horizontal(left: MateSquare, right: MateSquare) -> MateSquare:
    """Paste squares side by side; ``left.fg`` must be ``right.lu``."""
    if left.fg.left != right.lu.left or left.fg.right != right.lu.right:
        raise BoundaryMismatch("squares do not share an adjunction")
    alpha = vcompose(
        whisker_right(right.alpha, left.m),
        whisker_left(right.n, left.alpha),
    )
    return MateSquare(
        left.lu,
        right.fg,
        compose_functors(right.m, left.m),
        compose_functors(right.n, left.n),
        alpha,
    )


def paste_vertical(top: MateSquare, bottom: MateSquare) -> MateSquare:
    """Stack squares; ``bottom.m`` must equal ``top.n``.

    ``bottom`` has adjunctions ``W' -> W`` and ``Z' -> Z``; the result uses the
    composite adjunctions ``W' -> X`` and ``Z' -> Y``.
    """
    if bottom.m != top.n:
        raise BoundaryMismatch("squares do not share a horizontal functor")
    lu = compose_adjunctions(top.lu, bottom.lu)
    fg = compose_adjunctions(top.fg, bottom.fg)
    alpha = vcompose(
        whisker_left(bottom.fg.right, top.alpha),
        whisker_right(bottom.alpha, top.lu.right),
    )
    return MateSquare(lu, fg, top.m, bottom.n, alpha)
