"""The nine end-to-end acceptance checks, each returning a :class:`CheckResult`.

Every check is exact (no tolerances) and seeded; the ones with a time limit
report their wall-clock time against it.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .bicat import cat_to_mat_monad, cat_to_span_monad, mat_monad_to_cat, span_monad_to_cat
from .descent import (
    colax_descent_category,
    descent_equations,
    em_diagram,
    em_equivalence_check,
    identity_monad,
    monad_hom_diagram,
    monad_morphism_category,
)
from .errors import NoExtension
from .fincat import (
    FinCat,
    Functor,
    chain,
    compose_functors,
    discrete,
    empty_category,
    enumerate_functors,
    iso_search,
    limit,
    poset_category,
    right_kan_extension,
    check_kan_universal,
    terminal,
    validate_category,
    vcompose,
    whisker_left,
    whisker_right,
)
from .generators import (
    corpus_categories,
    corpus_computads,
    divisibility,
    random_closure_monad,
    random_mate_square,
    random_poset,
)
from .mates import (
    MateSquare,
    beck_chevalley,
    identity_adjunction,
    mate,
    mate_inverse,
    paste_horizontal,
    thin_adjunction,
)
from .fincat import NatTrans, identity_transformation
from .present import Presentation, Thinness, abelianization, deficiency, thinness_obstruction
from .topo import euler_characteristic, homology, realize2


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float | None = None
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and (self.limit is None or self.seconds < self.limit)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.seconds:.2f}s" + (f" (limit {self.limit:g}s)" if self.limit else "")
        extra = f" - {self.details[0]}" if self.details and not self.passed else ""
        return f"[{status}] criterion {self.number}: {self.name} [{timing}]{extra}"

    def to_json(self, timing: bool = False) -> dict:
        doc = {"criterion": self.number, "name": self.name, "passed": self.passed, "details": self.details}
        if timing:
            doc["seconds"] = round(self.seconds, 3)
        return doc


def _timed(number: int, name: str, limit: float | None, body: Callable[[list[str]], bool]) -> CheckResult:
    details: list[str] = []
    t0 = time.perf_counter()
    ok = body(details)
    return CheckResult(number, name, ok, time.perf_counter() - t0, limit, details)


# ---------------------------------------------------------------------------


def em_as_descent(seed: int = 0) -> CheckResult:
    def body(details):
        rng = random.Random(seed)
        ok = True
        for name, c in corpus_categories().items():
            if em_equivalence_check(identity_monad(c)) is None:
                details.append(f"identity monad on {name}: no isomorphism")
                ok = False
        for i in range(20):
            M = random_closure_monad(rng, rng.randint(1, 8))
            if em_equivalence_check(M) is None:
                details.append(f"closure monad #{i}: no isomorphism")
                ok = False
        return ok

    return _timed(1, "Eilenberg-Moore category is the colax descent category", 10.0, body)


def _pasted_mate(left: MateSquare, right: MateSquare) -> NatTrans:
    """``(m' . mate(left)) o (mate(right) . n)``."""
    return vcompose(whisker_left(right.m, mate(left)), whisker_right(mate(right), left.n))


def mate_bijection(seed: int = 0) -> CheckResult:
    def body(details):
        rng = random.Random(seed)
        ok = True
        for i in range(100):
            sq = random_mate_square(rng)
            beta = mate(sq)
            if mate_inverse(sq, beta) != sq.alpha:
                details.append(f"square #{i}: mate_inverse(mate(alpha)) != alpha")
                ok = False
            if mate(MateSquare(sq.lu, sq.fg, sq.m, sq.n, mate_inverse(sq, beta))) != beta:
                details.append(f"square #{i}: mate(mate_inverse(beta)) != beta")
                ok = False
        for i in range(25):
            left = random_mate_square(rng)
            right = random_mate_square(rng, lu=left.fg)
            if mate(paste_horizontal(left, right)) != _pasted_mate(left, right):
                details.append(f"pair #{i}: mate does not respect horizontal pasting")
                ok = False
        return ok

    return _timed(2, "mate correspondence is a bijection compatible with pasting", 5.0, body)


def violating_square() -> MateSquare:
    """``id -| id`` on the point against ``0 -| !`` for the chain 0 < 1, with ``m`` picking 1."""
    pt = terminal()
    two = chain(2)
    f = Functor(pt, two, {"*": "0"}, {"*->*": "0->0"})
    g = Functor(two, pt, {"0": "*", "1": "*"}, {m: "*->*" for m in two.morphisms})
    fg = thin_adjunction(f, g)
    m = Functor(pt, two, {"*": "1"}, {"*->*": "1->1"})
    n = Functor.identity(pt)
    alpha = identity_transformation(compose_functors(g, m))
    return MateSquare(identity_adjunction(pt), fg, m, n, alpha)


def beck_chevalley_witness(seed: int = 0) -> CheckResult:
    def body(details):
        ok = True
        sq = violating_square()
        verdict = beck_chevalley(sq)
        beta = mate(sq)
        Y = beta.target
        if verdict.satisfied or Y.is_iso(beta[verdict.witness]) or beta[verdict.witness] != verdict.component:
            details.append("constructed square is not a verified violation")
            ok = False
        rng = random.Random(seed)
        found = False
        for _ in range(200):
            r = random_mate_square(rng)
            v = beck_chevalley(r)
            if not v.satisfied:
                found = not mate(r).target.is_iso(v.component)
                break
        if not found:
            details.append("no verified violation among random squares")
            ok = False
        for c in (terminal(), chain(3), divisibility()):
            a = identity_adjunction(c)
            ident = Functor.identity(c)
            idsq = MateSquare(a, a, ident, ident, identity_transformation(ident))
            if not beck_chevalley(idsq).satisfied:
                details.append("identity square is not Satisfied")
                ok = False
        return ok

    return _timed(3, "Beck-Chevalley violation witnessed, identity square satisfied", None, body)


def span_mat_round_trips() -> CheckResult:
    def body(details):
        ok = True
        for name, c in corpus_categories().items():
            if len(c.objects) > 6:
                continue
            s = span_monad_to_cat(cat_to_span_monad(c))
            m = mat_monad_to_cat(cat_to_mat_monad(c))
            for label, d in (("span", s), ("matrix", m)):
                if not validate_category(d).ok or d != c:
                    details.append(f"{label} round trip fails on {name}")
                    ok = False
        return ok

    return _timed(4, "span and matrix monads round-trip with categories", 5.0, body)


def topology_coherence() -> CheckResult:
    def body(details):
        ok = True
        for name, c in corpus_computads().items():
            p = Presentation(c)
            x = realize2(c)
            ab = abelianization(p)
            h = homology(x)
            chi = euler_characteristic(x)
            if [(ci.nodes, ci.group) for ci in ab] != list(h.components):
                details.append(f"{name}: abelianization differs from H1")
                ok = False
            if len(ab) != h.h0_rank or len(chi.components) != h.h0_rank:
                details.append(f"{name}: component counts differ")
                ok = False
            if h.h0_rank == 1 and chi.total != 1 - deficiency(p):
                details.append(f"{name}: chi != 1 - deficiency")
                ok = False
        comps = corpus_computads()
        torus = Presentation(comps["torus"])
        tx = realize2(torus.computad)
        if not (
            euler_characteristic(tx).total == 0
            and homology(tx).h1.free_rank == 2
            and not homology(tx).h1.torsion
            and thinness_obstruction(torus).verdict is Thinness.NOT_THIN
        ):
            details.append("torus: expected chi 0, H1 = Z^2, NotThin")
            ok = False
        disk = Presentation(comps["trivial_loop"])
        dx = realize2(disk.computad)
        if not (euler_characteristic(dx).total == 1 and homology(dx).h1.trivial and deficiency(disk) == 0):
            details.append("<a | a>: expected chi 1, trivial H1, deficiency 0")
            ok = False
        return ok

    return _timed(5, "abelianization, homology, Euler characteristic and deficiency agree", None, body)


def descent_specialization(seed: int = 0) -> CheckResult:
    def body(details):
        rng = random.Random(seed)
        ok = True
        for i in range(10):
            M = random_closure_monad(rng, rng.randint(2, 8))
            D = em_diagram(M)
            Y, T = M.base, M.T
            for x in Y.objects:
                for a in Y.hom(T.ob(x), x):
                    assoc, unit = descent_equations(D, x, a)
                    algebra_assoc = (Y.compose(a, T.mor(a)), Y.compose(a, M.mult[x]))
                    algebra_unit = (Y.compose(a, M.unit[x]), Y.identity[x])
                    if assoc != algebra_assoc or unit != algebra_unit:
                        details.append(f"monad #{i} at ({x},{a}): equations differ")
                        ok = False
        return ok

    return _timed(6, "descent equations specialize to the algebra axioms", None, body)


def monad_homs_as_descent(seed: int = 0) -> CheckResult:
    def body(details):
        rng = random.Random(seed)
        ok = True
        for i in range(5):
            y = random_closure_monad(rng, rng.randint(1, 3))
            z = random_closure_monad(rng, rng.randint(1, 3))
            direct = monad_morphism_category(y, z)
            via = colax_descent_category(monad_hom_diagram(y, z))
            if set(direct.objects) != set(via.objects):
                details.append(f"pair #{i}: object sets differ under f <-> f, phi <-> xi")
                ok = False
            if iso_search(direct, via) is None:
                details.append(f"pair #{i}: no isomorphism")
                ok = False
        return ok

    return _timed(7, "monad-morphism category is a colax descent category", 30.0, body)


def _all_cones(d: Functor, apex: str) -> list[dict[str, str]]:
    """Independent cone enumeration: every leg tuple, filtered by commutativity."""
    J, C = d.dom, d.cod
    out = []
    homs = [C.hom(apex, d.ob(j)) for j in J.objects]
    for legs in itertools.product(*homs):
        L = dict(zip(J.objects, legs))
        if all(C.compose(d.mor(u), L[J.src(u)]) == L[J.tgt(u)] for u in J.morphisms):
            out.append(L)
    return out


def _shapes() -> dict[str, FinCat]:
    return {
        "empty": empty_category(),
        "point": terminal(),
        "pair": discrete(2),
        "arrow": chain(2),
        "cospan": poset_category(["a", "b", "c"], lambda s, t: s == t or (t == "c" and s != "c")),
    }


def universal_properties(seed: int = 0) -> CheckResult:
    def body(details):
        ok = True
        targets = {k: c for k, c in corpus_categories().items() if len(c.objects) <= 4}
        for tname, C in targets.items():
            for sname, J in _shapes().items():
                for d in enumerate_functors(J, C):
                    cones = [(x, legs) for x in C.objects for legs in _all_cones(d, x)]

                    def universal(apex, lim_legs):
                        for x, legs in cones:
                            hits = [
                                m
                                for m in C.hom(x, apex)
                                if all(C.compose(lim_legs[j], m) == legs[j] for j in J.objects)
                            ]
                            if len(hits) != 1:
                                return False
                        return True

                    cone = limit(d)
                    if cone is None:
                        if any(universal(x, legs) for x, legs in cones):
                            details.append(f"{sname} in {tname}: a limit exists but none was returned")
                            ok = False
                    elif not universal(cone.apex, dict(cone.legs)):
                        details.append(f"{sname} in {tname}: returned cone is not universal")
                        ok = False
        rng = random.Random(seed)
        checked = 0
        for _ in range(12):
            A = random_poset(rng, rng.randint(1, 3))
            B = random_poset(rng, rng.randint(1, 4))
            C = random_poset(rng, rng.randint(1, 4))
            ks = enumerate_functors(A, B)
            fs = enumerate_functors(A, C)
            if not ks or not fs:
                continue
            k, f = rng.choice(ks), rng.choice(fs)
            try:
                ext = right_kan_extension(k, f)
            except NoExtension:
                continue
            checked += 1
            report = check_kan_universal(k, f, ext)
            if not report.ok:
                details.append("right Kan extension fails its universal property")
                ok = False
        for name in ("chain3", "divisibility", "arrow_ab", "idempotent"):
            C = corpus_categories()[name]
            ident = Functor.identity(C)
            ext = right_kan_extension(ident, ident)
            checked += 1
            if ext.functor != ident or not check_kan_universal(ident, ident, ext).ok:
                details.append(f"Kan extension along the identity of {name} is wrong")
                ok = False
        if checked == 0:
            details.append("no Kan extension instances were checked")
            ok = False
        return ok

    return _timed(8, "limits and right Kan extensions satisfy their universal properties", None, body)


def determinism(run_corpus: Callable[[], dict[str, str]] | None = None) -> CheckResult:
    def body(details):
        if run_corpus is None:
            from .cli import corpus_outputs

            runner = corpus_outputs
        else:
            runner = run_corpus
        first = runner()
        second = runner()
        if first != second:
            diff = sorted(k for k in set(first) | set(second) if first.get(k) != second.get(k))
            details.append(f"outputs differ: {diff[:5]}")
            return False
        if not first:
            details.append("corpus produced no outputs")
            return False
        return True

    return _timed(9, "corpus outputs are byte-identical across runs", None, body)


CHECKS: dict[int, Callable[[], CheckResult]] = {
    1: em_as_descent,
    2: mate_bijection,
    3: beck_chevalley_witness,
    4: span_mat_round_trips,
    5: topology_coherence,
    6: descent_specialization,
    7: monad_homs_as_descent,
    8: universal_properties,
    9: determinism,
}


def run_all(numbers=None) -> list[CheckResult]:
    return [CHECKS[n]() for n in (numbers or sorted(CHECKS))]
