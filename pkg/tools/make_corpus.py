"""Regenerate the input documents and manifest of the bundled corpus.

Golden outputs are then refreshed with ``catkit corpus run --update``.
"""

from __future__ import annotations

import random
from pathlib import Path

from catkit import io
from catkit.acceptance import violating_square
from catkit.descent import closure_monad, em_diagram, identity_monad
from catkit.fincat import Functor, NatTrans, chain, functor_category, identity_transformation, terminal
from catkit.generators import (
    corpus_categories,
    corpus_computads,
    cyclic2,
    monotone_functor,
    poset_category,
    random_mate_square,
)
from catkit.mates import AdjunctionData, MateSquare, identity_adjunction, thin_adjunction
from catkit.topo import realize2

ROOT = Path(__file__).resolve().parents[1] / "src" / "catkit" / "corpus"


def write(rel: str, doc) -> str:
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(io.dumps(doc), encoding="utf-8", newline="\n")
    return rel


def main() -> None:
    cases = []

    def case(name, operation, exit=0, params=None, **inputs):
        cases.append(
            {
                "name": name,
                "operation": operation,
                "inputs": inputs,
                "params": params or {},
                "golden": f"golden/{name}.out",
                "exit": exit,
            }
        )

    cats = corpus_categories()
    for name, c in cats.items():
        rel = write(f"inputs/cat_{name}.json", io.dump_fincat(c))
        case(f"validate_{name}", "fincat validate", **{"in": rel})
        case(f"roundtrip_{name}", "bicat roundtrip", **{"in": rel})
    broken = io.dump_fincat(chain(3))
    for entry in broken["compose"]:
        if entry["g"] == "1->2" and entry["f"] == "0->1":
            entry["result"] = "0->0"
    case("validate_broken", "fincat validate", exit=2, **{"in": write("inputs/broken.json", broken)})
    dangling = io.dump_fincat(chain(2))
    dangling["morphisms"].append({"id": "ghost", "src": "0", "tgt": "9"})
    case("validate_dangling", "fincat validate", exit=2, **{"in": write("inputs/dangling.json", dangling)})
    case("validate_chain3_dot", "fincat validate", params={"format": "dot"}, **{"in": "inputs/cat_chain3.json"})

    loop = {"nodes": ["n"], "edges": [{"id": "x", "src": "n", "tgt": "n"}]}
    case("paths_loop", "fincat paths", params={"from": "n", "to": "n", "bound": 3},
         **{"in": write("inputs/graph_loop.json", loop)})
    fc = write("inputs/fc_chain2_chain2.json", io.dump_fincat(functor_category(chain(2), chain(2))))
    case("iso_chain3_fc", "fincat iso", **{"in": "inputs/cat_chain3.json", "with": fc})
    case("iso_discrete2_chain2", "fincat iso", **{"in": "inputs/cat_discrete2.json", "with": "inputs/cat_chain2.json"})
    case("functor_category_d2_c2", "fincat functor-category",
         **{"in": "inputs/cat_discrete2.json", "with": "inputs/cat_chain2.json"})
    case("budget_exceeded", "fincat validate", exit=2, params={"budget": "2,100"},
         **{"in": "inputs/cat_finset3.json"})

    comps = corpus_computads()
    for name, c in comps.items():
        rel = write(f"inputs/cmp_{name}.json", io.dump_computad(c))
        case(f"abelianize_{name}", "present abelianize", **{"in": rel})
        case(f"deficiency_{name}", "present deficiency", **{"in": rel})
        case(f"homology_{name}", "topo homology", **{"in": rel})
        case(f"chi_{name}", "topo chi", **{"in": rel})
    case("thinness_torus", "present thinness", **{"in": "inputs/cmp_torus.json"})
    case("thinness_trivial_loop", "present thinness", **{"in": "inputs/cmp_trivial_loop.json"})
    case("wordeq_torus", "present word-eq", params={"lhs": "abab", "rhs": "aabb", "bound": 6},
         **{"in": "inputs/cmp_torus.json"})
    case("wordeq_free_loop", "present word-eq", params={"lhs": "x", "rhs": "xx", "bound": 4},
         **{"in": "inputs/cmp_free_loop.json"})
    case("realize_torus", "topo realize", **{"in": "inputs/cmp_torus.json"})
    case("realize_torus_dot", "topo realize", params={"format": "dot"}, **{"in": "inputs/cmp_torus.json"})
    case("pi1_klein", "topo pi1", **{"in": "inputs/cmp_klein.json"})
    cw = write("inputs/cw_torus.json", io.dump_cw(realize2(comps["torus"])))
    case("homology_cw_torus", "topo homology", **{"in": cw})
    case("abelianize_categorical", "present abelianize", exit=2, **{"in": write(
        "inputs/cmp_categorical_loop.json",
        {**io.dump_computad(comps["free_loop"]), "groupoidal": False})})

    c3 = chain(3)
    M = closure_monad(c3, {"0": "0", "1": "2", "2": "2"})
    monads = write("inputs/closure_monad.json", io.dump_monads({"closure": M}))
    case("em_check_closure", "descent em-check", **{"in": monads})
    case("em_check_identity_finset3", "descent em-check",
         **{"in": write("inputs/identity_monad_finset3.json", io.dump_monads({"identity": identity_monad(cats["finset3"])}))})
    pair = write("inputs/monad_pair.json", io.dump_monads({"y": M, "z": M}))
    case("monad_homs_closure", "descent monad-homs", **{"in": pair})
    em = write("inputs/descent_em_closure.json", io.dump_descent(em_diagram(M)))
    case("colax_em_closure", "descent colax", **{"in": em})
    case("strict_em_closure", "descent strict", **{"in": em})
    const = write("inputs/descent_constant_point.json", io.dump_descent(em_diagram(identity_monad(terminal()))))
    case("colax_constant_point", "descent colax", **{"in": const})
    bad = io.dump_descent(em_diagram(M))
    bad["diagram"]["T_sigma00"] = "T_n0"
    case("colax_rewired", "descent colax", exit=2, **{"in": write("inputs/descent_rewired.json", bad)})

    two = poset_category(["0", "2"], lambda a, b: int(a) <= int(b))
    f = monotone_functor(c3, two, {"0": "0", "1": "2", "2": "2"})
    g = monotone_functor(two, c3, {"0": "0", "2": "2"})
    galois = thin_adjunction(f, g)
    case("adjunction_galois", "mates check", **{"in": write("inputs/adj_galois.json", io.dump_adjunction(galois))})
    z2 = cyclic2()
    ident = Functor.identity(z2)
    fake = AdjunctionData(ident, ident, NatTrans(ident, ident, {"*": "0"}), NatTrans(ident, ident, {"*": "1"}))
    case("adjunction_broken", "mates check", exit=2,
         **{"in": write("inputs/adj_broken.json", io.dump_adjunction(fake))})
    idsq = MateSquare(identity_adjunction(c3), identity_adjunction(c3), Functor.identity(c3),
                      Functor.identity(c3), identity_transformation(Functor.identity(c3)))
    rel = write("inputs/square_identity.json", io.dump_mate_square(idsq))
    case("mate_identity", "mates mate", **{"in": rel})
    case("bc_identity", "mates bc", **{"in": rel})
    rel = write("inputs/square_violating.json", io.dump_mate_square(violating_square()))
    case("mate_violating", "mates mate", **{"in": rel})
    case("bc_violating", "mates bc", **{"in": rel})
    swap = NatTrans(ident, ident, {"*": "1"})
    z2sq = MateSquare(identity_adjunction(z2), identity_adjunction(z2), ident, ident, swap)
    case("mate_cyclic2_swap", "mates mate", **{"in": write("inputs/square_cyclic2.json", io.dump_mate_square(z2sq))})
    rsq = random_mate_square(random.Random(7))
    rel = write("inputs/square_random.json", io.dump_mate_square(rsq))
    case("mate_random", "mates mate", **{"in": rel})
    case("bc_random", "mates bc", **{"in": rel})

    spans = {
        "schema": "span/v1",
        "spans": [
            {"left": ["a"], "mid": ["x", "y"], "right": ["b"], "legL": ["a", "a"], "legR": ["b", "b"]},
            {"left": ["b"], "mid": ["u", "v"], "right": ["c"], "legL": ["b", "b"], "legR": ["c", "c"]},
        ],
    }
    case("span_full_product", "bicat span-compose", **{"in": write("inputs/spans_product.json", spans)})
    disjoint = {
        "schema": "span/v1",
        "spans": [
            {"left": ["a"], "mid": ["x"], "right": ["b1", "b2"], "legL": ["a"], "legR": ["b1"]},
            {"left": ["b1", "b2"], "mid": ["u"], "right": ["c"], "legL": ["b2"], "legR": ["c"]},
        ],
    }
    case("span_disjoint", "bicat span-compose", **{"in": write("inputs/spans_disjoint.json", disjoint)})
    mismatch = {"schema": "span/v1", "spans": [spans["spans"][0], spans["spans"][0]]}
    case("span_mismatch", "bicat span-compose", exit=2, **{"in": write("inputs/spans_mismatch.json", mismatch)})
    mats = {
        "schema": "matrix/v1",
        "matrices": [
            {"rows": ["i"], "cols": ["k"], "entries": [{"row": "i", "col": "k", "elements": ["p", "q"]}]},
            {"rows": ["k"], "cols": ["j"], "entries": [{"row": "k", "col": "j", "elements": ["r", "s", "t"]}]},
        ],
    }
    case("mat_product_6", "bicat mat-compose", **{"in": write("inputs/matrices_6.json", mats)})
    ident_mat = {
        "schema": "matrix/v1",
        "matrices": [
            {"rows": ["i", "j"], "cols": ["i", "j"],
             "entries": [{"row": "i", "col": "j", "elements": ["p"]}, {"row": "j", "col": "j", "elements": ["q", "r"]}]},
            {"rows": ["i", "j"], "cols": ["i", "j"],
             "entries": [{"row": "i", "col": "i", "elements": ["*"]}, {"row": "j", "col": "j", "elements": ["*"]}]},
        ],
    }
    case("mat_identity", "bicat mat-compose", **{"in": write("inputs/matrices_identity.json", ident_mat)})

    write("manifest.json", {"schema": "manifest/v1", "cases": cases})
    print(f"{len(cases)} cases")


if __name__ == "__main__":
    main()
