import random

import pytest
from hypothesis import given, strategies as st

from catkit.errors import MalformedInput
from catkit.fincat import FinGraph
from catkit.generators import computad, corpus_computads, corpus_presentations
from catkit.present import AbelianGroup, Word, abelianization, deficiency, presentation_from_graph
from catkit.snf import IntMatrix, in_integer_span, smith_decomposition, smith_normal_form
from catkit.topo import (
    CWComplex2,
    boundary_matrices,
    euler_characteristic,
    fundamental_groupoid_presentation,
    homology,
    realize2,
    to_dot,
)

from oracles import determinant, matmul, minor_gcd

small = st.integers(min_value=-6, max_value=6)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)
seeds = st.integers(min_value=0, max_value=10**6)


def circle():
    return CWComplex2(["v"], {"a": ("v", "v")}, {})


def torus():
    return computad(["p"], [("a", "p", "p"), ("b", "p", "p")], [("c", "a.b", "b.a")])


def disk():
    return computad(["p"], [("a", "p", "p")], [("r", "a", "1")])


# -- realization


def test_graph_realizes_to_one_complex():
    g = computad(["p", "q"], [("e", "p", "q"), ("l", "q", "q")])
    x = realize2(g)
    assert x.cells0 == ("p", "q") and set(x.cells1) == {"e", "l"} and x.cells2 == {}


def test_torus_cells():
    x = realize2(torus())
    assert len(x.cells0) == 1 and len(x.cells1) == 2
    assert str(x.cells2["c"]) == "a.b.a'.b'"


def test_disk_boundary():
    assert str(realize2(disk()).cells2["r"]) == "a"


def test_open_boundary_is_rejected():
    with pytest.raises(MalformedInput):
        CWComplex2(["p", "q"], {"e": ("p", "q")}, {"c": Word("p", (("e", 1),))})


def test_dot_lists_one_skeleton():
    assert to_dot(realize2(torus())).startswith("digraph")


# -- Euler characteristic and homology


def test_euler_characteristic_examples():
    assert euler_characteristic(CWComplex2(["v"], {}, {})).total == 1
    assert euler_characteristic(realize2(torus())).total == 0
    assert euler_characteristic(circle()).total == 0


def test_homology_examples():
    assert homology(circle()).h1 == AbelianGroup(1, ())
    assert homology(realize2(torus())).h1 == AbelianGroup(2, ())
    assert homology(realize2(disk())).h1.trivial


def test_torsion_and_klein_bottle():
    assert homology(realize2(corpus_computads()["torsion3"])).h1 == AbelianGroup(0, (3,))
    assert homology(realize2(corpus_computads()["rp2"])).h1 == AbelianGroup(0, (2,))
    assert homology(realize2(corpus_computads()["klein"])).h1 == AbelianGroup(1, (2,))


def test_boundary_of_boundary_vanishes():
    for c in corpus_computads().values():
        d1, d2 = boundary_matrices(realize2(c))
        if d1.rows and d2.cols and d1.cols:
            assert all(v == 0 for row in matmul(d1.to_lists(), d2.to_lists()) for v in row)


@pytest.mark.parametrize("name", sorted(corpus_computads()))
def test_homology_matches_abelianization(name):
    c = corpus_computads()[name]
    x = realize2(c)
    h = homology(x)
    ab = abelianization(corpus_presentations()[name])
    assert [(a.nodes, a.group) for a in ab] == list(h.components)
    chi = euler_characteristic(x)
    assert len(chi.components) == h.h0_rank == len(ab)
    if h.h0_rank == 1:
        assert chi.total == 1 - deficiency(corpus_presentations()[name])


@given(seeds)
def test_graphs_have_free_first_homology(seed):
    rng = random.Random(seed)
    nodes = [f"v{i}" for i in range(rng.randint(1, 4))]
    edges = {f"e{i}": (rng.choice(nodes), rng.choice(nodes)) for i in range(rng.randint(0, 5))}
    x = CWComplex2(nodes, edges, {})
    h = homology(x)
    assert h.h1 == AbelianGroup(len(edges) - len(nodes) + h.h0_rank, ())
    assert euler_characteristic(x).total == len(nodes) - len(edges)


# -- fundamental groupoid


def test_circle_fundamental_group():
    p = fundamental_groupoid_presentation(circle())
    assert [c.group for c in abelianization(p)] == [AbelianGroup(1, ())]


def test_contractible_edge():
    x = CWComplex2(["p", "q"], {"e": ("p", "q")}, {})
    p = fundamental_groupoid_presentation(x)
    assert p.groupoidal and [c.group for c in abelianization(p)] == [AbelianGroup(0, ())]


@pytest.mark.parametrize("name", sorted(corpus_computads()))
def test_fundamental_groupoid_keeps_abelianization(name):
    c = corpus_computads()[name]
    p = fundamental_groupoid_presentation(realize2(c))
    assert abelianization(p) == abelianization(corpus_presentations()[name])


def test_relation_free_fundamental_groupoid_is_free():
    g = FinGraph(["p"], [("a", "p", "p"), ("b", "p", "p")])
    x = realize2(presentation_from_graph(g, True).computad)
    assert [c.group for c in abelianization(fundamental_groupoid_presentation(x))] == [AbelianGroup(2, ())]


# -- Smith normal form


def test_snf_examples():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == ()
    assert smith_normal_form(IntMatrix.zeros(2, 3)).rank == 0
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[int(i == j) for j in range(4)] for i in range(4)]).diagonal == (1, 1, 1, 1)


@given(matrices)
def test_snf_divisibility_and_minor_oracle(rows):
    d = smith_normal_form(rows).diagonal
    assert all(v > 0 for v in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    assert all(minor_gcd(rows, k) == 0 for k in range(len(d) + 1, min(len(rows), len(rows[0])) + 1))
    product = 1
    for k, v in enumerate(d, start=1):
        product *= v
        assert product == minor_gcd(rows, k)


@given(matrices, st.randoms(use_true_random=False))
def test_snf_ignores_row_and_column_order(rows, rnd):
    shuffled = [list(r) for r in rows]
    rnd.shuffle(shuffled)
    perm = list(range(len(rows[0])))
    rnd.shuffle(perm)
    shuffled = [[r[j] for j in perm] for r in shuffled]
    assert smith_normal_form(shuffled) == smith_normal_form(rows)


@given(matrices)
def test_smith_decomposition_is_unimodular(rows):
    m = IntMatrix.from_rows(rows)
    D, L, R = smith_decomposition(m)
    assert matmul(matmul(L, rows), R) == D
    assert abs(determinant(L)) == 1 and abs(determinant(R)) == 1
    assert all(D[i][j] == 0 for i in range(m.rows) for j in range(m.cols) if i != j)


@given(matrices, st.lists(small, min_size=4, max_size=4))
def test_integer_span_membership(rows, coeffs):
    target = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(len(rows[0]))]
    assert in_integer_span(rows, target)


def test_integer_span_rejects_non_members():
    assert not in_integer_span([[2, 0]], [1, 0])
    assert not in_integer_span([[1, 1]], [1, 0])
    assert in_integer_span([], [0, 0])
