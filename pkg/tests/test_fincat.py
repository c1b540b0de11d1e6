import random

import pytest
from hypothesis import given, strategies as st

from catkit.errors import MalformedInput, NoExtension, NotComposable, SizeLimitExceeded, UnknownNode
from catkit.fincat import (
    Budget,
    FinCat,
    FinGraph,
    Functor,
    budget,
    chain,
    check_kan_universal,
    compose,
    current_budget,
    discrete,
    empty_category,
    enumerate_cones,
    enumerate_functors,
    enumerate_paths,
    factorizations,
    functor_category,
    iso_search,
    limit,
    parse_budget,
    poset_category,
    product_category,
    right_kan_extension,
    terminal,
    to_dot,
    underlying_graph,
    validate_category,
)
from catkit.generators import corpus_categories, divisibility, random_poset

from oracles import all_functors, category_axioms_hold, poset_meet, walk_count

seeds = st.integers(min_value=0, max_value=10**6)


def _bounds(c):
    return {m: c.bounds(m) for m in c.morphisms}


def _mutated(c, key, value):
    table = dict(c.table)
    table[key] = value
    return FinCat(c.objects, [(m,) + c.bounds(m) for m in c.morphisms], c.identity, table, fill_units=False)


# -- validate_category


def test_terminal_category_is_valid():
    assert validate_category(terminal()).ok


def test_chain_is_valid():
    assert validate_category(chain(3)).ok


def test_rewired_composite_reports_boundary_violation():
    c = _mutated(chain(3), ("1->2", "0->1"), "0->0")
    report = validate_category(c)
    assert "boundary" in report.kinds()
    assert not category_axioms_hold(c.objects, _bounds(c), c.identity, c.table)


@pytest.mark.parametrize("name", sorted(corpus_categories()))
def test_corpus_categories_are_valid(name):
    c = corpus_categories()[name]
    assert validate_category(c).ok
    assert category_axioms_hold(c.objects, _bounds(c), c.identity, c.table)


@given(seeds)
def test_any_mutation_of_a_poset_table_is_detected(seed):
    rng = random.Random(seed)
    p = random_poset(rng, rng.randint(2, 5))
    key = rng.choice(sorted(p.table))
    value = rng.choice([m for m in p.morphisms if m != p.table[key]])
    assert not validate_category(_mutated(p, key, value)).ok


@pytest.mark.parametrize("name", ["cyclic2", "finset3", "idempotent", "parallel_pair", "divisibility"])
def test_mutations_agree_with_axiom_oracle(name):
    c = corpus_categories()[name]
    for key in sorted(c.table):
        for value in c.morphisms:
            if value == c.table[key]:
                continue
            d = _mutated(c, key, value)
            assert validate_category(d).ok == category_axioms_hold(d.objects, _bounds(d), d.identity, d.table)


def test_missing_composite_is_reported():
    c = chain(3)
    table = {k: v for k, v in c.table.items() if k != ("1->2", "0->1")}
    d = FinCat(c.objects, [(m,) + c.bounds(m) for m in c.morphisms], c.identity, table)
    assert "missing" in validate_category(d).kinds()


def test_malformed_construction_is_rejected():
    with pytest.raises(MalformedInput):
        FinCat(["a"], [("f", "a", "b")], {"a": "f"}, {})
    with pytest.raises(MalformedInput):
        FinCat(["a"], [("f", "a", "a")], {}, {})
    with pytest.raises(MalformedInput):
        FinCat(["a", "a"], [], {}, {})


# -- compose


def test_compose_with_identity():
    c = chain(3)
    assert compose(c, "1->1", "0->1") == "0->1"


def test_compose_in_chain_gives_unique_arrow():
    c = chain(3)
    assert compose(c, "1->2", "0->1") == "0->2"
    assert c.hom("0", "2") == ("0->2",)


def test_compose_rejects_boundary_mismatch():
    with pytest.raises(NotComposable):
        compose(chain(3), "0->1", "1->2")


# -- paths


def test_loop_paths_are_one_per_length():
    g = FinGraph(["n"], [("x", "n", "n")])
    paths = enumerate_paths(g, "n", "n", 3)
    assert [p.steps for p in paths] == [(), ("x",), ("x", "x"), ("x", "x", "x")]


def test_no_paths_between_distinct_nodes_without_edges():
    g = FinGraph(["a", "b"], [])
    assert enumerate_paths(g, "a", "b", 5) == []


def test_parallel_edges():
    g = FinGraph(["n1", "n2"], [("u", "n1", "n2"), ("v", "n1", "n2")])
    assert [p.steps for p in enumerate_paths(g, "n1", "n2", 1)] == [("u",), ("v",)]


def test_unknown_node_raises():
    with pytest.raises(UnknownNode):
        enumerate_paths(FinGraph(["a"], []), "a", "z", 1)


def _random_graph(rng):
    nodes = [f"n{i}" for i in range(rng.randint(1, 4))]
    edges = [(f"e{i}", rng.choice(nodes), rng.choice(nodes)) for i in range(rng.randint(0, 5))]
    return FinGraph(nodes, edges)


@given(seeds, st.integers(0, 4))
def test_path_counts_match_walk_oracle_and_grow(seed, maxlen):
    rng = random.Random(seed)
    g = _random_graph(rng)
    a, b = rng.choice(g.nodes), rng.choice(g.nodes)
    paths = enumerate_paths(g, a, b, maxlen)
    assert len(paths) == walk_count(g, a, b, maxlen)
    assert len(set(p.steps for p in paths)) == len(paths)
    assert len(enumerate_paths(g, a, b, maxlen + 1)) >= len(paths)
    assert paths == sorted(paths, key=lambda p: (len(p.steps), p.steps))


@given(seeds)
def test_path_concatenation_is_associative(seed):
    rng = random.Random(seed)
    g = _random_graph(rng)
    a, b, c, d = (rng.choice(g.nodes) for _ in range(4))
    for p in enumerate_paths(g, a, b, 2):
        for q in enumerate_paths(g, b, c, 2):
            pq = p.then(q)
            assert pq.start == a and pq.end == c
            assert pq in enumerate_paths(g, a, c, 4)
            for r in enumerate_paths(g, c, d, 1):
                assert pq.then(r) == p.then(q.then(r))


# -- functor categories


def test_functor_category_of_arrow_into_arrow_is_three_chain():
    fc = functor_category(chain(2), chain(2))
    assert len(fc.objects) == 3
    assert iso_search(fc, chain(3)) is not None
    assert validate_category(fc).ok


def test_functor_category_from_discrete_pair_is_product():
    fc = functor_category(discrete(2), chain(2))
    assert len(fc.objects) == 4
    assert iso_search(fc, product_category(chain(2), chain(2))) is not None


@pytest.mark.parametrize("name", sorted(corpus_categories()))
def test_functor_category_from_point_is_isomorphic(name):
    b = corpus_categories()[name]
    fc = functor_category(terminal(), b)
    assert validate_category(fc).ok
    assert iso_search(fc, b) is not None


@pytest.mark.parametrize(
    "a,b",
    [("chain2", "idempotent"), ("cyclic2", "finset3"), ("parallel_pair", "chain3"), ("arrow_ab", "cyclic2")],
)
def test_functor_enumeration_matches_brute_force(a, b):
    A, B = corpus_categories()[a], corpus_categories()[b]
    found = sorted((sorted(F.omap.items()), sorted(F.mmap.items())) for F in enumerate_functors(A, B))
    oracle = sorted((sorted(o.items()), sorted(m.items())) for o, m in all_functors(A, B))
    assert found == oracle


@given(seeds)
def test_functor_count_on_random_posets(seed):
    rng = random.Random(seed)
    a = random_poset(rng, rng.randint(1, 3))
    b = random_poset(rng, rng.randint(1, 3))
    assert len(functor_category(a, b).objects) == len(all_functors(a, b))


# -- limits


def _diagram(shape, target, omap):
    return Functor(
        shape, target, omap,
        {m: target.hom(omap[shape.src(m)], omap[shape.tgt(m)])[0] for m in shape.morphisms},
    )


def test_limit_of_empty_diagram_is_terminal():
    d = Functor(empty_category(), divisibility(), {}, {})
    assert limit(d).apex == "6"


def test_product_in_divisibility_is_gcd():
    d = _diagram(discrete(2), divisibility(), {"0": "2", "1": "3"})
    assert limit(d).apex == "1"


def test_no_product_in_discrete_category():
    d = _diagram(discrete(2), discrete(2), {"0": "0", "1": "1"})
    assert limit(d) is None


@given(seeds)
def test_binary_limits_in_posets_are_meets(seed):
    rng = random.Random(seed)
    p = random_poset(rng, rng.randint(1, 6))
    x, y = rng.choice(p.objects), rng.choice(p.objects)
    cone = limit(_diagram(discrete(2), p, {"0": x, "1": y}))
    meet = poset_meet(p, [x, y])
    assert (cone.apex if cone else None) == meet


@given(seeds)
def test_limit_factors_every_cone_uniquely(seed):
    rng = random.Random(seed)
    name = rng.choice(["chain3", "divisibility", "idempotent", "cyclic2", "arrow_ab", "parallel_pair"])
    C = corpus_categories()[name]
    J = rng.choice([discrete(2), chain(2), terminal(), empty_category()])
    d = rng.choice(enumerate_functors(J, C))
    cone = limit(d)
    if cone is not None:
        for other in enumerate_cones(d):
            assert len(factorizations(d, other, cone)) == 1


# -- right Kan extensions


def test_kan_extension_along_identity_is_the_functor():
    C = divisibility()
    f = Functor.identity(C)
    ext = right_kan_extension(Functor.identity(C), f)
    assert ext.functor == f


def _span_shape():
    A = discrete(["x", "y"])
    B = poset_category(["t", "x", "y"], lambda s, t: s == t or s == "t")
    k = Functor(A, B, {"x": "x", "y": "y"}, {"x->x": "x->x", "y->y": "y->y"})
    return A, B, k


def test_kan_extension_at_common_lower_point_is_meet():
    A, B, k = _span_shape()
    C = divisibility()
    f = Functor(A, C, {"x": "2", "y": "3"}, {"x->x": "2->2", "y->y": "3->3"})
    ext = right_kan_extension(k, f)
    assert ext.functor.ob("t") == "1"
    assert ext.functor.ob("x") == "2" and ext.functor.ob("y") == "3"
    assert check_kan_universal(k, f, ext).ok


def test_kan_extension_missing_limit():
    A, B, k = _span_shape()
    C = discrete(2)
    f = Functor(A, C, {"x": "0", "y": "1"}, {"x->x": "0->0", "y->y": "1->1"})
    with pytest.raises(NoExtension):
        right_kan_extension(k, f)


@given(seeds)
def test_kan_extensions_of_monotone_maps_are_pointwise_meets(seed):
    rng = random.Random(seed)
    A = random_poset(rng, rng.randint(1, 3))
    B = random_poset(rng, rng.randint(1, 3))
    C = random_poset(rng, rng.randint(1, 4))
    ks, fs = enumerate_functors(A, B), enumerate_functors(A, C)
    if not ks or not fs:
        return
    k, f = rng.choice(ks), rng.choice(fs)
    meets = {b: poset_meet(C, [f.ob(a) for a in A.objects if B.hom(b, k.ob(a))]) for b in B.objects}
    if any(v is None for v in meets.values()):
        with pytest.raises(NoExtension):
            right_kan_extension(k, f)
        return
    ext = right_kan_extension(k, f)
    assert ext.functor.omap == meets
    for a in A.objects:
        assert C.bounds(ext.counit[a]) == (ext.functor.ob(k.ob(a)), f.ob(a))
    assert check_kan_universal(k, f, ext).ok


# -- isomorphism search


@pytest.mark.parametrize("name", sorted(corpus_categories()))
def test_iso_search_with_itself(name):
    c = corpus_categories()[name]
    iso = iso_search(c, c)
    assert iso is not None
    for x in c.objects:
        assert iso.backward.ob(iso.forward.ob(x)) == x
    for m in c.morphisms:
        assert iso.backward.mor(iso.forward.mor(m)) == m


def test_iso_search_chain_versus_functor_category():
    assert iso_search(chain(3), functor_category(chain(2), chain(2))) is not None


def test_iso_search_not_found():
    assert iso_search(discrete(2), chain(2)) is None


# -- budget and output


def test_budget_parsing():
    assert parse_budget("3,10") == Budget(3, 10)
    assert parse_budget("10") == Budget(64, 10)
    with pytest.raises(MalformedInput):
        parse_budget("a,b")


def test_budget_limits_construction():
    with budget("2,100"):
        with pytest.raises(SizeLimitExceeded):
            chain(3)
    assert current_budget() == Budget()


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CATKIT_BUDGET", "5")
    assert current_budget() == Budget(64, 5)
    with pytest.raises(SizeLimitExceeded):
        chain(3)
    with budget("10,10"):
        assert chain(3).objects == ("0", "1", "2")


def test_dot_output_lists_underlying_graph():
    c = chain(2)
    dot = to_dot(c)
    assert dot.startswith("digraph")
    assert '"0->1"' in dot
    assert underlying_graph(c).edges == (("0->1", "0", "1"),)
