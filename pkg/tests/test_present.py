import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from catkit.errors import MalformedInput, NotGroupoidal, NotParallel
from catkit.fincat import FinGraph, Functor, chain, discrete, empty_category, terminal
from catkit.generators import computad, corpus_computads, corpus_presentations
from catkit.present import (
    AbelianGroup,
    Computad2,
    Presentation,
    Relation,
    Thinness,
    Verdict,
    Word,
    abelianization,
    coinserter,
    concat,
    deficiency,
    inverse_word,
    parse_word,
    presentation_from_graph,
    reduce_word,
    thinness_obstruction,
    word_eq,
)

seeds = st.integers(min_value=0, max_value=10**6)
LOOP = FinGraph(["n"], [("x", "n", "n")])


def torus(groupoidal=True):
    return Presentation(computad(["p"], [("a", "p", "p"), ("b", "p", "p")], [("c", "a.b", "b.a")], groupoidal))


def one_relator(rel, groupoidal=True):
    return Presentation(computad(["p"], [("a", "p", "p"), ("b", "p", "p")], [("r", rel, "1")], groupoidal))


def groups(p):
    return [c.group for c in abelianization(p)]


# -- words


def test_parse_word_syntaxes_agree():
    g = FinGraph(["p"], [("a", "p", "p"), ("b", "p", "p")])
    expected = Word("p", (("a", 1), ("b", 1), ("a", -1)))
    assert parse_word(g, "aba'") == expected
    assert parse_word(g, "a.b.a'") == expected
    assert parse_word(g, "a b a^-1") == expected
    assert parse_word(g, "1", "p") == Word("p")


def test_parse_word_rejects_unknown_edges_and_bad_walks():
    g = FinGraph(["p", "q"], [("e", "p", "q")])
    with pytest.raises(MalformedInput):
        parse_word(g, "z")
    with pytest.raises(MalformedInput):
        parse_word(g, "e.e")


def test_reduction_cancels_inverse_pairs():
    g = FinGraph(["p"], [("a", "p", "p")])
    w = parse_word(g, "a.a'.a")
    assert reduce_word(w) == parse_word(g, "a")
    assert reduce_word(concat(g, w, inverse_word(g, w))) == Word("p")


# -- construction


def test_empty_graph_presents_empty_category():
    p = presentation_from_graph(FinGraph([], []))
    assert p.graph.nodes == () and p.relations == ()
    assert abelianization(presentation_from_graph(FinGraph([], []), groupoidal=True)) == []


def test_free_monoid_on_one_loop_separates_powers():
    p = presentation_from_graph(LOOP)
    for m in range(1, 4):
        for n in range(1, 4):
            verdict = word_eq(p, p.word("x" * m), p.word("x" * n))
            assert verdict is (Verdict.EQUAL if m == n else Verdict.DISTINCT)


def test_free_group_on_one_loop_is_integers():
    p = presentation_from_graph(LOOP, groupoidal=True)
    assert groups(p) == [AbelianGroup(1, ())]


def test_coinserter_of_empty_diagram_is_the_category():
    B = chain(2)
    e = Functor(empty_category(), B, {}, {})
    raw = coinserter(e, e, normalize=False)
    assert raw.graph.nodes == B.objects
    assert [x for x, _, _ in raw.graph.edges] == list(B.morphisms)
    assert len(raw.relations) == len(B.table) + len(B.objects)
    normal = coinserter(e, e)
    assert [x for x, _, _ in normal.graph.edges] == ["0->1"]


def test_coinserter_of_identities_on_point_adjoins_free_loop():
    i = Functor.identity(terminal())
    p = coinserter(i, i)
    assert p.graph.edges == (("alpha[*]", "*", "*"),)
    assert p.relations == ()
    assert word_eq(p, p.word("alpha[*]"), p.word("alpha[*].alpha[*]")) is Verdict.DISTINCT


def test_coinserter_of_identity_and_swap():
    d = discrete(2)
    swap = Functor(d, d, {"0": "1", "1": "0"}, {"0->0": "1->1", "1->1": "0->0"})
    p = coinserter(Functor.identity(d), swap)
    assert p.graph.nodes == ("0", "1")
    assert p.graph.edges == (("alpha[0]", "0", "1"), ("alpha[1]", "1", "0"))
    assert p.relations == ()


def test_coinserter_needs_parallel_pair():
    with pytest.raises(MalformedInput):
        coinserter(Functor.identity(terminal()), Functor.identity(chain(2)))


def test_relations_must_be_parallel():
    g = FinGraph(["p", "q"], [("e", "p", "q"), ("l", "p", "p")])
    with pytest.raises(NotParallel):
        Computad2(g, [Relation("r", parse_word(g, "e"), parse_word(g, "l"))])


def test_category_mode_rejects_inverses():
    g = FinGraph(["p"], [("a", "p", "p")])
    with pytest.raises(MalformedInput):
        Computad2(g, [Relation("r", parse_word(g, "a'"), parse_word(g, "a"))])


# -- word problem


def test_word_is_equal_to_itself():
    for p in corpus_presentations().values():
        for _, s, _ in p.graph.edges:
            w = Word(s)
            assert word_eq(p, w, w) is Verdict.EQUAL


def test_commuting_letters_rewrite():
    p = torus()
    assert word_eq(p, p.word("abab"), p.word("aabb"), bound=6) is Verdict.EQUAL


def test_loop_powers_are_distinct():
    p = presentation_from_graph(LOOP, groupoidal=True)
    assert word_eq(p, p.word("x"), p.word("xx")) is Verdict.DISTINCT


def test_unknown_is_honest():
    p = Presentation(computad(["p"], [("a", "p", "p"), ("b", "p", "p")]))
    assert word_eq(p, p.word("ab"), p.word("ba")) is Verdict.UNKNOWN


def test_word_eq_needs_parallel_words():
    p = Presentation(computad(["p", "q"], [("e", "p", "q"), ("l", "p", "p")]))
    with pytest.raises(NotParallel):
        word_eq(p, p.word("e"), p.word("l"))


def test_torsion_relation():
    p = Presentation(computad(["p"], [("a", "p", "p")], [("r", "a.a.a", "1")]))
    assert word_eq(p, p.word("aaaa"), p.word("a")) is Verdict.EQUAL
    assert word_eq(p, p.word("aa"), p.word("a")) is Verdict.DISTINCT


words = st.lists(st.sampled_from("ab"), min_size=1, max_size=5).map("".join)


@given(words, words)
def test_commutative_monoid_word_problem_matches_letter_counts(u, v):
    """The categorical torus presents the free commutative monoid on a, b."""
    p = torus(groupoidal=False)
    verdict = word_eq(p, p.word(u), p.word(v), bound=max(len(u), len(v)))
    assert verdict is (Verdict.EQUAL if Counter(u) == Counter(v) else Verdict.DISTINCT)


@given(words, words, words)
def test_equality_is_symmetric_and_stable_under_concatenation(u, v, w):
    p = torus(groupoidal=False)
    bound = len(u) + len(v) + len(w)
    forward = word_eq(p, p.word(u), p.word(v), bound)
    assert forward is word_eq(p, p.word(v), p.word(u), bound)
    if forward is Verdict.EQUAL:
        assert word_eq(p, p.word(u + w), p.word(v + w), bound) is Verdict.EQUAL
        assert word_eq(p, p.word(w + u), p.word(w + v), bound) is Verdict.EQUAL


@given(words, words, words)
def test_equality_is_transitive(u, v, w):
    p = torus()
    bound = max(map(len, (u, v, w))) + 2
    if word_eq(p, p.word(u), p.word(v), bound) is Verdict.EQUAL and word_eq(
        p, p.word(v), p.word(w), bound
    ) is Verdict.EQUAL:
        assert word_eq(p, p.word(u), p.word(w), bound) is Verdict.EQUAL


# -- abelianization


def test_abelianization_examples():
    assert groups(one_relator("a.b.a'.b'")) == [AbelianGroup(2, ())]
    assert groups(Presentation(computad(["p"], [("a", "p", "p")], [("r", "a", "1")]))) == [AbelianGroup(0, ())]
    assert groups(Presentation(computad(["p"], [("a", "p", "p")], [("r", "a.a.a", "1")]))) == [AbelianGroup(0, (3,))]


def test_abelianization_needs_groupoidal_mode():
    with pytest.raises(NotGroupoidal):
        abelianization(presentation_from_graph(LOOP))


def _with_relation(p, rid, lhs, rhs):
    c = p.computad
    g = c.graph
    rel = Relation(rid, parse_word(g, lhs, p.graph.nodes[0]), parse_word(g, rhs, p.graph.nodes[0]))
    return Presentation(Computad2(g, c.relations + (rel,), c.groupoidal))


def test_redundant_relation_keeps_abelianization():
    p = torus()
    q = _with_relation(p, "extra", "abab", "aabb")
    assert word_eq(p, q.relations[-1].lhs, q.relations[-1].rhs, bound=6) is Verdict.EQUAL
    assert groups(q) == groups(p)


@pytest.mark.parametrize("name", sorted(corpus_computads()))
def test_duplicated_relations_keep_abelianization(name):
    p = corpus_presentations()[name]
    dup = [Relation(r.id + "'", r.rhs, r.lhs) for r in p.relations]
    q = Presentation(Computad2(p.graph, p.relations + tuple(dup), True))
    assert groups(q) == groups(p)


# -- deficiency


def test_deficiency_examples():
    assert deficiency(Presentation(computad(["p"], [("a", "p", "p")], [("r", "a", "1")]))) == 0
    assert deficiency(one_relator("a.b.a'.b'")) == 1
    assert deficiency(presentation_from_graph(LOOP, groupoidal=True)) == 1


@pytest.mark.parametrize("name", sorted(corpus_computads()))
def test_deficiency_changes(name):
    p = corpus_presentations()[name]
    g = p.graph
    node = g.nodes[0]
    appended = Presentation(
        Computad2(g, p.relations + (Relation("fresh", Word(node), Word(node)),), True)
    )
    assert deficiency(appended) == deficiency(p) - 1
    grown = FinGraph(g.nodes + ("fresh",), g.edges + (("fresh_edge", "fresh", node),))
    assert deficiency(Presentation(Computad2(grown, p.relations, True))) == deficiency(p)


# -- thinness


def test_thinness_examples():
    assert thinness_obstruction(torus()).verdict is Thinness.NOT_THIN
    disk = Presentation(computad(["p"], [("a", "p", "p")], [("r", "a", "1")]))
    assert thinness_obstruction(disk).verdict is Thinness.INCONCLUSIVE
    assert thinness_obstruction(presentation_from_graph(LOOP, True)).verdict is Thinness.NOT_THIN
    assert thinness_obstruction(torus()).scope == "per-component"


@pytest.mark.parametrize("name", sorted(corpus_computads()))
def test_not_thin_has_a_visible_reason(name):
    p = corpus_presentations()[name]
    if thinness_obstruction(p).verdict is not Thinness.NOT_THIN:
        return
    ends = Counter((s, t) for _, s, t in p.graph.edges)
    parallel = any(n > 1 for n in ends.values())
    assert parallel or any(not g.trivial for g in groups(p))


@given(seeds)
def test_random_graphs_without_relations(seed):
    rng = random.Random(seed)
    nodes = [f"v{i}" for i in range(rng.randint(1, 4))]
    edges = [(f"e{i}", rng.choice(nodes), rng.choice(nodes)) for i in range(rng.randint(0, 5))]
    p = presentation_from_graph(FinGraph(nodes, edges), groupoidal=True)
    comps = abelianization(p)
    assert sum(c.group.free_rank for c in comps) == deficiency(p)
    assert all(not c.group.torsion for c in comps)
