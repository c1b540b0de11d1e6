import random

import pytest
from hypothesis import given, strategies as st

from catkit.acceptance import violating_square
from catkit.descent import check_monad, monad_from_adjunction
from catkit.errors import BoundaryMismatch, NotAnAdjunction, NotComposable
from catkit.fincat import (
    Functor,
    NatTrans,
    chain,
    compose_functors,
    enumerate_functors,
    enumerate_transformations,
    identity_transformation,
    poset_category,
    terminal,
    vcompose,
    whisker_left,
    whisker_right,
)
from catkit.generators import (
    corpus_categories,
    finset,
    monotone_functor,
    random_adjunction,
    random_galois_connection,
    random_mate_square,
    random_monotone_map,
    random_poset,
    thin_transformation,
)
from catkit.mates import (
    AdjunctionData,
    MateSquare,
    beck_chevalley,
    check_adjunction,
    compose_adjunctions,
    identity_adjunction,
    mate,
    mate_inverse,
    paste_horizontal,
    paste_vertical,
    thin_adjunction,
)

seeds = st.integers(min_value=0, max_value=10**6)


def round_up():
    """Rounding up from 0 < 1 < 2 to {0 < 2}, left adjoint to the inclusion."""
    Y = chain(3)
    Z = poset_category(["0", "2"], lambda a, b: int(a) <= int(b))
    f = monotone_functor(Y, Z, {"0": "0", "1": "2", "2": "2"})
    g = monotone_functor(Z, Y, {"0": "0", "2": "2"})
    return thin_adjunction(f, g)


def terminal_adjunction(C, top):
    """``! -| top`` between C and the point."""
    pt = terminal()
    f = Functor.constant(C, pt, "*")
    g = Functor.constant(pt, C, top)
    counit = NatTrans(compose_functors(f, g), Functor.identity(pt), {"*": "*->*"})
    unit = NatTrans(Functor.identity(C), compose_functors(g, f), {x: C.hom(x, top)[0] for x in C.objects})
    return AdjunctionData(f, g, counit, unit)


def initial_adjunction(C, bottom):
    """``bottom -| !`` between the point and C."""
    pt = terminal()
    f = Functor.constant(pt, C, bottom)
    g = Functor.constant(C, pt, "*")
    counit = NatTrans(compose_functors(f, g), Functor.identity(C), {x: C.hom(bottom, x)[0] for x in C.objects})
    unit = NatTrans(Functor.identity(pt), compose_functors(g, f), {"*": "*->*"})
    return AdjunctionData(f, g, counit, unit)


def assert_bijection(lu, fg, m, n):
    """Exhaustively: mate is a bijection from all 2-cells n u => g m onto all f n => m l."""
    alphas = enumerate_transformations(compose_functors(n, lu.right), compose_functors(fg.right, m))
    betas = enumerate_transformations(compose_functors(fg.left, n), compose_functors(m, lu.left))
    images = []
    for alpha in alphas:
        sq = MateSquare(lu, fg, m, n, alpha)
        beta = mate(sq)
        assert beta in betas
        assert mate_inverse(sq, beta) == alpha
        images.append(tuple(sorted(beta.components.items())))
    assert len(set(images)) == len(alphas) == len(betas)
    return len(alphas)


# -- check_adjunction


@pytest.mark.parametrize("name", sorted(corpus_categories()))
def test_identity_adjunction_is_valid(name):
    assert check_adjunction(identity_adjunction(corpus_categories()[name])).ok


def test_round_up_is_left_adjoint_to_inclusion():
    assert check_adjunction(round_up()).ok


def test_rewired_unit_is_reported():
    C = corpus_categories()["cyclic2"]
    a = identity_adjunction(C)
    broken = AdjunctionData(a.left, a.right, a.counit, NatTrans(a.unit.dom, a.unit.cod, {"*": "1"}))
    assert "triangle" in check_adjunction(broken).kinds()


def test_non_galois_pair_is_rejected():
    Y = chain(2)
    swap = poset_category(["0", "1"], lambda a, b: int(a) <= int(b))
    with pytest.raises(NotAnAdjunction):
        thin_adjunction(monotone_functor(Y, swap, {"0": "1", "1": "1"}), monotone_functor(swap, Y, {"0": "0", "1": "0"}))


def test_terminal_and_initial_objects_give_adjunctions():
    C = finset(3)
    assert check_adjunction(terminal_adjunction(C, "1")).ok
    assert check_adjunction(initial_adjunction(C, "0")).ok
    assert not check_adjunction(terminal_adjunction(C, "2")).ok


# -- composition


def _same(a, b):
    return a.left == b.left and a.right == b.right and a.unit == b.unit and a.counit == b.counit


def test_composing_with_identity_adjunction():
    a = round_up()
    assert _same(compose_adjunctions(a, identity_adjunction(a.source)), a)
    assert _same(compose_adjunctions(identity_adjunction(a.target), a), a)


def test_composition_needs_matching_categories():
    with pytest.raises(NotComposable):
        compose_adjunctions(round_up(), round_up())


@given(seeds)
def test_stacked_galois_connections(seed):
    rng = random.Random(seed)
    a1 = random_adjunction(rng)
    a2 = None
    while a2 is None:
        a2 = random_galois_connection(rng, a1.target, random_poset(rng, rng.randint(1, 4)))
    comp = compose_adjunctions(a2, a1)
    assert check_adjunction(comp).ok
    direct = thin_adjunction(compose_functors(a2.left, a1.left), compose_functors(a1.right, a2.right))
    assert _same(comp, direct)


def test_composite_of_non_thin_adjunctions():
    C = finset(3)
    comp = compose_adjunctions(terminal_adjunction(C, "1"), initial_adjunction(C, "0"))
    assert check_adjunction(comp).ok


# -- mates


def test_mate_of_identities_is_identity():
    C = chain(3)
    a = identity_adjunction(C)
    i = Functor.identity(C)
    sq = MateSquare(a, a, i, i, identity_transformation(i))
    assert mate(sq) == identity_transformation(i)
    assert mate_inverse(sq, identity_transformation(i)) == identity_transformation(i)


@pytest.mark.parametrize("adj", [round_up(), terminal_adjunction(finset(3), "1"), initial_adjunction(finset(3), "0")])
def test_mate_of_identity_on_right_adjoint_is_identity_on_left(adj):
    sq = MateSquare(adj, adj, Functor.identity(adj.target), Functor.identity(adj.source), identity_transformation(adj.right))
    assert mate(sq) == identity_transformation(adj.left)


@pytest.mark.parametrize("name", ["cyclic2", "idempotent", "parallel_pair", "finset3"])
def test_mate_bijection_exhaustively_between_identity_adjunctions(name):
    C = corpus_categories()[name]
    a = identity_adjunction(C)
    functors = enumerate_functors(C, C)[:6]
    for m in functors:
        for n in functors:
            assert_bijection(a, a, m, n)


def test_mate_bijection_exhaustively_with_initial_object():
    C = finset(3)
    lu = initial_adjunction(C, "0")
    fg = identity_adjunction(C)
    total = 0
    for m in enumerate_functors(C, C)[:12]:
        for c in C.objects:
            total += assert_bijection(lu, fg, m, Functor.constant(terminal(), C, c))
    assert total > 12


@given(seeds)
def test_mate_and_mate_inverse_are_inverse(seed):
    sq = random_mate_square(random.Random(seed))
    assert sq.check().ok
    beta = mate(sq)
    assert mate_inverse(sq, beta) == sq.alpha
    assert mate(MateSquare(sq.lu, sq.fg, sq.m, sq.n, mate_inverse(sq, beta))) == beta


@given(seeds)
def test_mates_respect_horizontal_pasting(seed):
    rng = random.Random(seed)
    left = random_mate_square(rng)
    right = random_mate_square(rng, lu=left.fg)
    pasted = paste_horizontal(left, right)
    assert pasted.check().ok
    expected = vcompose(whisker_left(right.m, mate(left)), whisker_right(mate(right), left.n))
    assert mate(pasted) == expected


def _square_below(rng, top):
    """A square whose horizontal functor m is ``top.n``."""
    while True:
        lu = random_galois_connection(rng, random_poset(rng, rng.randint(1, 3)), top.lu.source)
        fg = random_galois_connection(rng, random_poset(rng, rng.randint(1, 3)), top.fg.source)
        if lu is None or fg is None:
            continue
        nmap = random_monotone_map(rng, lu.source, fg.source)
        if nmap is None:
            continue
        n = monotone_functor(lu.source, fg.source, nmap)
        alpha = thin_transformation(compose_functors(n, lu.right), compose_functors(fg.right, top.n))
        if alpha is not None:
            return MateSquare(lu, fg, top.n, n, alpha)


@given(seeds)
def test_mates_respect_vertical_pasting(seed):
    rng = random.Random(seed)
    top = random_mate_square(rng, max_objects=3)
    bottom = _square_below(rng, top)
    pasted = paste_vertical(top, bottom)
    assert pasted.check().ok
    expected = vcompose(whisker_right(mate(top), bottom.lu.left), whisker_left(top.fg.left, mate(bottom)))
    assert mate(pasted) == expected


def test_pasting_requires_shared_boundary():
    rng = random.Random(1)
    a, b = random_mate_square(rng), random_mate_square(rng)
    if a.fg.left != b.lu.left:
        with pytest.raises(BoundaryMismatch):
            paste_horizontal(a, b)


# -- Beck-Chevalley


def test_identity_square_is_satisfied():
    C = corpus_categories()["divisibility"]
    a = identity_adjunction(C)
    i = Functor.identity(C)
    assert beck_chevalley(MateSquare(a, a, i, i, identity_transformation(i))).satisfied


def test_invertible_alpha_with_identity_functors_is_satisfied():
    C = corpus_categories()["cyclic2"]
    a = identity_adjunction(C)
    i = Functor.identity(C)
    swap = NatTrans(i, i, {"*": "1"})
    assert beck_chevalley(MateSquare(a, a, i, i, swap)).satisfied


def test_violation_has_non_invertible_witness():
    sq = violating_square()
    verdict = beck_chevalley(sq)
    assert not verdict.satisfied
    beta = mate(sq)
    assert verdict.witness == "*"
    assert verdict.component == beta["*"] == "0->1"
    assert not beta.target.is_iso(verdict.component)


@given(seeds)
def test_beck_chevalley_matches_componentwise_invertibility(seed):
    sq = random_mate_square(random.Random(seed))
    beta = mate(sq)
    invertible = all(beta.target.is_iso(beta[w]) for w in beta.source.objects)
    assert beck_chevalley(sq).satisfied == invertible


# -- monads from adjunctions


def test_identity_adjunction_gives_identity_monad():
    C = chain(3)
    M = monad_from_adjunction(identity_adjunction(C))
    assert M.T == Functor.identity(C)
    assert M.mult == identity_transformation(M.T) and M.unit == identity_transformation(M.T)


def test_round_up_gives_closure_monad():
    M = monad_from_adjunction(round_up())
    assert M.T.omap == {"0": "0", "1": "2", "2": "2"}


@given(seeds)
def test_adjunctions_induce_monads(seed):
    assert check_monad(monad_from_adjunction(random_adjunction(random.Random(seed)))).ok
