import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from edgedepth import graph as G
from edgedepth import monomials as M
from edgedepth.monomials import PolyContext


def naive_minimal(gens):
    gens = set(gens)
    return {g for g in gens if not any(h != g and M.divides(h, g) for h in gens)}


def naive_power(gens, t):
    out = set()
    for combo in itertools.product(sorted(gens), repeat=t):
        m = combo[0]
        for h in combo[1:]:
            m = M.mono_mul(m, h)
        out.add(m)
    return naive_minimal(out)


def box(upper):
    return itertools.product(*(range(u + 1) for u in upper))


def in_ideal(gens, m):
    return any(M.divides(g, m) for g in gens)


def test_edge_ideal_examples():
    assert str(M.edge_ideal(G.path_graph(3))) == "(x1*x2, x2*x3)"
    assert M.edge_ideal(G.Graph(3, frozenset())).is_zero()
    assert str(M.edge_ideal(G.complete_graph(3))) == "(x1*x2, x1*x3, x2*x3)"


def test_minimalize_examples():
    ctx = PolyContext(2)
    assert M.minimalize(ctx, [(1, 1), (2, 1)]).gens == {(1, 1)}
    assert M.minimalize(ctx, []).is_zero()
    same = {(2, 0), (1, 1), (0, 2)}
    assert M.minimalize(ctx, same).gens == same


def test_power_examples():
    i2 = M.edge_ideal(G.path_graph(2))
    assert M.power(i2, 3).gens == {(3, 3)}
    i3 = M.edge_ideal(G.path_graph(3))
    # the three pairwise products of x1x2 and x2x3
    assert M.power(i3, 2).gens == {(2, 2, 0), (1, 2, 1), (0, 2, 2)}
    assert M.power(i3, 1) == i3
    with pytest.raises(ValueError):
        M.power(i3, 0)


def test_colon_examples():
    ctx = PolyContext(5)
    p5 = M.edge_ideal(G.path_graph(5))
    expect = M.minimalize(ctx, [ctx.monomial({1: 1, 2: 1}), ctx.variable(3), ctx.variable(5)])
    assert M.colon(p5, ctx.variable(4)) == expect
    assert M.colon(p5, ctx.one()) == p5
    p4 = M.edge_ideal(G.path_graph(4))
    assert M.colon(M.power(p4, 2), (0, 0, 1, 1)) == p4


def test_add_variable_examples():
    ctx = PolyContext(2)
    assert M.add_variable(M.minimalize(ctx, [(1, 1)]), 2).gens == {(0, 1)}
    p4 = M.edge_ideal(G.path_graph(4))
    assert M.add_variable(p4, 3).gens == {(1, 1, 0, 0), (0, 0, 1, 0)}
    assert M.add_variable(M.zero_ideal(ctx), 1).gens == {(1, 0)}


def test_delete_variable_examples():
    assert M.delete_variable(M.edge_ideal(G.path_graph(4)), 2).gens == {(0, 0, 1, 1)}
    assert M.delete_variable(M.edge_ideal(G.star_graph(3)), 1).is_zero()
    p6 = M.edge_ideal(G.path_graph(6))
    ctx = p6.context
    expect = {ctx.monomial({1: 1, 2: 1}), ctx.monomial({4: 1, 5: 1}), ctx.monomial({5: 1, 6: 1})}
    assert M.delete_variable(p6, 3).gens == expect


def test_equal_ideals():
    ctx = PolyContext(2)
    assert M.equal_ideals(M.minimalize(ctx, [(1, 1)]), M.minimalize(ctx, [(1, 1), (2, 1)]))
    a = M.edge_ideal(G.path_graph(3))
    b = M.minimalize(a.context, [(0, 1, 1), (1, 1, 0)])
    assert M.equal_ideals(a, b)
    ctx4 = PolyContext(4)
    p3 = M.edge_ideal(G.path_graph(3), ctx4)
    assert not M.equal_ideals(p3, M.edge_ideal(G.path_graph(4)))
    with pytest.raises(M.ContextError):
        M.equal_ideals(a, M.edge_ideal(G.path_graph(4)))


def test_leaf_identity_examples():
    assert M.check_leaf_colon_identity(G.path_graph(4), 4, 2)
    assert M.check_leaf_colon_identity(G.path_graph(2), 2, 2)
    with pytest.raises(G.GraphError):
        M.check_leaf_colon_identity(G.path_graph(4), 2, 2)
    rng = random.Random(7)
    for _ in range(10):
        t = G.random_tree(rng.randint(2, 9), rng)
        leaf = rng.choice([v for v in t.vertices if t.is_leaf(v)])
        assert M.check_leaf_colon_identity(t, leaf, 3)


def test_leaf_identity_fails_for_non_leaf_vertex_pair():
    # x2x3 in P4: neither endpoint is a leaf; the colon is strictly larger
    p4 = M.edge_ideal(G.path_graph(4))
    assert M.colon(M.power(p4, 2), (0, 1, 1, 0)) != p4


def test_rhs_identity_examples():
    p5 = M.edge_ideal(G.path_graph(5))
    assert M.check_rhs_identity(p5, p5.context.variable(4), 5, 2)
    for y in range(1, 6):
        assert M.check_rhs_identity(p5, p5.context.one(), y, 1)
    p6 = M.edge_ideal(G.path_graph(6))
    with pytest.raises(ValueError, match="divides"):
        M.check_rhs_identity(p6, p6.context.monomial({5: 1, 6: 1}), 6, 1)


def test_format_and_parse():
    ctx = PolyContext(3)
    m = ctx.monomial({1: 2, 3: 1})
    assert M.format_monomial(m) == "x1^2*x3"
    assert M.format_monomial(ctx.one()) == "1"
    assert M.parse_monomial("x1^2*x3", ctx) == m
    assert M.parse_monomial("1", ctx) == ctx.one()


# -- oracles -----------------------------------------------------------------

trees = st.builds(lambda n, s: G.random_tree(n, s), st.integers(2, 7), st.integers(0, 10**6))


@settings(max_examples=40, deadline=None)
@given(trees, st.integers(1, 3))
def test_power_matches_naive_expansion(t, k):
    i = M.edge_ideal(t)
    assert M.power(i, k).gens == naive_power(i.gens, k)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=6),
       st.tuples(*[st.integers(0, 2)] * 3))
def test_colon_matches_membership_oracle(gens, m):
    ctx = PolyContext(3)
    i = M.minimalize(ctx, gens)
    c = M.colon(i, m)
    for u in box((4, 4, 4)):
        assert (u in c) == in_ideal(i.gens, M.mono_mul(u, m))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=5),
       st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=5))
def test_intersection_matches_membership_oracle(ga, gb):
    ctx = PolyContext(3)
    a, b = M.minimalize(ctx, ga), M.minimalize(ctx, gb)
    c = M.intersection(a, b)
    for u in box((4, 4, 4)):
        assert (u in c) == (u in a and u in b)


@settings(max_examples=60)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 4), max_size=12))
def test_minimalize_matches_naive(gens):
    assert M.minimalize(PolyContext(4), gens).gens == naive_minimal(gens)


def test_power_products_compose():
    rng = random.Random(11)
    for _ in range(25):
        t = G.random_tree(rng.randint(2, 8), rng)
        i = M.edge_ideal(t)
        for a in range(1, 4):
            for b in range(1, 5 - a):
                assert M.product(M.power(i, a), M.power(i, b)) == M.power(i, a + b)


def test_colon_by_generator_contains_lower_power():
    rng = random.Random(5)
    for _ in range(20):
        t = G.random_forest(8, 2, rng)
        i = M.edge_ideal(t)
        for k in (2, 3):
            ik = M.power(i, k)
            for g in i.gens:
                c = M.colon(ik, g)
                assert M.is_subideal(M.power(i, k - 1), c)
                assert M.is_subideal(ik, c)


@settings(max_examples=50)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=6),
       st.tuples(*[st.integers(0, 3)] * 3))
def test_results_stay_minimal(gens, m):
    ctx = PolyContext(3)
    i = M.minimalize(ctx, gens)
    for res in (M.colon(i, m), M.power(i, 2), M.add_variable(i, 2), M.intersection(i, i),
                M.delete_variable(i, 1)):
        assert res.gens == naive_minimal(res.gens)


def test_extend_and_restrict_context():
    i = M.edge_ideal(G.path_graph(3))
    big = M.extend_context(i, 2)
    assert big.num_vars == 5 and len(big) == 2
    assert M.restrict_context(big, [1, 2, 3]) == i
    with pytest.raises(ValueError):
        M.restrict_context(big, [1, 2])
