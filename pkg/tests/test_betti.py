import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from edgedepth import graph as G
from edgedepth import monomials as M
from edgedepth.betti import (BettiTable, BudgetExceeded, _koszul_homology, candidate_degrees,
                             depth_of_power, depth_of_quotient, multigraded_betti, taylor_betti,
                             upper_koszul_complex)
from edgedepth.homology import GF2, QQ, reduced_betti_numbers
from edgedepth.monomials import PolyContext
from edgedepth.primes import height_and_unmixed


def subset_lcms(gens):
    gens = sorted(gens)
    out = set()
    for r in range(1, len(gens) + 1):
        for combo in itertools.combinations(gens, r):
            out.add(tuple(max(c) for c in zip(*combo)))
    return sorted(out)


def box_betti(i, field=QQ):
    """Betti table of R/I from Koszul homology at every degree of the full box."""
    top = tuple(max(c) for c in zip(*i.gens))
    entries = {(0, (0,) * i.num_vars): 1}
    for b in itertools.product(*(range(u + 1) for u in top)):
        for k, v in reduced_betti_numbers(upper_koszul_complex(i, b), field).items():
            if v:
                entries[(k + 2, b)] = v
    return BettiTable(entries, i.num_vars, field)


small_ideals = st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=5).map(
    lambda gens: M.minimalize(PolyContext(3), gens)).filter(lambda i: not i.is_unit())

small_trees = st.builds(lambda n, s: G.random_tree(n, s), st.integers(2, 7), st.integers(0, 10**6))


def test_path_depths_t1():
    for n in range(1, 10):
        res = depth_of_quotient(M.edge_ideal(G.path_graph(n)))
        assert res.depth == (n + 2) // 3


def test_p4_betti_table():
    i = M.edge_ideal(G.path_graph(4))
    table = multigraded_betti(i)
    assert table.total() == [1, 3, 2]
    # the lcm x1x2x3x4 of the outer edges carries no syzygy
    assert table.degrees(2) == [(0, 1, 1, 1), (1, 1, 1, 0)]
    assert table == taylor_betti(i)
    assert depth_of_quotient(i).depth == 2


def test_p4_candidate_degrees():
    i = M.edge_ideal(G.path_graph(4))
    degs = candidate_degrees(i)
    assert degs == subset_lcms(i.gens)
    assert len(degs) == 6


def test_triangle_square_has_depth_zero():
    res = depth_of_power(G.complete_graph(3), 2)
    assert res.depth == 0 and res.projective_dimension == 3
    assert res.witness_degree == (2, 2, 2)


def test_edgeless_and_zero():
    res = depth_of_quotient(M.zero_ideal(PolyContext(3)))
    assert res.depth == 3
    with pytest.raises(ValueError):
        multigraded_betti(M.unit_ideal(PolyContext(2)))


def test_single_edge_powers():
    for t in range(1, 5):
        assert depth_of_power(G.path_graph(2), t).depth == 1


def test_star_depth_is_one():
    for k in range(1, 6):
        assert depth_of_quotient(M.edge_ideal(G.star_graph(k))).depth == 1


def test_upper_koszul_example():
    i = M.edge_ideal(G.path_graph(3))
    c = upper_koszul_complex(i, (1, 1, 1))
    # generators x1x2 and x2x3 give facets {3} and {1}
    assert c.facets == {frozenset({3}), frozenset({1})}
    assert reduced_betti_numbers(c)[0] == 1
    assert upper_koszul_complex(i, (1, 0, 1)).is_void()


def test_budget_exceeded():
    i = M.power(M.edge_ideal(G.path_graph(6)), 3)
    with pytest.raises(BudgetExceeded):
        candidate_degrees(i, budget=10)


def test_betti_tsv_export():
    text = multigraded_betti(M.edge_ideal(G.path_graph(2))).to_tsv()
    assert text == "i\tmultidegree\tdim\n0\t0,0\t1\n1\t1,1\t1\n"


# -- oracles -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(small_ideals)
def test_candidates_match_subset_lcms(i):
    assert candidate_degrees(i) == subset_lcms(i.gens)


@settings(max_examples=50, deadline=None)
@given(small_ideals)
def test_lattice_betti_matches_full_box(i):
    assert multigraded_betti(i) == box_betti(i)


@settings(max_examples=50, deadline=None)
@given(small_ideals)
def test_koszul_matches_taylor_small(i):
    assert multigraded_betti(i) == taylor_betti(i)
    assert multigraded_betti(i, GF2) == taylor_betti(i, GF2)


@settings(max_examples=30, deadline=None)
@given(small_trees, st.integers(1, 2))
def test_koszul_matches_taylor_on_tree_powers(t, k):
    i = M.power(M.edge_ideal(t), k)
    if len(i) > 12:
        return
    assert multigraded_betti(i) == taylor_betti(i)


@settings(max_examples=30, deadline=None)
@given(small_ideals)
def test_cone_filter_does_not_change_result(i):
    degs = candidate_degrees(i)
    assert _koszul_homology(i, degs, QQ, True) == _koszul_homology(i, degs, QQ, False)


def test_first_betti_sits_at_generators():
    rng = random.Random(3)
    for _ in range(20):
        t = G.random_tree(rng.randint(2, 7), rng)
        for k in (1, 2):
            i = M.power(M.edge_ideal(t), k)
            table = multigraded_betti(i)
            assert table.degrees(1) == sorted(i.gens)
            assert all(table.entries[(1, g)] == 1 for g in i.gens)


def test_squarefree_degrees_at_t1():
    rng = random.Random(4)
    for _ in range(20):
        t = G.random_forest(8, 3, rng)
        table = multigraded_betti(M.edge_ideal(t))
        assert all(max(b, default=0) <= 1 for b in table.degrees())


def test_adding_a_variable_adds_one():
    rng = random.Random(8)
    for _ in range(15):
        t = G.random_tree(rng.randint(2, 7), rng)
        for k in (1, 2):
            i = M.power(M.edge_ideal(t), k)
            before = depth_of_quotient(i).depth
            after = depth_of_quotient(M.extend_context(i, 1)).depth
            assert after == before + 1


def test_disjoint_union_is_additive_at_t1():
    rng = random.Random(9)
    for _ in range(15):
        a = G.random_tree(rng.randint(2, 6), rng)
        b = G.random_tree(rng.randint(2, 6), rng)
        u = G.disjoint_union(a, b)
        da = depth_of_quotient(M.edge_ideal(a)).depth
        db = depth_of_quotient(M.edge_ideal(b)).depth
        assert depth_of_quotient(M.edge_ideal(u)).depth == da + db


def test_depth_lemma_on_random_graphs():
    rng = random.Random(10)
    for _ in range(30):
        n = rng.randint(2, 6)
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        g = G.from_edge_list(rng.sample(pairs, rng.randint(1, len(pairs))), n)
        i = M.power(M.edge_ideal(g), rng.randint(1, 2))
        x = rng.randint(1, n)
        a = depth_of_quotient(M.colon(i, i.context.variable(x))).depth
        b = depth_of_quotient(i).depth
        c = depth_of_quotient(M.add_variable(i, x)).depth
        assert b >= min(a, c)
        assert a >= min(b, c + 1)
        assert c >= min(a - 1, b)


def test_depth_is_bounded_by_dimension():
    rng = random.Random(12)
    for _ in range(20):
        t = G.random_forest(8, 3, rng)
        h, _ = height_and_unmixed(t)
        for k in (1, 2):
            assert depth_of_power(t, k).depth <= t.num_vertices - h


def test_depths_along_powers_of_trees_are_nonincreasing():
    rng = random.Random(13)
    for _ in range(10):
        t = G.random_tree(rng.randint(3, 7), rng)
        ds = [depth_of_power(t, k).depth for k in (1, 2, 3)]
        assert ds == sorted(ds, reverse=True)
        assert ds[-1] >= 1


def test_field_does_not_matter_for_small_trees():
    rng = random.Random(14)
    for _ in range(10):
        t = G.random_tree(rng.randint(2, 7), rng)
        i = M.power(M.edge_ideal(t), 2)
        assert multigraded_betti(i, QQ) == multigraded_betti(i, GF2)


# oracle values of the two worked examples, frozen after the first run

def test_tree9_depths(tree9):
    assert [depth_of_power(tree9, t).depth for t in (1, 2, 3)] == [3, 3, 3]


@pytest.mark.slow
def test_tree9_t4(tree9):
    assert depth_of_power(tree9, 4).depth == 2


def test_tree11_t1_t2(tree11):
    assert depth_of_power(tree11, 1).depth == 5
    assert depth_of_power(tree11, 2).depth == 5


@pytest.mark.slow
def test_tree11_t3(tree11):
    assert depth_of_power(tree11, 3).depth == 4


@pytest.mark.slow
def test_tree9_t5(tree9):
    assert depth_of_power(tree9, 5).depth == 2


@pytest.mark.slow
def test_tree11_t4(tree11):
    # about 1.6 million candidate degrees; several minutes
    assert depth_of_power(tree11, 4).depth == 3
