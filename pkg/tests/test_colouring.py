import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from conftest import graph_colourings
from uniqcol.colouring import (INFINITY, Colouring, check_tree_unique, is_conflict_free,
                               is_eta_injective, is_injective, is_proper, is_r_unique,
                               is_tree_unique, profile)
from uniqcol.graph import Graph, complete_graph, cycle_graph, empty_graph, path_graph, star_graph
from uniqcol.patterns import edge, path, star


def star_example():
    # centre 0, leaves 1,2,3 coloured c:3, l1:1, l2:1, l3:2
    return star_graph(3), Colouring((3, 1, 1, 2), 3)


def test_profile_star_example():
    g, f = star_example()
    prof = profile(g, f)
    assert prof.open_unique[0] == 1
    assert prof.open_unique[1] == 1
    adj = oracles.nbrs(g.edges, g.n)
    assert [oracles.open_unique(adj, f.colours, u) for u in range(4)] == prof.open_unique.tolist()


def test_profile_k2_monochrome():
    prof = profile(complete_graph(2), Colouring((1, 1), 1))
    assert prof.closed_unique.tolist() == [0, 0]


@given(graph_colourings())
def test_profile_matches_recount(gf):
    g, f = gf
    prof = profile(g, f)
    adj = oracles.nbrs(g.edges, g.n)
    for u in range(g.n):
        assert prof.open_unique[u] == oracles.open_unique(adj, f.colours, u)
        assert prof.closed_unique[u] == oracles.closed_unique(adj, f.colours, u)
        assert prof.open_unique[u] <= prof.degree[u]
        assert prof.closed_unique[u] <= prof.degree[u] + 1


@given(graph_colourings())
def test_all_distinct_colours(gf):
    g, _ = gf
    f = Colouring(tuple(range(1, g.n + 1)), g.n)
    prof = profile(g, f)
    assert prof.open_unique.tolist() == g.degrees.tolist()
    assert prof.closed_unique.tolist() == (g.degrees + 1).tolist()


def test_size_mismatch():
    with pytest.raises(ValueError):
        profile(path_graph(3), Colouring((1, 2), 2))
    with pytest.raises(ValueError):
        is_proper(path_graph(3), Colouring((1, 2), 2))


def test_colouring_validation():
    with pytest.raises(ValueError):
        Colouring((1, 3), 2)
    with pytest.raises(ValueError):
        Colouring((0,), 2)


def test_proper_examples():
    assert is_proper(complete_graph(3), Colouring((1, 2, 3), 3))
    assert not is_proper(complete_graph(2), Colouring((1, 1), 1))
    assert is_proper(cycle_graph(4), Colouring((1, 2, 1, 2), 2))


def test_eta_examples():
    g, f = star_example()
    assert is_eta_injective(g, f, Fraction(1, 3))
    assert is_eta_injective(g, f, 1 / 3)
    assert not is_eta_injective(g, f, 0.5)
    assert is_eta_injective(empty_graph(4), Colouring((1, 1, 1, 1), 1), 0.9)
    # alternating colours put both neighbours of every vertex on the same colour
    assert not is_eta_injective(cycle_graph(4), Colouring((1, 2, 1, 2), 2), 1)
    assert is_eta_injective(cycle_graph(4), Colouring((1, 1, 2, 2), 2), 1)


def test_eta_rounds_up_without_float_noise():
    # 0.1 * 30 is 3.0000000000000004 in floating point; the threshold must still be 3
    g = star_graph(30)
    cols = [99] + [1, 2, 3] + [4] * 27
    f = Colouring(tuple(cols), 99)
    assert profile(g, f).open_unique[0] == 3
    assert is_eta_injective(g, f, 0.1)


@pytest.mark.parametrize("eta", [0, -0.5, 1.5])
def test_eta_out_of_range(eta):
    with pytest.raises(ValueError):
        is_eta_injective(path_graph(3), Colouring((1, 2, 1), 2), eta)


def test_r_examples():
    assert is_r_unique(path_graph(3), Colouring((1, 2, 1), 2), 1)
    assert not is_r_unique(path_graph(3), Colouring((1, 1, 1), 1), 1)
    assert is_r_unique(complete_graph(3), Colouring((1, 2, 3), 3), INFINITY)


@pytest.mark.parametrize("r", [0, -1, 1.5, True])
def test_invalid_r(r):
    with pytest.raises(ValueError):
        is_r_unique(path_graph(3), Colouring((1, 2, 1), 2), r)


def test_tree_unique_examples():
    k3 = complete_graph(3)
    assert is_tree_unique(k3, Colouring((1, 1, 2), 2), path(3))
    assert not is_tree_unique(k3, Colouring((1, 1, 1), 1), path(3))


def test_tree_unique_vacuous_flag():
    res = check_tree_unique(path_graph(3), Colouring((1, 1, 1), 1), star(5))
    assert res.holds and res.vacuous and res.copies_checked == 0


def test_tree_unique_witness_fails_recount():
    g = complete_graph(4)
    f = Colouring((1, 1, 2, 2), 2)
    res = check_tree_unique(g, f, path(4))
    assert not res.holds
    counts = [f[v] for v in res.witness.mapping]
    assert sorted(counts.count(c) for c in set(counts)) == [2, 2]


@given(graph_colourings(max_n=7))
def test_predicates_match_oracles(gf):
    g, f = gf
    col = f.colours
    assert is_proper(g, f) == oracles.proper(g.edges, g.n, col)
    for r in (1, 2, 3):
        assert is_r_unique(g, f, r) == oracles.r_unique(g.edges, g.n, col, r)
    assert is_r_unique(g, f, INFINITY) == oracles.r_unique(g.edges, g.n, col, g.n + 1)
    for eta in (Fraction(1, 4), Fraction(1, 2), Fraction(2, 3), Fraction(1)):
        assert is_eta_injective(g, f, eta) == oracles.eta_injective(g.edges, g.n, col, eta)
    assert is_tree_unique(g, f, path(3)) == oracles.tree_unique(g.edges, g.n, col, path(3).edges, 3)


@given(graph_colourings())
def test_special_case_collapses(gf):
    g, f = gf
    assert is_tree_unique(g, f, edge()) == is_proper(g, f)
    assert is_r_unique(g, f, 1) == is_conflict_free(g, f)
    adj = oracles.nbrs(g.edges, g.n)
    all_unique = all(oracles.open_unique(adj, f.colours, u) == len(adj[u]) for u in range(g.n))
    assert is_injective(g, f) == all_unique


@given(graph_colourings())
def test_monotonicity(gf):
    g, f = gf
    rs = [is_r_unique(g, f, r) for r in (1, 2, 3, 4)] + [is_r_unique(g, f, INFINITY)]
    # once false, stays false as r grows
    assert rs == sorted(rs, reverse=True)
    etas = [is_eta_injective(g, f, e) for e in (0.25, 0.5, 0.75, 1)]
    assert etas == sorted(etas, reverse=True)


@given(graph_colourings())
def test_proper_sandwich(gf):
    g, f = gf
    if is_proper(g, f):
        assert is_r_unique(g, f, 1)
    if is_r_unique(g, f, INFINITY):
        assert is_proper(g, f)


@given(graph_colourings(), st.randoms(use_true_random=False))
def test_colour_relabelling_invariance(gf, rnd):
    g, f = gf
    perm = list(range(1, f.k + 1))
    rnd.shuffle(perm)
    h = f.permute_colours(perm)
    for check in (is_proper, lambda g, f: is_r_unique(g, f, 2), lambda g, f: is_eta_injective(g, f, 0.5),
                  lambda g, f: is_tree_unique(g, f, path(3))):
        assert check(g, f) == check(g, h)


@given(graph_colourings(), st.randoms(use_true_random=False))
def test_vertex_relabelling_equivariance(gf, rnd):
    g, f = gf
    perm = list(range(g.n))
    rnd.shuffle(perm)
    g2, f2 = g.relabel(perm), f.relabel_vertices(perm)
    assert profile(g, f).closed_unique[0] == profile(g2, f2).closed_unique[perm[0]]
    for check in (is_proper, lambda g, f: is_r_unique(g, f, 2), lambda g, f: is_eta_injective(g, f, 0.5),
                  lambda g, f: is_tree_unique(g, f, path(3))):
        assert check(g, f) == check(g2, f2)


def test_colouring_text_round_trip():
    f = Colouring((1, 3, 2), 3)
    assert f.to_text() == "3 3\n0 1\n1 3\n2 2\n"
    assert Colouring.from_text(f.to_text()) == f
    with pytest.raises(ValueError):
        Colouring.from_text("2 2\n1 1\n0 2\n")


def test_isolated_vertices_vacuous():
    g = Graph.from_edges(3, [(0, 1)])
    f = Colouring((1, 2, 1), 2)
    assert is_r_unique(g, f, INFINITY)
    assert is_eta_injective(g, f, 1)
