import math
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import graphs
from uniqcol.graph import Graph, complete_graph, cycle_graph, empty_graph, path_graph, star_graph
from uniqcol.patterns import (CopyCapExceeded, TreePattern, contains_copy, count_copies, edge,
                              enumerate_copies, nearly_regular_tree, parse_pattern, path, star)


def test_star_shapes():
    assert star(2).edges == edge().edges
    assert star(3).edges == ((0, 1), (0, 2))
    assert sorted(star(3).degrees) == sorted(path(3).degrees)
    assert sorted(star(4).degrees, reverse=True) == [3, 1, 1, 1]
    with pytest.raises(ValueError):
        star(1)


def test_nearly_regular_trees():
    t1 = nearly_regular_tree(1, 4)
    assert t1.t == 5 and sorted(t1.degrees) == sorted(star(5).degrees)
    t32 = nearly_regular_tree(3, 2)
    assert t32.t == 1 + 2 + 4 + 8
    assert t32.degrees[0] == 2
    assert sorted(t32.degrees) == [1] * 8 + [2] + [3] * 6
    t23 = nearly_regular_tree(2, 3)
    assert t23.t == 13
    assert t23.degrees[0] == 3
    assert [t23.degrees[v] for v in (1, 2, 3)] == [4, 4, 4]
    with pytest.raises(ValueError):
        nearly_regular_tree(12, 3)


def test_pattern_validation():
    with pytest.raises(ValueError):
        TreePattern(3, ((0, 1),))
    with pytest.raises(ValueError):
        TreePattern(4, ((0, 1), (1, 0), (2, 3)))
    with pytest.raises(ValueError):
        TreePattern(4, ((0, 1), (2, 3), (3, 2)))


def test_parse_pattern(tmp_path):
    assert parse_pattern("edge") == edge()
    assert parse_pattern("star:4") == star(4)
    assert parse_pattern("path:5") == path(5)
    assert parse_pattern("regular:2,2") == nearly_regular_tree(2, 2)
    file = tmp_path / "tree.txt"
    file.write_text("4 3\n0 1\n1 2\n1 3\n")
    assert parse_pattern(str(file)).degrees == (1, 3, 1, 1)
    with pytest.raises(ValueError):
        parse_pattern("blob:3")


def test_copy_counts_examples():
    assert count_copies(complete_graph(3), path(3)) == 3
    assert count_copies(star_graph(3), path(3)) == 3
    assert count_copies(empty_graph(6), path(3)) == 0
    assert count_copies(empty_graph(6), edge()) == 0


@pytest.mark.parametrize("n", range(2, 9))
def test_edge_copies_in_complete_graphs(n):
    assert count_copies(complete_graph(n), edge()) == math.comb(n, 2)


def test_contains_copy_examples():
    assert contains_copy(complete_graph(4), star(4))
    assert not contains_copy(path_graph(3), star(4))
    assert contains_copy(cycle_graph(5), path(4))
    copy = next(enumerate_copies(cycle_graph(5), path(4)))
    g = cycle_graph(5)
    assert all(g.has_edge(u, v) for u, v in copy.edges)


@pytest.mark.parametrize("pattern", [edge(), path(3), path(4), star(4), path(5),
                                     TreePattern(5, ((0, 1), (1, 2), (1, 3), (3, 4)))],
                         ids=str)
@given(g=graphs(max_n=7))
def test_enumeration_matches_brute_force(pattern, g):
    got = [frozenset(frozenset(e) for e in c.edges) for c in enumerate_copies(g, pattern)]
    assert len(got) == len(set(got))
    assert set(got) == oracles.tree_copies(g.edges, g.n, pattern.edges, pattern.t)


def test_enumeration_t32_brute_force_free_check():
    # T_{3,2} inside a slightly larger binary tree: copies are rooted at the top
    host = nearly_regular_tree(4, 2)
    g = Graph.from_edges(host.t, host.edges)
    copies = list(enumerate_copies(g, nearly_regular_tree(3, 2)))
    assert len(copies) == len({c.edges for c in copies})
    assert all(all(g.has_edge(u, v) for u, v in c.edges) for c in copies)
    assert len(copies) > 0


@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_count_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    for pattern in (path(3), path(4), star(4)):
        before = {frozenset(frozenset((perm[u], perm[v])) for u, v in c.edges) for c in enumerate_copies(g, pattern)}
        after = {frozenset(frozenset(e) for e in c.edges) for c in enumerate_copies(h, pattern)}
        assert before == after


@pytest.mark.parametrize("t", [3, 4, 5])
def test_embeddings_equal_copies_times_automorphisms(t):
    pattern = star(t)
    assert len(pattern.automorphisms) == math.factorial(t - 1)
    rng = random.Random(t)
    for _ in range(5):
        g = oracles.random_graph(rng, 7, 0.6)
        embeddings = sum(
            1 for verts in __import__("itertools").permutations(range(g.n), t)
            if all(g.has_edge(verts[0], verts[i]) for i in range(1, t))
        )
        assert embeddings == count_copies(g, pattern) * len(pattern.automorphisms)


def test_cap_exceeded_is_reported():
    with pytest.raises(CopyCapExceeded):
        list(enumerate_copies(complete_graph(6), path(3), cap=10))
    assert len(list(enumerate_copies(complete_graph(3), path(3), cap=3))) == 3


def test_pattern_larger_than_graph():
    assert list(enumerate_copies(complete_graph(3), star(5))) == []
    assert not contains_copy(complete_graph(3), star(5))
