"""Exact counting and enumeration of spanning trees and arborescences."""

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trinities import trees
from trinities.limits import CapExceeded


def permutation_determinant(rows):
    """Reference determinant by full permutation expansion (n <= 5)."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


@given(
    st.integers(min_value=1, max_value=5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
)
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_permutation_expansion(rows):
    assert trees.bareiss_determinant(rows) == permutation_determinant(rows)


def brute_force_arborescences(dual, root):
    """Independent oracle: test every arc subset of size |V| - 1."""
    n = len(dual.vertices)
    hits = []
    for subset in combinations(dual.arcs, n - 1):
        heads = [a.head for a in subset]
        if root in heads or len(set(heads)) != n - 1:
            continue
        parent = {a.head: a.tail for a in subset}
        ok = True
        for v in parent:
            u, hops = v, 0
            while u in parent and hops <= n:
                u = parent[u]
                hops += 1
            if u != root:
                ok = False
                break
        if ok:
            hits.append(frozenset(a.id for a in subset))
    return hits


def test_spanning_tree_counts_trivial(graphs):
    assert trees.spanning_tree_count(graphs["path1"]) == 1
    assert trees.spanning_tree_count(graphs["cycle4"]) == 4


def test_enumeration_matches_kirchhoff(graphs):
    for name, g in graphs.items():
        found = list(trees.enumerate_spanning_trees(g))
        assert len(found) == trees.spanning_tree_count(g), name
        assert len({t.edges for t in found}) == len(found)
        n_vertices = len(g.vertices)
        for t in found:
            assert len(t.edges) == n_vertices - 1


def test_enumeration_deterministic(graphs):
    g = graphs["cycle6"]
    a = [t.edges for t in trees.enumerate_spanning_trees(g)]
    b = [t.edges for t in trees.enumerate_spanning_trees(g)]
    assert a == b


def test_four_cycle_violet_graph_trees_and_records(trinities):
    gv = trinities["cycle4"].violet_graph
    found = list(trees.enumerate_spanning_trees(gv, record_colour="red"))
    assert len(found) == 4
    records = sorted(tuple(sorted(t.degrees().values())) for t in found)
    # two trees of red degrees (1,2) and two of (2,1) up to vertex order
    assert records == [(1, 2)] * 4
    distinct = {t.record() for t in found}
    assert len(distinct) == 2


def test_enumeration_cap(graphs):
    with pytest.raises(CapExceeded):
        list(trees.enumerate_spanning_trees(graphs["grid2"], cap=10))


def test_count_arborescences_loop_vertex(trinities):
    dual = trinities["path1"].directed_dual("violet")
    root = dual.vertices[0]
    assert trees.count_arborescences(dual, root) == 1
    found = trees.enumerate_arborescences(dual, root)
    assert found == [trees.Arborescence(dual, root, frozenset())]


def test_unknown_root(trinities):
    dual = trinities["cycle4"].directed_dual("red")
    with pytest.raises(trees.UnknownRoot):
        trees.count_arborescences(dual, "nope")
    with pytest.raises(trees.UnknownRoot):
        trees.enumerate_arborescences(dual, "nope")


def test_four_cycle_red_dual_count_against_oracle(trinities):
    dual = trinities["cycle4"].directed_dual("red")
    for root in dual.vertices:
        oracle = brute_force_arborescences(dual, root)
        assert len(oracle) == 2
        assert trees.count_arborescences(dual, root) == 2
        found = trees.enumerate_arborescences(dual, root)
        assert {a.arcs for a in found} == set(oracle)


def test_determinant_equals_enumeration_everywhere(trinities):
    for name, t in trinities.items():
        for colour in ("violet", "emerald", "red"):
            dual = t.directed_dual(colour)
            for root in dual.vertices:
                det = trees.count_arborescences(dual, root)
                assert det == len(trees.enumerate_arborescences(dual, root)), (name, colour, root)


def test_root_independence(trinities):
    for t in trinities.values():
        for colour in ("violet", "emerald", "red"):
            dual = t.directed_dual(colour)
            counts = {trees.count_arborescences(dual, r) for r in dual.vertices}
            assert len(counts) == 1


def test_three_duals_agree(trinities):
    for t in trinities.values():
        values = {
            trees.count_arborescences(t.directed_dual(c), min(t.directed_dual(c).vertices))
            for c in ("violet", "emerald", "red")
        }
        assert len(values) == 1


def test_brute_force_oracle_on_running_example(trinities):
    # value frozen from this oracle before the determinant route existed
    dual = trinities["running11"].directed_dual("violet")
    root = min(dual.vertices)
    oracle = brute_force_arborescences(dual, root)
    assert len(oracle) == 11
    assert trees.count_arborescences(dual, root) == 11
    assert len(trees.enumerate_arborescences(dual, root)) == 11


def test_magic_number_trivial(trinities):
    report = trees.magic_number(trinities["path1"])
    assert report.value == 1
    assert report.agree
    assert set(report.det.values()) == {1}
    assert set(report.enum.values()) == {1}
    assert set(report.hypertrees.values()) == {1}


def test_magic_number_four_cycle(trinities):
    report = trees.magic_number(trinities["cycle4"])
    assert report.value == 2
    assert report.agree


def test_magic_number_running_example(trinities):
    report = trees.magic_number(trinities["running11"])
    assert report.value == 11  # frozen golden value from the subset oracle
    assert report.agree


def test_magic_report_json(trinities):
    doc = trees.magic_number(trinities["cycle4"]).to_json()
    assert doc["det"] == {"violet": "2", "emerald": "2", "red": "2"}
    assert doc["agree"] is True
    assert doc["hypertrees"]["ER"] == "2"


def test_exchange_path_identity(trinities):
    gv = trinities["cycle4"].violet_graph
    t = next(iter(trees.enumerate_spanning_trees(gv, record_colour="red")))
    path = trees.tree_exchange_path(gv, t, t)
    assert len(path) == 1 and path[0].edges == t.edges


def test_exchange_path_four_cycle_one_step(trinities):
    gv = trinities["cycle4"].violet_graph
    all_trees = list(trees.enumerate_spanning_trees(gv, record_colour="red"))
    groups = {}
    for t in all_trees:
        groups.setdefault(t.record(), []).append(t)
    for group in groups.values():
        a, b = group
        path = trees.tree_exchange_path(gv, a, b)
        assert len(path) == 2  # a single exchange step
        # oracle: the fixed-record exchange graph on two trees is one edge
        assert len(a.edges - b.edges) == 1


def test_exchange_path_requires_same_record(trinities):
    gv = trinities["cycle4"].violet_graph
    all_trees = list(trees.enumerate_spanning_trees(gv, record_colour="red"))
    a = all_trees[0]
    b = next(t for t in all_trees if t.record() != a.record())
    with pytest.raises(trees.SameHypertreeRequired):
        trees.tree_exchange_path(gv, a, b)


def test_exchange_paths_exist_for_all_same_record_pairs(trinities):
    for name, t in trinities.items():
        if t.n > 12:
            continue
        gv = t.violet_graph
        groups = {}
        for tree in trees.enumerate_spanning_trees(gv, record_colour="red"):
            groups.setdefault(tree.record(), []).append(tree)
        for group in groups.values():
            for a, b in combinations(group, 2):
                path = trees.tree_exchange_path(gv, a, b)
                for x, y in zip(path, path[1:]):
                    assert len(x.edges - y.edges) == 1
                    assert x.record() == y.record()
