"""Bypass moves, the configuration graph and its classification."""

import pytest

from trinities import dividing as dv
from trinities import hypertrees as ht
from trinities import transitions as tx
from trinities import trees
from trinities.limits import CapExceeded


def test_no_moves_with_two_chords():
    for d in dv.enumerate_chord_diagrams(2):
        assert tx.bypass_moves(d) == set()


def test_three_nested_chords_rotate_both_ways():
    d = dv.ChordDiagram.from_pairs(3, [(0, 5), (1, 4), (2, 3)])
    targets = tx.bypass_moves(d)
    assert targets == {
        dv.ChordDiagram.from_pairs(3, [(0, 1), (2, 5), (3, 4)]),
        dv.ChordDiagram.from_pairs(3, [(0, 3), (1, 2), (4, 5)]),
    }


def test_rotation_cycle_closes():
    a = dv.ChordDiagram.from_pairs(3, [(0, 5), (1, 4), (2, 3)])
    b = dv.ChordDiagram.from_pairs(3, [(0, 1), (2, 5), (3, 4)])
    c = dv.ChordDiagram.from_pairs(3, [(0, 3), (1, 2), (4, 5)])
    assert tx.bypass_moves(b) == {a, c}
    assert tx.bypass_moves(c) == {a, b}


def test_side_by_side_chords_admit_no_move():
    # no chord separates the other two, so no attaching arc crosses them
    d = dv.ChordDiagram.from_pairs(3, [(0, 1), (2, 3), (4, 5)])
    assert tx.bypass_moves(d) == set()


def test_moves_preserve_matching_validity():
    for n in (3, 4):
        for d in dv.enumerate_chord_diagrams(n):
            for d2 in tx.bypass_moves(d):
                assert d2.n == n  # construction re-validates non-crossing


def test_moves_are_symmetric():
    for n in (3, 4):
        for d in dv.enumerate_chord_diagrams(n):
            for d2 in tx.bypass_moves(d):
                assert d in tx.bypass_moves(d2)


def test_bypass_moves_preserve_disc_euler(trinities):
    checked = 0
    for t in trinities.values():
        for fid in t.red:
            if t.n_r[fid] > 4:
                continue
            for d in dv.enumerate_chord_diagrams(t.n_r[fid]):
                e0 = dv.disc_euler(t, fid, d)
                for d2 in tx.bypass_moves(d):
                    assert dv.disc_euler(t, fid, d2) == e0
                    checked += 1
    assert checked > 100


def test_configuration_graph_single_edge(trinities):
    cg = tx.build_configuration_graph(trinities["path1"])
    assert len(cg.vertices) == 1
    assert cg.edges == ()
    assert cg.component_count() == 1
    assert cg.total_configurations == 1


def test_configuration_graph_four_cycle(trinities):
    cg = tx.build_configuration_graph(trinities["cycle4"])
    assert cg.total_configurations == 4
    assert len(cg.vertices) == 2
    assert cg.edges == ()  # single-face replacements break tightness
    assert cg.component_count() == 2


def test_configuration_graph_cap(trinities):
    with pytest.raises(CapExceeded):
        tx.build_configuration_graph(trinities["grid2"], cap=100)


def test_component_count_equals_magic(trinities):
    for name, t in trinities.items():
        cg = tx.build_configuration_graph(t)
        assert cg.component_count() == trees.magic_number(t).value, name


def test_edges_join_single_face_differences(trinities):
    t = trinities["cycle6"]
    cg = tx.build_configuration_graph(t)
    for i, j in cg.edges:
        a, b = cg.vertices[i], cg.vertices[j]
        differing = [f for f in t.red if a.diagram(f) != b.diagram(f)]
        assert len(differing) == 1


def test_bypass_edges_stay_in_component(trinities):
    for name in ("cycle6", "ladder3", "running11"):
        t = trinities[name]
        cg = tx.build_configuration_graph(t)
        index = {v: i for i, v in enumerate(cg.vertices)}
        for v in cg.vertices:
            for target, move in tx.config_bypass_moves(v):
                if target in index:
                    assert cg.component_of[index[target]] == cg.component_of[index[v]]
                    # a lifted move is also a single-face edge of the graph
                    pair = tuple(sorted((index[v], index[target])))
                    assert pair in set(cg.edges)


def test_classification_single_edge(trinities):
    cg = tx.build_configuration_graph(trinities["path1"])
    report = tx.classify_components(cg)
    assert report.bijection_ok
    (component,) = cg.components
    assert set(component.hypertree.values()) == {0}


def test_classification_four_cycle(trinities):
    t = trinities["cycle4"]
    cg = tx.build_configuration_graph(t)
    report = tx.classify_components(cg)
    assert report.bijection_ok
    faces = sorted(t.red)
    eulers = {tuple(c.euler[f] for f in faces) for c in cg.components}
    assert eulers == {(1, -1), (-1, 1)}
    hypertrees = {tuple(c.hypertree[f] for f in faces) for c in cg.components}
    assert hypertrees == {(1, 0), (0, 1)}


def test_classification_bijection_everywhere(trinities):
    for name, t in trinities.items():
        cg = tx.build_configuration_graph(t)
        report = tx.classify_components(cg)
        assert report.bijection_ok, name
        expected = {
            h.vector for h in ht.enumerate_hypertrees(ht.trinity_hypergraph(t, "emerald", "red"))
        }
        got = {tuple(sorted(c.hypertree.items())) for c in cg.components}
        assert got == expected


def test_components_have_tree_hugging_representatives(trinities):
    for t in trinities.values():
        cg = tx.build_configuration_graph(t)
        for component in cg.components:
            rep = cg.vertices[component.representative]
            hugging, witness = dv.is_tree_hugging(rep)
            assert hugging
            assert {f: d - 1 for f, d in witness.degrees("red").items()} == component.hypertree


def test_euler_constant_on_components(trinities):
    for t in trinities.values():
        cg = tx.build_configuration_graph(t)
        for component in cg.components:
            for i in component.members:
                assert dv.euler_vector(cg.vertices[i]) == component.euler


def test_classification_json(trinities):
    cg = tx.build_configuration_graph(trinities["cycle4"])
    doc = tx.classify_components(cg).to_json()
    assert doc["bijection_ok"] is True
    assert len(doc["components"]) == 2
    for comp in doc["components"]:
        assert set(comp) == {"id", "size", "euler", "hypertree", "tree_hugging_rep"}
        assert comp["tree_hugging_rep"]["tight"] is True


def test_valence_concentration_already_hugging(trinities):
    t = trinities["cycle4"]
    tree = next(iter(trees.enumerate_spanning_trees(t.violet_graph, record_colour="red")))
    config = dv.tree_hugging(t, tree)
    path = tx.valence_concentration_path(config)
    assert path == [config]


def test_valence_concentration_terminates_tree_hugging(trinities):
    # includes graphs with an octagonal face (half-length 4)
    for name in ("ladder3", "running11", "grid2"):
        t = trinities[name]
        assert max(t.n_r.values()) >= 4
        cg = tx.build_configuration_graph(t)
        budget = 1 + sum(t.n_r.values())
        for v in cg.vertices:
            path = tx.valence_concentration_path(v)
            assert len(path) <= budget
            hugging, _ = dv.is_tree_hugging(path[-1])
            assert hugging
            for a, b in zip(path, path[1:]):
                differing = [f for f in t.red if a.diagram(f) != b.diagram(f)]
                assert len(differing) == 1
                assert dv.is_tight(b).tight


def test_valence_concentration_requires_tight(trinities):
    t = trinities["cycle4"]
    faces = sorted(t.red)
    diagrams = dv.enumerate_chord_diagrams(2)
    loose = dv.Configuration.from_diagrams(
        t, {faces[0]: diagrams[0], faces[1]: diagrams[1]}
    )
    assert not dv.is_tight(loose).tight
    with pytest.raises(dv.NotTight):
        tx.valence_concentration_path(loose)


def test_parallel_enumeration_matches_serial(trinities):
    t = trinities["running11"]
    serial = tx.build_configuration_graph(t, jobs=1)
    parallel = tx.build_configuration_graph(t, jobs=2)
    assert serial.vertices == parallel.vertices
    assert serial.component_count() == parallel.component_count()
