"""Universes, states, trails, transpositions, the clock graph and the
state/configuration correspondence."""

from itertools import product

import pytest

from corpus import corpus_documents
from trinities import fkt
from trinities import plane_graph as pg
from trinities import trees
from trinities import trinity as tr


@pytest.fixture(scope="module")
def universes():
    return {name: fkt.parse_universe(builder()) for name, builder in fkt.BUILTIN_UNIVERSES.items()}


def splitting_oracle(universe):
    """Exhaustive sweep of all 2^V splittings, keeping single loops."""
    verts = sorted(universe.graph.vertices)
    single = []
    for bits in product((0, 1), repeat=len(verts)):
        parities = dict(zip(verts, bits))
        if len(fkt.splitting_loops(universe.graph, parities)) == 1:
            single.append(tuple(sorted(parities.items())))
    return single


def state_oracle(universe):
    """Exhaustive 4^V marker sweep with the bijection filter."""
    g = universe.graph
    verts = sorted(g.vertices)
    states = []
    for choice in product(range(4), repeat=len(verts)):
        faces = [fkt.quadrant_face(g, v, k) for v, k in zip(verts, choice)]
        if any(f in universe.stars for f in faces):
            continue
        if len(set(faces)) != len(faces):
            continue
        states.append(fkt.UniverseState(tuple(zip(verts, choice))))
    return states


def test_parse_curl(universes):
    u = universes["curl"]
    assert len(u.graph.vertices) == 1
    assert len(u.graph.faces) == 3
    assert len(u.unstarred) == 1


def test_parse_hopf(universes):
    u = universes["hopf"]
    assert len(u.graph.vertices) == 2
    assert len(u.graph.faces) == 4
    assert len(u.unstarred) == 2


def test_parse_figure_eight(universes):
    u = universes["figure_eight"]
    assert len(u.graph.vertices) == 4
    assert len(u.graph.faces) == 6
    assert len(u.unstarred) == 4


def test_not_four_regular():
    doc = corpus_documents()["cycle4"]
    doc = {**doc, "stars": ["f0", "f1"]}
    with pytest.raises(fkt.NotFourRegular):
        fkt.parse_universe(doc)


def test_stars_must_be_adjacent():
    doc = fkt.curl_universe()
    g = pg.parse_graph({k: v for k, v in doc.items() if k != "stars"})
    inner = g.face_of("L.1")
    outer = g.face_of("B.0")
    doc["stars"] = [inner, outer]  # share only the vertex
    with pytest.raises(fkt.StarsNotAdjacent):
        fkt.parse_universe(doc)


def test_stars_field_required():
    doc = fkt.curl_universe()
    del doc["stars"]
    with pytest.raises(pg.SchemaError):
        fkt.parse_universe(doc)


@pytest.mark.parametrize("name,expected", [("curl", 1), ("hopf", 2), ("figure_eight", 5)])
def test_state_counts(universes, name, expected):
    states = fkt.enumerate_states(universes[name])
    assert len(states) == expected
    assert {s.markers for s in states} == {s.markers for s in state_oracle(universes[name])}


def test_states_count_equals_splitting_oracle(universes):
    for name, u in universes.items():
        assert len(fkt.enumerate_states(u)) == len(splitting_oracle(u)), name


def test_state_to_trail_curl(universes):
    u = universes["curl"]
    (state,) = fkt.enumerate_states(u)
    trail = fkt.state_to_trail(u, state)
    assert sorted(trail.loop) == u.graph.darts()


def test_trails_distinct_and_exhaust_splittings(universes):
    for name, u in universes.items():
        states = fkt.enumerate_states(u)
        trails = [fkt.state_to_trail(u, s) for s in states]
        assert len({t.splitting for t in trails}) == len(states)
        assert {t.splitting for t in trails} == set(splitting_oracle(u)), name


def test_state_search_cap(universes):
    from trinities.limits import CapExceeded

    with pytest.raises(CapExceeded):
        fkt.enumerate_states(universes["figure_eight"], cap=10)


def test_transpositions_curl(universes):
    u = universes["curl"]
    (state,) = fkt.enumerate_states(u)
    assert fkt.transpositions(u, state) == []


def test_transpositions_hopf(universes):
    u = universes["hopf"]
    states = fkt.enumerate_states(u)
    for s in states:
        moves = fkt.transpositions(u, s)
        assert len(moves) == 1
        target, _direction = moves[0]
        assert target in states
        assert target != s


def test_hopf_direction_regression(universes):
    # frozen convention: markers advance clockwise = quadrant index minus one
    u = universes["hopf"]
    states = {dict(s.markers)["t"]: s for s in fkt.enumerate_states(u)}
    src = states[3]  # markers t:3, b:0
    (move,) = fkt.transpositions(u, src)
    target, direction = move
    assert dict(src.markers) == {"t": 3, "b": 0}
    assert dict(target.markers) == {"t": 2, "b": 3}
    assert direction == fkt.CLOCKWISE


def test_transposition_symmetry(universes):
    for u in universes.values():
        states = fkt.enumerate_states(u)
        for s in states:
            for s2, direction in fkt.transpositions(u, s):
                back = fkt.transpositions(u, s2)
                opposite = (
                    fkt.COUNTERCLOCKWISE if direction == fkt.CLOCKWISE else fkt.CLOCKWISE
                )
                assert (s, opposite) in back


def test_transpositions_yield_valid_states(universes):
    for u in universes.values():
        states = set(fkt.enumerate_states(u))
        for s in states:
            for s2, _ in fkt.transpositions(u, s):
                assert s2 in states


@pytest.mark.parametrize("name", ["curl", "hopf", "figure_eight"])
def test_clock_graph_structure(universes, name):
    clock = fkt.clock_graph(universes[name])
    assert clock.report["ok"]
    assert clock.report["weakly_connected"]
    assert clock.report["acyclic"]
    assert clock.report["unique_source"]
    assert clock.report["unique_sink"]


def test_clock_graph_hopf_shape(universes):
    clock = fkt.clock_graph(universes["hopf"])
    assert clock.report["states"] == 2
    assert clock.report["arcs"] == 1


def test_universe_dual_hopf_is_four_cycle(universes, graphs):
    dual = fkt.universe_dual_graph(universes["hopf"])
    assert pg.canonical_form(dual) == pg.canonical_form(graphs["cycle4"])


def test_universe_dual_curl_is_path(universes):
    # hand construction: three regions in a row give a two-edge path
    dual = fkt.universe_dual_graph(universes["curl"])
    assert len(dual.vertices) == 3
    assert len(dual.edges) == 2
    assert sorted(dual.degree(v) for v in dual.vertices) == [1, 1, 2]


def test_universe_dual_figure_eight(universes):
    dual = fkt.universe_dual_graph(universes["figure_eight"])
    assert len(dual.vertices) == 6
    assert len(dual.edges) == 8
    assert len(dual.faces) == 4


def test_universe_dual_faces_are_quadrilaterals(universes):
    for name, u in universes.items():
        dual = fkt.universe_dual_graph(u)
        assert all(len(f.boundary) == 4 for f in dual.faces.values()), name
        report = pg.validate_bipartite_plane(dual)
        assert report.ok, name


@pytest.mark.parametrize("name,expected", [("curl", 1), ("hopf", 2), ("figure_eight", 5)])
def test_states_vs_configurations(universes, name, expected):
    report = fkt.states_vs_configurations(universes[name])
    assert report.bijective
    assert report.states == report.tight == report.magic == expected
    assert report.to_json()["ok"]


def test_state_count_independent_of_star_choice():
    # any adjacent pair of faces gives the same number of states
    doc = fkt.hopf_universe()
    g = pg.parse_graph({k: v for k, v in doc.items() if k != "stars"})
    counts = set()
    for eid in g.edges:
        a, b = g.edges[eid].darts
        stars = sorted({g.face_of(a), g.face_of(b)})
        if len(stars) != 2:
            continue
        u = fkt.parse_universe({**doc, "stars": stars})
        counts.add(len(fkt.enumerate_states(u)))
    assert counts == {2}


def test_magic_of_dual_trinity_matches_states(universes):
    for name, u in universes.items():
        trin = tr.build_trinity(fkt.universe_dual_graph(u))
        assert trees.magic_number(trin).value == len(fkt.enumerate_states(u)), name
