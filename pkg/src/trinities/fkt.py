"""Universes, states, trails and the clock graph.

A universe is a connected 4-regular plane graph with two adjacent starred
faces. Quadrant k at a vertex lies between rotation darts k and k+1
(counterclockwise) and belongs to the face on the left of dart k. A state
places one marker per vertex so that unstarred faces are covered exactly
once; splitting every vertex according to its marker closes the markers'
quadrants' two neighbours off and yields the single-loop trail of the
state. A clockwise transposition retreats the markers of two vertices one
quadrant clockwise so that their faces swap; the direction convention is
pinned by a regression fixture, since only its consistency matters here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dividing, plane_graph, transitions, trees, trinity as trinity_mod
from .limits import DEFAULT_CAP, check_cap
from .plane_graph import RotationGraph, parse_graph, planar_dual, two_colouring, with_colours


class NotFourRegular(ValueError):
    """Universes must be 4-regular."""


class StarsNotAdjacent(ValueError):
    """The two starred faces must share an edge."""


class CountMismatch(ValueError):
    """Vertex count must equal the number of unstarred faces."""


class NotSingleLoop(RuntimeError):
    """A state's splitting must close into one loop (model bug otherwise)."""


class MappingFailure(RuntimeError):
    """The state-to-configuration correspondence failed (model bug)."""


@dataclass(frozen=True)
class Universe:
    graph: RotationGraph = field(compare=False)
    stars: tuple[str, str] = ()

    @property
    def unstarred(self):
        return tuple(f for f in sorted(self.graph.faces) if f not in self.stars)


def parse_universe(document):
    """Validate a universe document: graph schema plus a ``stars`` pair."""
    if not isinstance(document, dict) or "stars" not in document:
        raise plane_graph.SchemaError("universe document needs a 'stars' field")
    graph = parse_graph({k: v for k, v in document.items() if k != "stars"})
    stars = tuple(str(s) for s in document["stars"])
    if len(stars) != 2 or len(set(stars)) != 2:
        raise plane_graph.SchemaError("stars must name two distinct faces")
    for v in graph.vertices.values():
        if len(v.rotation) != 4:
            raise NotFourRegular(f"vertex {v.id!r} has degree {len(v.rotation)}")
    if any(s not in graph.faces for s in stars):
        raise plane_graph.SchemaError(f"stars {stars} are not faces")
    adjacent = any(
        {graph.face_of(a), graph.face_of(b)} == set(stars)
        for a, b in (graph.edges[e].darts for e in graph.edges)
    )
    if not adjacent:
        raise StarsNotAdjacent(f"faces {stars} share no edge")
    if len(graph.vertices) != len(graph.faces) - 2:
        raise CountMismatch(
            f"{len(graph.vertices)} vertices vs {len(graph.faces) - 2} unstarred faces"
        )
    return Universe(graph, stars)


# -- states ---------------------------------------------------------------------


@dataclass(frozen=True)
class UniverseState:
    markers: tuple  # sorted (vertex id, quadrant index) pairs

    def marker(self, v):
        return dict(self.markers)[v]

    def to_json(self):
        return {"markers": {v: k for v, k in self.markers}}


def quadrant_face(graph, v, k):
    """Face containing quadrant k of vertex v."""
    return graph.face_of(graph.vertices[v].rotation[k])


def enumerate_states(universe, cap=DEFAULT_CAP):
    """All marker assignments covering each unstarred face exactly once."""
    g = universe.graph
    verts = sorted(g.vertices)
    check_cap(4 ** len(verts), cap, "state search space")
    states = []
    used = set()
    markers = {}

    def rec(i):
        if i == len(verts):
            states.append(UniverseState(tuple(sorted(markers.items()))))
            return
        v = verts[i]
        for k in range(4):
            face = quadrant_face(g, v, k)
            if face in universe.stars or face in used:
                continue
            used.add(face)
            markers[v] = k
            rec(i + 1)
            used.discard(face)
            del markers[v]

    rec(0)
    return tuple(states)


# -- trails ----------------------------------------------------------------------


@dataclass(frozen=True)
class Trail:
    splitting: tuple  # sorted (vertex id, split parity) pairs
    loop: tuple  # dart sequence of the single closed curve


def split_pairs(graph, v, parity):
    """The two dart pairs joined when the vertex is split.

    Parity 0 splits as for a marker in quadrant 0 or 2, parity 1 as for
    quadrant 1 or 3: the marked and opposite quadrants merge, the other
    two are closed off.
    """
    rot = graph.vertices[v].rotation
    k = parity
    return (
        frozenset((rot[k], rot[k - 1])),
        frozenset((rot[(k + 1) % 4], rot[(k + 2) % 4])),
    )


def splitting_loops(graph, parities):
    """Closed curves of a full splitting, as dart sequences."""
    join = {}
    for v, parity in parities.items():
        for pair in split_pairs(graph, v, parity):
            a, b = sorted(pair)
            join[a] = b
            join[b] = a
    loops = []
    seen = set()
    for start in graph.darts():
        if start in seen:
            continue
        loop = []
        d = start
        while True:
            loop.append(d)
            seen.add(d)
            e = graph.reverse(d)  # run along the edge
            loop.append(e)
            seen.add(e)
            d = join[e]  # cross the split vertex
            if d == start:
                break
        loops.append(tuple(loop))
    return loops


def state_to_trail(universe, state):
    """Split every vertex by its marker; the result must be a single loop."""
    parities = {v: k % 2 for v, k in state.markers}
    loops = splitting_loops(universe.graph, parities)
    if len(loops) != 1:
        raise NotSingleLoop(f"state splits into {len(loops)} loops")
    return Trail(tuple(sorted(parities.items())), loops[0])


# -- transpositions and the clock graph ----------------------------------------------


CLOCKWISE = "clockwise"
COUNTERCLOCKWISE = "counterclockwise"


def transpositions(universe, state):
    """States one marker switch away, tagged with the rotation direction.

    The markers of v and w rotate one quadrant the same way and their
    faces swap; only the face identities matter, so the two vertices may
    be far apart.
    """
    g = universe.graph
    markers = dict(state.markers)
    verts = sorted(markers)
    out = []
    for i, v in enumerate(verts):
        for w in verts[i + 1:]:
            for direction, step in ((CLOCKWISE, -1), (COUNTERCLOCKWISE, 1)):
                kv, kw = markers[v], markers[w]
                fv, fw = quadrant_face(g, v, kv), quadrant_face(g, w, kw)
                if quadrant_face(g, v, (kv + step) % 4) != fw:
                    continue
                if quadrant_face(g, w, (kw + step) % 4) != fv:
                    continue
                new = dict(markers)
                new[v] = (kv + step) % 4
                new[w] = (kw + step) % 4
                out.append((UniverseState(tuple(sorted(new.items()))), direction))
    return out


@dataclass(frozen=True)
class ClockGraph:
    states: tuple
    arcs: tuple  # (i, j) state indices, clockwise moves
    report: dict


def clock_graph(universe, cap=DEFAULT_CAP):
    """States with clockwise transpositions as arcs, plus structure checks."""
    states = enumerate_states(universe, cap)
    index = {s: i for i, s in enumerate(states)}
    arcs = []
    for i, s in enumerate(states):
        for s2, direction in transpositions(universe, s):
            if direction == CLOCKWISE:
                arcs.append((i, index[s2]))
    arcs = tuple(sorted(set(arcs)))

    n = len(states)
    outs = [[] for _ in range(n)]
    indeg = [0] * n
    undirected = [set() for _ in range(n)]
    for i, j in arcs:
        outs[i].append(j)
        indeg[j] += 1
        undirected[i].add(j)
        undirected[j].add(i)

    seen = {0} if n else set()
    stack = [0] if n else []
    while stack:
        x = stack.pop()
        for y in undirected[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    connected = len(seen) == n

    colour = [0] * n  # 0 unseen, 1 on stack, 2 done
    acyclic = True

    def dfs(x):
        nonlocal acyclic
        colour[x] = 1
        for y in outs[x]:
            if colour[y] == 1:
                acyclic = False
            elif colour[y] == 0:
                dfs(y)
        colour[x] = 2

    for x in range(n):
        if colour[x] == 0:
            dfs(x)

    sources = [i for i in range(n) if indeg[i] == 0]
    sinks = [i for i in range(n) if not outs[i]]
    report = {
        "states": n,
        "arcs": len(arcs),
        "weakly_connected": connected,
        "acyclic": acyclic,
        "unique_source": len(sources) == 1,
        "unique_sink": len(sinks) == 1,
    }
    report["ok"] = all(
        report[k] for k in ("weakly_connected", "acyclic", "unique_source", "unique_sink")
    )
    return ClockGraph(states, arcs, report)


# -- the checkerboard dual -------------------------------------------------------------


def universe_dual_graph(universe):
    """Checkerboard-coloured planar dual of the universe.

    Faces of the result correspond to vertices of the universe and all
    have four sides.
    """
    dual = planar_dual(universe.graph)
    colouring = two_colouring(dual)
    if colouring is None:
        raise MappingFailure("universe dual is not checkerboard-colourable")
    return with_colours(dual, colouring)


def _dual_face_vertex(universe, dual, face_id):
    """Universe vertex sitting inside a face of the dual."""
    t = dual.faces[face_id].boundary[0]
    return universe.graph.vertex_of(universe.graph.reverse(t))


@dataclass(frozen=True)
class CorrespondenceReport:
    states: int
    tight: int
    magic: int
    bijective: bool

    def to_json(self):
        return {
            "states": str(self.states),
            "tight_configurations": str(self.tight),
            "magic": str(self.magic),
            "bijective": self.bijective,
            "ok": self.bijective and self.states == self.tight == self.magic,
        }


def state_configuration(universe, dual, trin, state):
    """Tight configuration carried by a state's trail.

    Splitting pairs of universe darts become chords joining the matching
    boundary points of the dual face at that vertex.
    """
    g = universe.graph
    diagrams = {}
    for fid in trin.red:
        boundary = dual.faces[fid].boundary
        x = _dual_face_vertex(universe, dual, fid)
        point_of = {g.reverse(t): i for i, t in enumerate(boundary)}
        pairs = []
        for pair in split_pairs(g, x, state.marker(x) % 2):
            a, b = pair
            pairs.append(tuple(sorted((point_of[a], point_of[b]))))
        diagrams[fid] = dividing.ChordDiagram.from_pairs(2, pairs)
    return dividing.Configuration.from_diagrams(trin, diagrams)


def states_vs_configurations(universe, cap=DEFAULT_CAP):
    """Verify that states biject with tight configurations of the dual.

    Also checks the state count against the magic number of the dual's
    trinity.
    """
    dual = universe_dual_graph(universe)
    trin = trinity_mod.build_trinity(dual)
    if any(n != 2 for n in trin.n_r.values()):
        raise MappingFailure("dual faces must be quadrilaterals")
    states = enumerate_states(universe, cap)
    graph = transitions.build_configuration_graph(trin, cap)
    tight = set(graph.vertices)
    image = set()
    for s in states:
        config = state_configuration(universe, dual, trin, s)
        if not dividing.is_tight(config).tight:
            raise MappingFailure("state mapped to a non-tight configuration")
        image.add(config)
    bijective = len(image) == len(states) and image == tight
    if not bijective:
        raise MappingFailure("states do not biject with tight configurations")
    magic = trees.magic_number(trin, cap)
    if not magic.agree or magic.value != len(states):
        raise MappingFailure("state count disagrees with the magic number")
    return CorrespondenceReport(len(states), len(tight), magic.value, True)


# -- built-in universes ------------------------------------------------------------------


def curl_universe():
    """One crossing: a circle with a single curl."""
    doc = {
        "vertices": [
            {
                "id": "x",
                "colour": None,
                # counterclockwise: small-loop east, small-loop north,
                # big-loop west, big-loop south
                "rotation": ["L.1", "L.0", "B.0", "B.1"],
            }
        ],
        "edges": [
            {"id": "L", "darts": ["L.0", "L.1"]},
            {"id": "B", "darts": ["B.0", "B.1"]},
        ],
    }
    graph = parse_graph(doc)
    # star the small-loop face and its neighbour between the loops
    inner = graph.face_of("L.1")
    middle = graph.face_of("L.0")
    doc["stars"] = sorted((inner, middle))
    return doc


def hopf_universe():
    """Two crossings: the Hopf link shadow (two overlapping circles)."""
    doc = {
        "vertices": [
            {"id": "t", "colour": None, "rotation": ["eR.0", "eL.0", "em2.0", "em1.0"]},
            {"id": "b", "colour": None, "rotation": ["em1.1", "em2.1", "eL.1", "eR.1"]},
        ],
        "edges": [
            {"id": "eL", "darts": ["eL.0", "eL.1"]},
            {"id": "em1", "darts": ["em1.0", "em1.1"]},
            {"id": "em2", "darts": ["em2.0", "em2.1"]},
            {"id": "eR", "darts": ["eR.0", "eR.1"]},
        ],
    }
    graph = parse_graph(doc)
    outer = graph.face_of("eL.1")  # left of the left-outer arc running up
    left = graph.face_of("eL.0")
    doc["stars"] = sorted((outer, left))
    return doc


def figure_eight_universe():
    """Four crossings: the figure-eight knot shadow."""
    doc = {
        "vertices": [
            {"id": "b", "colour": None, "rotation": ["e4.0", "e8.1", "e3.1", "e1.0"]},
            {"id": "m", "colour": None, "rotation": ["e7.1", "e5.0", "e8.0", "e4.1"]},
            {"id": "l", "colour": None, "rotation": ["e2.1", "e6.0", "e3.0", "e5.1"]},
            {"id": "r", "colour": None, "rotation": ["e6.1", "e2.0", "e7.0", "e1.1"]},
        ],
        "edges": [
            {"id": "e1", "darts": ["e1.0", "e1.1"]},
            {"id": "e2", "darts": ["e2.0", "e2.1"]},
            {"id": "e3", "darts": ["e3.0", "e3.1"]},
            {"id": "e4", "darts": ["e4.0", "e4.1"]},
            {"id": "e5", "darts": ["e5.0", "e5.1"]},
            {"id": "e6", "darts": ["e6.0", "e6.1"]},
            {"id": "e7", "darts": ["e7.0", "e7.1"]},
            {"id": "e8", "darts": ["e8.0", "e8.1"]},
        ],
    }
    graph = parse_graph(doc)
    # the two faces flanking the long south-east edge
    doc["stars"] = sorted((graph.face_of("e1.0"), graph.face_of("e1.1")))
    return doc


BUILTIN_UNIVERSES = {
    "curl": curl_universe,
    "hopf": hopf_universe,
    "figure_eight": figure_eight_universe,
}
