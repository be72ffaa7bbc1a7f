"""Dividing sets on face discs as non-crossing chord diagrams.

Each face of half-length n carries 2n boundary points, one per boundary
edge incidence, numbered in face-trace order. The boundary arc between
consecutive points runs past the vertex separating the two edges; arcs at
violet vertices are positive, arcs at emerald vertices negative (the discs
are oriented by the projection plane, so flipping this convention negates
every Euler class). A configuration chooses one diagram per face; it is
tight exactly when joining the two points of every edge glues all chords
into a single closed curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .limits import DEFAULT_CAP, check_cap
from .trees import SpanningTree


class SizeMismatch(ValueError):
    """Diagram size does not match the face's half-length."""


class NotSpanning(ValueError):
    """The edge set is not a spanning tree of the violet graph."""


class NotTight(ValueError):
    """Operation defined only for tight configurations."""


@dataclass(frozen=True)
class ChordDiagram:
    """Non-crossing perfect matching of 2n cyclically ordered points."""

    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        m = len(p)
        if m % 2 or m == 0:
            raise ValueError("need an even, positive number of points")
        for i, j in enumerate(p):
            if not 0 <= j < m or j == i or p[j] != i:
                raise ValueError("partner array is not a perfect matching")
        for a, b in self.pairs():
            for c, d in self.pairs():
                if a < c < b < d:
                    raise ValueError(f"chords ({a},{b}) and ({c},{d}) cross")

    @property
    def n(self):
        return len(self.partner) // 2

    def pairs(self):
        return tuple((i, j) for i, j in enumerate(self.partner) if i < j)

    @classmethod
    def from_pairs(cls, n, pairs):
        partner = [-1] * (2 * n)
        for a, b in pairs:
            partner[a] = b
            partner[b] = a
        return cls(tuple(partner))


def catalan(n):
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def enumerate_chord_diagrams(n, cap=DEFAULT_CAP):
    """All Catalan(n) non-crossing perfect matchings of 2n points, sorted."""
    if n < 1:
        raise ValueError("need n >= 1")
    check_cap(catalan(n), cap, "chord diagram enumeration")

    def matchings(points):
        if not points:
            yield []
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inner = points[1:k]
            outer = points[k + 1:]
            for mi in matchings(inner):
                for mo in matchings(outer):
                    yield [(first, points[k])] + mi + mo

    diagrams = [ChordDiagram.from_pairs(n, m) for m in matchings(list(range(2 * n)))]
    return tuple(sorted(diagrams, key=lambda d: d.partner))


def _region_arcs(partner):
    """Arc index sets of the complementary regions, root region last."""
    m = len(partner)
    regions = []
    stack = [[]]
    for p in range(m):
        if partner[p] > p:
            stack.append([])
        else:
            regions.append(stack.pop())
        stack[-1].append(p)
    regions.append(stack.pop())
    return regions


# -- per-face charts -----------------------------------------------------------


@dataclass(frozen=True)
class DiscChart:
    """Boundary bookkeeping of one face disc.

    arc_signs[i] is +1/-1 for the arc between points i and i+1;
    emerald_corner[i] is the violet-graph edge id of the corner under a
    negative arc (None under positive arcs).
    """

    face: str
    n: int
    arc_signs: tuple[int, ...]
    emerald_corner: tuple

    @property
    def points(self):
        return 2 * self.n


@lru_cache(maxsize=None)
def charts(trinity):
    g = trinity.graph
    out = {}
    for fid in trinity.red:
        boundary = g.faces[fid].boundary
        signs = []
        corners = []
        for i, d in enumerate(boundary):
            w = g.target(d)
            if g.colour_of(w) == "violet":
                signs.append(1)
                corners.append(None)
            else:
                signs.append(-1)
                corners.append(trinity.corner_id(fid, i))
        out[fid] = DiscChart(fid, trinity.n_r[fid], tuple(signs), tuple(corners))
    return out


@lru_cache(maxsize=None)
def glue_map(trinity):
    """How boundary points pair across the edges of the graph."""
    g = trinity.graph
    glue = {}
    for eid in g.edges:
        a, b = g.edges[eid].darts
        pa, pb = g.position_of(a), g.position_of(b)
        glue[pa] = pb
        glue[pb] = pa
    return glue


# -- configurations --------------------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    """One chord diagram per face disc."""

    trinity: object = field(compare=False)
    entries: tuple = ()

    def __post_init__(self):
        for fid, diagram in self.entries:
            if diagram.n != self.trinity.n_r[fid]:
                raise SizeMismatch(
                    f"face {fid}: diagram size {diagram.n} != n_r {self.trinity.n_r[fid]}"
                )
        if tuple(sorted(f for f, _ in self.entries)) != tuple(sorted(self.trinity.red)):
            raise ValueError("configuration must cover every face exactly once")

    @classmethod
    def from_diagrams(cls, trinity, diagrams):
        return cls(trinity, tuple(sorted(diagrams.items())))

    def diagram(self, face):
        return dict(self.entries)[face]

    def replace(self, face, diagram):
        items = dict(self.entries)
        items[face] = diagram
        return Configuration.from_diagrams(self.trinity, items)

    def to_json(self):
        verdict = is_tight(self)
        return {
            "faces": {
                fid: {"matching": [list(p) for p in diagram.pairs()]}
                for fid, diagram in self.entries
            },
            "tight": verdict.tight,
            "euler": euler_vector(self),
        }


@dataclass(frozen=True)
class TightVerdict:
    tight: bool
    loops: int


def loop_count(config):
    """Closed curves obtained by gluing chord endpoints across graph edges."""
    glue = glue_map(config.trinity)
    chord = {}
    for fid, diagram in config.entries:
        for i, j in enumerate(diagram.partner):
            chord[(fid, i)] = (fid, j)
    loops = 0
    seen = set()
    for start in chord:
        if start in seen:
            continue
        loops += 1
        p = start
        while True:
            seen.add(p)
            q = chord[p]
            seen.add(q)
            p = glue[q]
            if p == start:
                break
    return loops


def is_tight(config):
    loops = loop_count(config)
    return TightVerdict(loops == 1, loops)


# -- signed regions and Euler classes ------------------------------------------------


@dataclass(frozen=True)
class Region:
    sign: int
    valence: int
    arcs: tuple[int, ...]


@dataclass(frozen=True)
class SignedRegions:
    face: str
    regions: tuple

    def positives(self):
        return [r for r in self.regions if r.sign > 0]

    def negatives(self):
        return [r for r in self.regions if r.sign < 0]


def signed_regions(trinity, face, diagram):
    """Complementary regions of the diagram with their signs and valences."""
    chart = charts(trinity)[face]
    if diagram.n != chart.n:
        raise SizeMismatch(f"diagram size {diagram.n} != n_r {chart.n}")
    regions = []
    for arcs in _region_arcs(diagram.partner):
        signs = {chart.arc_signs[a] for a in arcs}
        assert len(signs) == 1, "arcs of one region must share a sign"
        regions.append(Region(signs.pop(), len(arcs), tuple(arcs)))
    return SignedRegions(face, tuple(regions))


def disc_euler(trinity, face, diagram):
    """Euler contribution of one disc: positive minus negative region count."""
    sr = signed_regions(trinity, face, diagram)
    return len(sr.positives()) - len(sr.negatives())


def euler_vector(config):
    return {
        fid: disc_euler(config.trinity, fid, diagram) for fid, diagram in config.entries
    }


# -- tree-hugging configurations -------------------------------------------------------


def tree_hugging(trinity, tree):
    """Configuration hugging a spanning tree of the violet graph.

    On each disc, emerald corners outside the tree are cut off by minimal
    chords; one chord per gap between consecutive in-tree corners then
    bounds the central negative region.
    """
    gv = trinity.violet_graph
    _require_spanning(gv, tree)
    ch = charts(trinity)
    diagrams = {}
    for fid in trinity.red:
        chart = ch[fid]
        m = chart.points
        in_tree = []
        pairs = []
        for arc in range(m):
            corner = chart.emerald_corner[arc]
            if corner is None:
                continue
            if corner in tree.edges:
                in_tree.append(arc)
            else:
                pairs.append((arc, (arc + 1) % m))
        if not in_tree:
            raise NotSpanning(f"tree misses face {fid}")
        for k, arc in enumerate(in_tree):
            nxt = in_tree[(k + 1) % len(in_tree)]
            pairs.append(((arc + 1) % m, nxt))
        pairs = [tuple(sorted(p)) for p in pairs]
        diagrams[fid] = ChordDiagram.from_pairs(chart.n, pairs)
    return Configuration.from_diagrams(trinity, diagrams)


def is_tree_hugging(config):
    """Tree-hugging test with witness reconstruction.

    A tight configuration hugs a tree iff every disc has at most one
    negative region of valence above one; the witness is rebuilt from the
    maximal-valence negative region of each disc and verified by
    reconstructing the configuration it hugs.
    """
    trinity = config.trinity
    if not is_tight(config).tight:
        raise NotTight("configuration is not tight")
    ch = charts(trinity)
    edges = set()
    for fid, diagram in config.entries:
        sr = signed_regions(trinity, fid, diagram)
        negatives = sr.negatives()
        if sum(1 for r in negatives if r.valence > 1) > 1:
            return False, None
        central = max(negatives, key=lambda r: (r.valence, -r.arcs[0]))
        for arc in central.arcs:
            edges.add(ch[fid].emerald_corner[arc])
    tree = SpanningTree(trinity.violet_graph, frozenset(edges), "red")
    _require_spanning(trinity.violet_graph, tree)
    assert tree_hugging(trinity, tree) == config, "witness must hug back to the input"
    return True, tree


def _require_spanning(graph, tree):
    if not tree.edges <= set(graph.edges):
        raise NotSpanning("edges outside the host graph")
    if len(tree.edges) != len(graph.vertices) - 1:
        raise NotSpanning("wrong edge count for a spanning tree")
    comp = {v: v for v in graph.vertices}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for eid in tree.edges:
        u, v = graph.endpoints(eid)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotSpanning("edge set contains a cycle")
        comp[ru] = rv


# -- serialization ---------------------------------------------------------------------


def configuration_from_json(trinity, doc):
    diagrams = {}
    for fid, rec in doc["faces"].items():
        diagrams[fid] = ChordDiagram.from_pairs(
            trinity.n_r[fid], [tuple(p) for p in rec["matching"]]
        )
    return Configuration.from_diagrams(trinity, diagrams)
