"""Hypergraphs of a trinity and their hypertrees.

A trinity carries six hypergraphs: for each unordered pair of colour
classes, either class may serve as the hyperedge set, with the matching
colour graph as incidence structure. A hypertree is a non-negative vector
indexed by hyperedges that occurs as (degree - 1) of some spanning tree at
the hyperedge nodes. Hypertree sets are produced by exhaustive realization
over spanning trees rather than by polytope inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .limits import DEFAULT_CAP
from .trees import enumerate_spanning_trees


class WrongClass(ValueError):
    """The tree does not span a graph with the requested hyperedge class."""


class IndexMismatch(ValueError):
    """The two hypertree sets are not indexed by the same hyperedges."""


HYPERGRAPH_LABELS = ("VE", "EV", "ER", "RE", "VR", "RV")

_COLOUR_OF_LETTER = {"V": "violet", "E": "emerald", "R": "red"}


@dataclass(frozen=True)
class Hypergraph:
    label: str
    vertex_colour: str
    hyperedge_colour: str
    bip: object = field(compare=False)
    hyperedges: tuple = ()

    def hyperedge_ids(self):
        return tuple(h for h, _ in self.hyperedges)

    def members(self, hyperedge):
        return dict(self.hyperedges)[hyperedge]


def trinity_hypergraph(trinity, vertex_colour, hyperedge_colour):
    """One of the six hypergraphs of a trinity."""
    pair = {vertex_colour, hyperedge_colour}
    if pair == {"violet", "emerald"}:
        bip = trinity.red_graph
    elif pair == {"emerald", "red"}:
        bip = trinity.violet_graph
    elif pair == {"violet", "red"}:
        bip = trinity.emerald_graph
    else:
        raise ValueError(f"bad colour pair {vertex_colour!r}/{hyperedge_colour!r}")
    hyperedges = []
    for h in bip.colour_classes[hyperedge_colour]:
        members = frozenset(
            bip.target(d) for d in bip.vertices[h].rotation
        )
        hyperedges.append((h, members))
    label = _label_for(vertex_colour, hyperedge_colour)
    return Hypergraph(label, vertex_colour, hyperedge_colour, bip, tuple(hyperedges))


def trinity_hypergraph_by_label(trinity, label):
    v, h = label
    return trinity_hypergraph(trinity, _COLOUR_OF_LETTER[v], _COLOUR_OF_LETTER[h])


def _label_for(vertex_colour, hyperedge_colour):
    inv = {v: k for k, v in _COLOUR_OF_LETTER.items()}
    return inv[vertex_colour] + inv[hyperedge_colour]


@dataclass(frozen=True)
class Hypertree:
    """Degree record of a realizing spanning tree, minus one per hyperedge."""

    vector: tuple
    witness: object = field(compare=False, default=None)

    def as_dict(self):
        return dict(self.vector)

    def value(self, hyperedge):
        return dict(self.vector)[hyperedge]


def hypertree_of(tree, hyperedge_colour):
    """Hypertree realized by a spanning tree: f(e) = deg(e) - 1 at hyperedge nodes."""
    if hyperedge_colour not in tree.graph.colour_classes:
        raise WrongClass(f"host graph has no {hyperedge_colour!r} class")
    degrees = tree.degrees(hyperedge_colour)
    vector = tuple(sorted((v, d - 1) for v, d in degrees.items()))
    return Hypertree(vector, tree)


def enumerate_hypertrees(hypergraph, cap=DEFAULT_CAP):
    """Deduplicated hypertree set with one witness tree per vector.

    Witnesses keep the first realizing tree in canonical enumeration order.
    """
    found = {}
    for tree in enumerate_spanning_trees(
        hypergraph.bip, record_colour=hypergraph.hyperedge_colour, cap=cap
    ):
        ht = hypertree_of(tree, hypergraph.hyperedge_colour)
        if ht.vector not in found:
            found[ht.vector] = ht
    return tuple(found[v] for v in sorted(found))


def translate_offset(set_a, set_b):
    """Constant vector c with A = c - B, or None when no such translate exists."""
    vecs_a = [dict(h.vector) if isinstance(h, Hypertree) else dict(h) for h in set_a]
    vecs_b = [dict(h.vector) if isinstance(h, Hypertree) else dict(h) for h in set_b]
    if not vecs_a or not vecs_b:
        raise IndexMismatch("empty hypertree set")
    keys = set(vecs_a[0])
    if any(set(v) != keys for v in vecs_a + vecs_b):
        raise IndexMismatch("hypertree sets indexed by different hyperedges")
    if len(vecs_a) != len(vecs_b):
        return None
    m = len(vecs_a)
    offset = {}
    for k in keys:
        total = sum(v[k] for v in vecs_a) + sum(v[k] for v in vecs_b)
        if total % m != 0:
            return None
        offset[k] = total // m
    image = {tuple(sorted((k, offset[k] - v[k]) for k in keys)) for v in vecs_b}
    mine = {tuple(sorted(v.items())) for v in vecs_a}
    return offset if image == mine else None
