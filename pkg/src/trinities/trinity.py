"""Trinities of plane bipartite graphs.

Placing a red vertex in every face of a connected plane bipartite graph
(violet/emerald classes) and joining it to all corners of the face yields a
triangulation of the sphere whose vertices are properly 3-coloured. The
triangles are 2-shaded: a triangle is *black* when its violet, emerald and
red corners appear counterclockwise, *white* otherwise; equivalently, the
triangle of a boundary dart is black exactly when the dart leaves a violet
vertex. The two shades alternate around every vertex.

From the trinity we expose the three colour graphs (the violet graph on
emerald+red vertices, the emerald graph on red+violet vertices, and the red
graph, which is the input itself) and their planar duals directed from
black to white triangles, which are balanced.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .plane_graph import Edge, RotationGraph, Vertex, ensure_bicoloured

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class Triangle:
    """Corner incidence of a face: one triangle per boundary dart."""

    face: str
    index: int
    dart: str
    shade: str
    violet: str
    emerald: str


@dataclass(frozen=True)
class Arc:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class DirectedDual:
    """Planar dual of one colour graph, arcs directed black-to-white."""

    colour: str
    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...]

    def out_degree(self, v):
        return sum(1 for a in self.arcs if a.tail == v)

    def in_degree(self, v):
        return sum(1 for a in self.arcs if a.head == v)

    def is_balanced(self):
        return all(self.out_degree(v) == self.in_degree(v) for v in self.vertices)

    def in_arcs(self, v):
        return [a for a in self.arcs if a.head == v]


class Trinity:
    """Trinity generated by a connected plane bipartite graph.

    Red vertex ids are the face ids of the input graph, so hypertree
    vectors, Euler class vectors and census entries all share one index.
    """

    def __init__(self, graph: RotationGraph):
        graph = ensure_bicoloured(graph)
        self.graph = graph
        self.violet = graph.colour_classes.get("violet", ())
        self.emerald = graph.colour_classes.get("emerald", ())
        self.red = tuple(sorted(graph.faces))
        self.n = len(graph.edges)
        self.n_r = {
            fid: len(face.boundary) // 2 for fid, face in graph.faces.items()
        }
        self.triangles = self._build_triangles()

    def _build_triangles(self):
        g = self.graph
        triangles = []
        for fid in self.red:
            boundary = g.faces[fid].boundary
            for i, d in enumerate(boundary):
                o, t = g.origin(d), g.target(d)
                if g.colour_of(o) == "violet":
                    shade, violet, emerald = BLACK, o, t
                else:
                    shade, violet, emerald = WHITE, t, o
                triangles.append(Triangle(fid, i, d, shade, violet, emerald))
        return tuple(triangles)

    # -- corners -----------------------------------------------------------

    def corner_id(self, face, index):
        return f"{face}@{index}"

    def corners(self, corner_colour):
        """Corner incidences (face, index, vertex) at vertices of one colour."""
        g = self.graph
        out = []
        for fid in self.red:
            boundary = g.faces[fid].boundary
            for i, d in enumerate(boundary):
                w = g.target(d)
                if g.colour_of(w) == corner_colour:
                    out.append((fid, i, w))
        return out

    # -- colour graphs -------------------------------------------------------

    @cached_property
    def violet_graph(self):
        """Bipartite plane graph on emerald and red vertices (one edge per emerald corner)."""
        return self._corner_graph("emerald")

    @cached_property
    def emerald_graph(self):
        """Bipartite plane graph on red and violet vertices (one edge per violet corner)."""
        return self._corner_graph("violet")

    @cached_property
    def red_graph(self):
        return self.graph

    def _corner_graph(self, corner_colour):
        g = self.graph
        corners = self.corners(corner_colour)
        red_rotations = {fid: [] for fid in self.red}
        # keyed by the boundary dart leaving the corner vertex
        corner_by_out_dart = {}
        for fid, i, w in corners:
            cid = self.corner_id(fid, i)
            red_rotations[fid].append(f"{cid}:r")
            boundary = g.faces[fid].boundary
            out_dart = boundary[(i + 1) % len(boundary)]
            corner_by_out_dart[out_dart] = cid

        vertices = [
            Vertex(fid, "red", tuple(red_rotations[fid])) for fid in self.red
        ]
        for w in g.colour_classes[corner_colour]:
            rotation = tuple(
                f"{corner_by_out_dart[d]}:c" for d in g.vertices[w].rotation
            )
            vertices.append(Vertex(w, corner_colour, rotation))
        edges = [
            Edge(self.corner_id(fid, i), (f"{self.corner_id(fid, i)}:r", f"{self.corner_id(fid, i)}:c"))
            for fid, i, _ in corners
        ]
        return RotationGraph(vertices, edges)

    # -- directed duals ------------------------------------------------------

    def directed_dual(self, colour):
        g = self.graph
        if colour == "red":
            arcs = []
            for eid in sorted(g.edges):
                a, b = g.edges[eid].darts
                if g.colour_of(g.origin(a)) != "violet":
                    a, b = b, a
                arcs.append(Arc(eid, g.face_of(a), g.face_of(b)))
            return DirectedDual("red", self.red, tuple(arcs))
        if colour == "violet":
            corner_colour, mine = "emerald", "violet"
        elif colour == "emerald":
            corner_colour, mine = "violet", "emerald"
        else:
            raise ValueError(f"unknown colour {colour!r}")
        arcs = []
        for fid, i, _w in self.corners(corner_colour):
            boundary = g.faces[fid].boundary
            d_in = boundary[i]
            d_out = boundary[(i + 1) % len(boundary)]
            # flanking triangles: the one of d_in is black iff its origin is
            # violet, and the two shades always differ across the corner edge
            if mine == "violet":
                tail, head = g.origin(d_in), g.target(d_out)
            else:
                tail, head = g.target(d_out), g.origin(d_in)
            arcs.append(Arc(self.corner_id(fid, i), tail, head))
        vertices = g.colour_classes[mine]
        return DirectedDual(colour, vertices, tuple(arcs))

    # -- census ---------------------------------------------------------------

    def census(self):
        euler_ok = (
            len(self.violet) + len(self.emerald) + len(self.red) == self.n + 2
            and sum(self.n_r.values()) == self.n
        )
        return {
            "V": len(self.violet),
            "E": len(self.emerald),
            "R": len(self.red),
            "n": self.n,
            "n_r": dict(sorted(self.n_r.items())),
            "euler_ok": euler_ok,
        }


def build_trinity(graph):
    """Construct the trinity of a validated plane bipartite graph."""
    return Trinity(graph)


def colour_graph(trinity, colour):
    if colour == "violet":
        return trinity.violet_graph
    if colour == "emerald":
        return trinity.emerald_graph
    if colour == "red":
        return trinity.red_graph
    raise ValueError(f"unknown colour {colour!r}")


def directed_dual(trinity, colour):
    return trinity.directed_dual(colour)


def trinity_census(trinity):
    return trinity.census()
