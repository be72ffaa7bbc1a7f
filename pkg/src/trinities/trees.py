"""Spanning trees, arborescences and the magic number.

All counting is exact: determinants are computed by fraction-free Bareiss
elimination over Python integers, and every determinant count is
cross-checkable against brute-force enumeration. No floating point is used
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .limits import DEFAULT_CAP, CapExceeded, check_cap


class UnknownRoot(ValueError):
    """The requested root is not a vertex of the directed dual."""


class SameHypertreeRequired(ValueError):
    """Exchange paths are only defined between trees with equal degree records."""


class NoPath(RuntimeError):
    """No exchange path found; firing falsifies the fixed-degree connectivity."""


# -- exact determinants -------------------------------------------------------


def bareiss_determinant(rows):
    """Exact integer determinant by fraction-free Bareiss elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def spanning_tree_count(graph):
    """Kirchhoff count of spanning trees (loops ignored, parallels kept)."""
    verts = sorted(graph.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    lap = [[0] * n for _ in range(n)]
    for eid in graph.edges:
        u, v = graph.endpoints(eid)
        if u == v:
            continue
        i, j = index[u], index[v]
        lap[i][j] -= 1
        lap[j][i] -= 1
        lap[i][i] += 1
        lap[j][j] += 1
    minor = [row[:-1] for row in lap[:-1]]
    return bareiss_determinant(minor)


# -- spanning trees ------------------------------------------------------------


@dataclass(frozen=True)
class SpanningTree:
    """Edge subset spanning the host graph, with an optional degree-record class."""

    graph: object = field(compare=False)
    edges: frozenset
    record_colour: str | None = field(default=None, compare=False)

    def degrees(self, colour=None):
        colour = colour if colour is not None else self.record_colour
        degs = {
            v: 0
            for v in self.graph.vertices
            if colour is None or self.graph.colour_of(v) == colour
        }
        for eid in self.edges:
            for v in self.graph.endpoints(eid):
                if v in degs:
                    degs[v] += 1
        return degs

    def record(self):
        return tuple(sorted(self.degrees().items()))


def enumerate_spanning_trees(graph, record_colour=None, cap=DEFAULT_CAP):
    """Yield every spanning tree exactly once, in a deterministic order.

    Contraction/deletion over edges in id order: the branch including the
    smallest live edge is explored first. The Kirchhoff count is taken
    up front and checked against the cap before any tree is produced.
    """
    check_cap(spanning_tree_count(graph), cap, "spanning tree enumeration")
    verts = sorted(graph.vertices)
    edge_ids = sorted(e for e in graph.edges if not graph.is_loop(e))
    target = len(verts) - 1

    def find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def connected(parent, remaining):
        # can the contracted classes still be joined by the remaining edges?
        p = dict(parent)
        classes = {find(p, v) for v in verts}
        count = len(classes)
        for eid in remaining:
            u, v = graph.endpoints(eid)
            ru, rv = find(p, u), find(p, v)
            if ru != rv:
                p[ru] = rv
                count -= 1
                if count == 1:
                    return True
        return count == 1

    def rec(parent, chosen, pool):
        if len(chosen) == target:
            yield SpanningTree(graph, frozenset(chosen), record_colour)
            return
        for k, eid in enumerate(pool):
            u, v = graph.endpoints(eid)
            ru, rv = find(parent, u), find(parent, v)
            rest = pool[k + 1:]
            if ru == rv:
                continue  # contracted loop, never in a tree
            # include eid
            p2 = dict(parent)
            p2[ru] = rv
            yield from rec(p2, chosen + [eid], rest)
            # exclude eid, viable only if the rest still connects
            if connected(parent, rest):
                yield from rec(parent, chosen, rest)
            return

    yield from rec({v: v for v in verts}, [], edge_ids)


# -- arborescences -------------------------------------------------------------


@dataclass(frozen=True)
class Arborescence:
    dual: object = field(compare=False)
    root: str = field(compare=False)
    arcs: frozenset = field(default_factory=frozenset)


def count_arborescences(dual, root):
    """Number of spanning arborescences directed away from the root.

    Matrix-tree count: determinant of the in-degree Laplacian with the
    root's row and column removed. Exact integer arithmetic throughout.
    """
    if root not in dual.vertices:
        raise UnknownRoot(f"{root!r} is not a vertex of the {dual.colour} dual")
    verts = sorted(dual.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    lap = [[0] * n for _ in range(n)]
    for arc in dual.arcs:
        lap[index[arc.head]][index[arc.head]] += 1
        lap[index[arc.tail]][index[arc.head]] -= 1
    r = index[root]
    minor = [
        [lap[i][j] for j in range(n) if j != r]
        for i in range(n)
        if i != r
    ]
    return bareiss_determinant(minor)


def enumerate_arborescences(dual, root, cap=DEFAULT_CAP):
    """All arborescences away from the root, duplicate-free, deterministic order."""
    count = count_arborescences(dual, root)
    check_cap(count, cap, "arborescence enumeration")
    others = [v for v in sorted(dual.vertices) if v != root]
    in_arcs = {
        v: sorted((a for a in dual.arcs if a.head == v and a.tail != v), key=lambda a: a.id)
        for v in others
    }
    result = []
    parent = {}

    def creates_cycle(v, tail):
        u = tail
        while u in parent:
            u = parent[u]
            if u == v:
                return True
        return False

    def rec(k, chosen):
        if k == len(others):
            result.append(Arborescence(dual, root, frozenset(chosen)))
            return
        v = others[k]
        for arc in in_arcs[v]:
            if creates_cycle(v, arc.tail):
                continue
            parent[v] = arc.tail
            rec(k + 1, chosen + [arc.id])
            del parent[v]

    rec(0, [])
    assert len(result) == count
    return result


# -- the magic number -----------------------------------------------------------


@dataclass(frozen=True)
class MagicReport:
    det: dict
    enum: dict
    hypertrees: dict
    agree: bool

    @property
    def value(self):
        return self.det["violet"]

    def to_json(self):
        return {
            "det": {c: str(v) for c, v in sorted(self.det.items())},
            "enum": {
                c: (str(v) if v is not None else None) for c, v in sorted(self.enum.items())
            },
            "hypertrees": {
                k: (str(v) if v is not None else None)
                for k, v in sorted(self.hypertrees.items())
            },
            "agree": self.agree,
        }


def magic_number(trinity, cap=DEFAULT_CAP):
    """Count arborescences of all three duals and hypertrees of all six
    hypergraphs; the verdict passes iff every populated count agrees."""
    from . import hypertrees as ht

    det = {}
    enum = {}
    for colour in ("violet", "emerald", "red"):
        dual = trinity.directed_dual(colour)
        root = min(dual.vertices)
        det[colour] = count_arborescences(dual, root)
        if cap is None or det[colour] <= cap:
            enum[colour] = len(enumerate_arborescences(dual, root, cap))
        else:
            enum[colour] = None

    hyper = {}
    for label in ht.HYPERGRAPH_LABELS:
        hg = ht.trinity_hypergraph_by_label(trinity, label)
        try:
            hyper[label] = len(ht.enumerate_hypertrees(hg, cap))
        except CapExceeded:
            hyper[label] = None

    populated = list(det.values())
    populated += [v for v in enum.values() if v is not None]
    populated += [v for v in hyper.values() if v is not None]
    agree = len(set(populated)) == 1
    return MagicReport(det, enum, hyper, agree)


# -- fixed-degree exchange paths --------------------------------------------------


def tree_exchange_path(graph, tree_a, tree_b, cap=DEFAULT_CAP):
    """Breadth-first path between spanning trees with one edge swapped per
    step, every intermediate tree keeping the same degree record.

    The returned sequence includes both endpoints; equal trees yield a
    single-element path. No claim of minimality beyond BFS shortness.
    """
    for tree in (tree_a, tree_b):
        if tree.graph is not graph and tree.graph.edges.keys() != graph.edges.keys():
            raise ValueError("trees must span the given graph")
    if tree_a.record_colour != tree_b.record_colour or tree_a.record() != tree_b.record():
        raise SameHypertreeRequired(
            f"degree records differ: {tree_a.record()} vs {tree_b.record()}"
        )
    colour = tree_a.record_colour

    def record_key(eid):
        # the endpoint(s) of the edge inside the record class
        return tuple(
            sorted(v for v in graph.endpoints(eid) if colour is None or graph.colour_of(v) == colour)
        )

    def neighbours(edges):
        out = []
        for removed in sorted(edges):
            comp = _components(graph, edges - {removed})
            for added in sorted(graph.edges):
                if added in edges or graph.is_loop(added):
                    continue
                if record_key(added) != record_key(removed):
                    continue
                u, v = graph.endpoints(added)
                if comp[u] != comp[v]:
                    out.append(edges - {removed} | {added})
        return out

    start, goal = tree_a.edges, tree_b.edges
    if start == goal:
        return [tree_a]
    seen = {start: None}
    frontier = [start]
    while frontier:
        check_cap(len(seen), cap, "exchange path search")
        nxt = []
        for cur in frontier:
            for nb in neighbours(cur):
                if nb in seen:
                    continue
                seen[nb] = cur
                if nb == goal:
                    path = [nb]
                    while seen[path[-1]] is not None:
                        path.append(seen[path[-1]])
                    path.reverse()
                    return [SpanningTree(graph, e, colour) for e in path]
                nxt.append(nb)
        frontier = nxt
    raise NoPath("fixed-degree exchange graph is disconnected")


def _components(graph, edges):
    comp = {v: v for v in graph.vertices}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for eid in edges:
        u, v = graph.endpoints(eid)
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
    return {v: find(v) for v in graph.vertices}
