"""Bypass moves and the configuration graph over tight configurations.

Two tight configurations are adjacent when they differ on exactly one face
disc; transitions confined to a single disc connect any two tight variants
of that disc, so this edge relation yields the same component partition as
explicit bypass surgery while avoiding attaching-arc bookkeeping. Bypass
moves themselves (re-matching three chords by rotating their six endpoints
one step around the hexagon) are generated for cross-checks and for the
valence-concentration walk.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from multiprocessing import Pool

from . import dividing
from .dividing import ChordDiagram, Configuration, NotTight
from .limits import DEFAULT_CAP, check_cap


class EulerNotConstant(RuntimeError):
    """A component carries two distinct Euler vectors (model bug)."""


class NotTreeHuggingReachable(RuntimeError):
    """A component contains no tree-hugging configuration (model bug)."""


class NotBijective(RuntimeError):
    """Components do not biject onto the hypertrees of (E,R) (model bug)."""


class Stuck(RuntimeError):
    """No valence-increasing neighbour exists (firing falsifies the model)."""


# The three matchings of six points closed under the one-step rotation
# i -> i+1; a triple of chords admits a bypass exactly when its induced
# matching is one of these (the middle chord separates the other two).
_ROTATION_PATTERNS = (
    (5, 4, 3, 2, 1, 0),  # {05, 14, 23}
    (1, 0, 5, 4, 3, 2),  # {01, 25, 34}
    (3, 2, 1, 0, 5, 4),  # {03, 12, 45}
)


def _rotate_pattern(pattern, step):
    out = [0] * 6
    for i in range(6):
        out[(i + step) % 6] = (pattern[i] + step) % 6
    return tuple(out)


@dataclass(frozen=True)
class BypassMove:
    face: str | None
    points: tuple[int, ...]
    direction: int
    source: ChordDiagram = field(compare=False)
    target: ChordDiagram = field(compare=False)


def diagram_moves(diagram):
    """Every bypass move available on one diagram, duplicates included."""
    pairs = diagram.pairs()
    if len(pairs) < 3:
        return []
    moves = []
    for triple in itertools.combinations(pairs, 3):
        points = tuple(sorted(p for pair in triple for p in pair))
        local = {points.index(a): points.index(b) for a, b in triple}
        local.update({b: a for a, b in local.items()})
        induced = tuple(local[i] for i in range(6))
        if induced not in _ROTATION_PATTERNS:
            continue
        for step in (1, -1):
            new_local = _rotate_pattern(induced, step)
            new_pairs = [p for p in pairs if p not in triple]
            for i in range(6):
                j = new_local[i]
                if i < j:
                    new_pairs.append(tuple(sorted((points[i], points[j]))))
            if _crossing_free(new_pairs):
                target = ChordDiagram.from_pairs(diagram.n, new_pairs)
                moves.append(BypassMove(None, points, step, diagram, target))
    return moves


def _crossing_free(pairs):
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def bypass_moves(diagram):
    """Set of diagrams one bypass move away."""
    return {m.target for m in diagram_moves(diagram)}


def config_bypass_moves(config):
    """Bypass moves of a configuration, lifted face by face."""
    out = []
    for fid, diagram in config.entries:
        for move in diagram_moves(diagram):
            lifted = BypassMove(fid, move.points, move.direction, move.source, move.target)
            out.append((config.replace(fid, move.target), lifted))
    return out


# -- the configuration graph ----------------------------------------------------


@dataclass(frozen=True)
class Component:
    id: int
    members: tuple[int, ...]
    euler: dict
    hypertree: dict
    representative: int  # index of a tree-hugging vertex


@dataclass(frozen=True)
class ConfigurationGraph:
    trinity: object = field(compare=False)
    vertices: tuple = ()
    edges: tuple = ()
    component_of: tuple = ()
    components: tuple = ()
    total_configurations: int = 0

    def component_count(self):
        return len(self.components)


def build_configuration_graph(trinity, cap=DEFAULT_CAP, jobs=1):
    """All tight configurations, joined when they differ on one face."""
    faces = tuple(sorted(trinity.red))
    per_face = {
        fid: dividing.enumerate_chord_diagrams(trinity.n_r[fid], cap) for fid in faces
    }
    total = 1
    for fid in faces:
        total *= len(per_face[fid])
    check_cap(total, cap, "configuration enumeration")

    choices = list(itertools.product(*(range(len(per_face[f])) for f in faces)))
    if jobs > 1:
        chunk = (len(choices) + jobs - 1) // jobs
        blocks = [choices[i:i + chunk] for i in range(0, len(choices), chunk)]
        with Pool(jobs) as pool:
            kept = pool.starmap(
                _tight_block, [(trinity, faces, per_face, block) for block in blocks]
            )
        tight_choices = [c for block in kept for c in block]
    else:
        tight_choices = _tight_block(trinity, faces, per_face, choices)

    vertices = tuple(
        Configuration.from_diagrams(
            trinity, {f: per_face[f][k] for f, k in zip(faces, choice)}
        )
        for choice in tight_choices
    )

    # vertices differing in exactly one coordinate: bucket by the rest
    edges = []
    for axis in range(len(faces)):
        buckets = {}
        for idx, choice in enumerate(tight_choices):
            key = choice[:axis] + choice[axis + 1:]
            buckets.setdefault(key, []).append(idx)
        for group in buckets.values():
            edges.extend(itertools.combinations(group, 2))
    edges = tuple(sorted(set(edges)))

    parent = list(range(len(vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    roots = sorted({find(i) for i in range(len(vertices))}, key=lambda r: min(
        i for i in range(len(vertices)) if find(i) == r
    ))
    component_of = tuple(roots.index(find(i)) for i in range(len(vertices)))
    components = _label_components(trinity, vertices, component_of, len(roots))
    return ConfigurationGraph(
        trinity, vertices, edges, component_of, components, total
    )


def _tight_block(trinity, faces, per_face, choices):
    kept = []
    for choice in choices:
        config = Configuration.from_diagrams(
            trinity, {f: per_face[f][k] for f, k in zip(faces, choice)}
        )
        if dividing.is_tight(config).tight:
            kept.append(choice)
    return kept


def _label_components(trinity, vertices, component_of, count):
    members = [[] for _ in range(count)]
    for idx, c in enumerate(component_of):
        members[c].append(idx)
    components = []
    for cid in range(count):
        eulers = [dividing.euler_vector(vertices[i]) for i in members[cid]]
        if any(e != eulers[0] for e in eulers[1:]):
            raise EulerNotConstant(f"component {cid} mixes Euler vectors")
        euler = eulers[0]
        hypertree = {}
        for fid, e in euler.items():
            f2 = e + trinity.n_r[fid] - 1
            if f2 % 2:
                raise EulerNotConstant(f"odd Euler offset on face {fid}")
            hypertree[fid] = f2 // 2
        rep = None
        for i in members[cid]:
            hugging, _tree = dividing.is_tree_hugging(vertices[i])
            if hugging:
                rep = i
                break
        if rep is None:
            raise NotTreeHuggingReachable(f"component {cid} has no tree-hugging vertex")
        components.append(
            Component(cid, tuple(members[cid]), euler, hypertree, rep)
        )
    return tuple(components)


# -- classification ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    graph: ConfigurationGraph
    bijection_ok: bool

    def to_json(self):
        return {
            "components": [
                {
                    "id": c.id,
                    "size": len(c.members),
                    "euler": dict(sorted(c.euler.items())),
                    "hypertree": dict(sorted(c.hypertree.items())),
                    "tree_hugging_rep": self.graph.vertices[c.representative].to_json(),
                }
                for c in self.graph.components
            ],
            "bijection_ok": self.bijection_ok,
        }


def classify_components(config_graph, cap=DEFAULT_CAP):
    """Check that components biject onto the hypertrees of (E,R)."""
    from . import hypertrees as ht

    trinity = config_graph.trinity
    hg = ht.trinity_hypergraph(trinity, "emerald", "red")
    expected = {h.vector for h in ht.enumerate_hypertrees(hg, cap)}
    got = [tuple(sorted(c.hypertree.items())) for c in config_graph.components]
    ok = len(got) == len(set(got)) and set(got) == expected
    if not ok:
        raise NotBijective(
            f"components {sorted(set(got))} vs hypertrees {sorted(expected)}"
        )
    return ClassificationReport(config_graph, True)


# -- valence concentration -----------------------------------------------------------


def _max_negative_valence(trinity, face, diagram):
    sr = dividing.signed_regions(trinity, face, diagram)
    return max(r.valence for r in sr.negatives())


def _excess_count(trinity, face, diagram):
    sr = dividing.signed_regions(trinity, face, diagram)
    return sum(1 for r in sr.negatives() if r.valence > 1)


def valence_concentration_path(config, cap=DEFAULT_CAP):
    """Walk to a tree-hugging configuration through tight neighbours.

    Face by face, while a disc has two negative regions of valence above
    one, replace its diagram with a tight alternative of strictly larger
    maximum negative valence. Valence sums bound the walk, so it stops.
    """
    trinity = config.trinity
    if not dividing.is_tight(config).tight:
        raise NotTight("valence concentration starts from a tight configuration")
    path = [config]
    current = config
    for fid in sorted(trinity.red):
        while _excess_count(trinity, fid, current.diagram(fid)) > 1:
            best = None
            top = _max_negative_valence(trinity, fid, current.diagram(fid))
            for alt in dividing.enumerate_chord_diagrams(trinity.n_r[fid], cap):
                if alt == current.diagram(fid):
                    continue
                if _max_negative_valence(trinity, fid, alt) <= top:
                    continue
                candidate = current.replace(fid, alt)
                if dividing.is_tight(candidate).tight:
                    best = candidate
                    break
            if best is None:
                raise Stuck(f"no valence-increasing tight move on face {fid}")
            current = best
            path.append(current)
    hugging, _ = dividing.is_tree_hugging(current)
    assert hugging, "concentration must end tree-hugging"
    return path
