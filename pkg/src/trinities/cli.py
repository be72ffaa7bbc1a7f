"""Command-line orchestration and the built-in graph corpus.

Reports are JSON on stdout (byte-stable for fixed inputs: deterministic
orderings, sorted keys, no timestamps); a human summary goes to stderr.
Exit status: 0 pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import dividing, fkt, hypertrees, plane_graph, transitions, trees, trinity
from .limits import DEFAULT_CAP, CapExceeded


class UnknownFamily(ValueError):
    """Corpus family tag not recognised."""


GEN_FAMILIES = ("path", "even_cycle", "theta", "grid", "ladder")
MAX_GEN_SIZE = 64


# -- corpus generators -------------------------------------------------------------


def generate_corpus(family, size):
    """Deterministic corpus instances with valid embeddings and colourings."""
    if family not in GEN_FAMILIES:
        raise UnknownFamily(f"unknown family {family!r}; choose from {GEN_FAMILIES}")
    if not 1 <= size <= MAX_GEN_SIZE:
        raise CapExceeded("corpus size", size, MAX_GEN_SIZE)
    if family == "path":
        return [_path_document(size)]
    if family == "even_cycle":
        return [_cycle_document(size)]
    if family == "theta":
        return [_theta_document(size)]
    if family == "grid":
        return [_grid_document(size, size)]
    return [_grid_document(size, 1)]  # ladder


def _colour(i):
    return "violet" if i % 2 == 0 else "emerald"


def _path_document(k):
    vertices = []
    for i in range(k + 1):
        rotation = []
        if i > 0:
            rotation.append(f"p{i - 1}.1")
        if i < k:
            rotation.append(f"p{i}.0")
        vertices.append({"id": f"v{i}", "colour": _colour(i), "rotation": rotation})
    edges = [{"id": f"p{i}", "darts": [f"p{i}.0", f"p{i}.1"]} for i in range(k)]
    return {"vertices": vertices, "edges": edges}


def _cycle_document(k):
    m = 2 * k
    vertices = []
    for i in range(m):
        prev = (i - 1) % m
        vertices.append(
            {"id": f"c{i}", "colour": _colour(i), "rotation": [f"e{prev}.1", f"e{i}.0"]}
        )
    edges = [{"id": f"e{i}", "darts": [f"e{i}.0", f"e{i}.1"]} for i in range(m)]
    return {"vertices": vertices, "edges": edges}


def _theta_document(m):
    """Two hubs joined by m once-subdivided strands (even theta graph)."""
    vertices = [
        # strand 0 on top; counterclockwise at the left hub is bottom-to-top
        {"id": "h0", "colour": "violet", "rotation": [f"a{i}.0" for i in reversed(range(m))]},
        {"id": "h1", "colour": "violet", "rotation": [f"b{i}.1" for i in range(m)]},
    ]
    for i in range(m):
        vertices.append(
            {"id": f"s{i}", "colour": "emerald", "rotation": [f"a{i}.1", f"b{i}.0"]}
        )
    edges = []
    for i in range(m):
        edges.append({"id": f"a{i}", "darts": [f"a{i}.0", f"a{i}.1"]})
        edges.append({"id": f"b{i}", "darts": [f"b{i}.0", f"b{i}.1"]})
    return {"vertices": vertices, "edges": edges}


def _grid_document(kx, ky):
    def h(x, y):
        return f"h{x}_{y}"

    def v(x, y):
        return f"v{x}_{y}"

    vertices = []
    edges = []
    for x in range(kx + 1):
        for y in range(ky + 1):
            rotation = []
            if x < kx:
                rotation.append(h(x, y) + ".0")  # east
            if y < ky:
                rotation.append(v(x, y) + ".0")  # north
            if x > 0:
                rotation.append(h(x - 1, y) + ".1")  # west
            if y > 0:
                rotation.append(v(x, y - 1) + ".1")  # south
            vertices.append(
                {"id": f"g{x}_{y}", "colour": _colour(x + y), "rotation": rotation}
            )
    for x in range(kx + 1):
        for y in range(ky + 1):
            if x < kx:
                edges.append({"id": h(x, y), "darts": [h(x, y) + ".0", h(x, y) + ".1"]})
            if y < ky:
                edges.append({"id": v(x, y), "darts": [v(x, y) + ".0", v(x, y) + ".1"]})
    return {"vertices": vertices, "edges": edges}


# -- verification suite ----------------------------------------------------------------


@dataclass
class VerificationSuite:
    instance: str
    stages: dict
    seconds: dict

    @property
    def ok(self):
        return all(s.get("ok", False) for s in self.stages.values())

    def to_json(self):
        # timings are reported on stderr only, keeping this byte-stable
        return {"instance": self.instance, "stages": self.stages, "pass": self.ok}


def run_verification(graph, instance="graph", cap=DEFAULT_CAP, jobs=1):
    suite = VerificationSuite(instance, {}, {})

    def stage(name, fn):
        t0 = time.perf_counter()
        suite.stages[name] = fn()
        suite.seconds[name] = time.perf_counter() - t0

    trin = trinity.build_trinity(graph)

    def census_stage():
        census = trin.census()
        return {**census, "ok": census["euler_ok"]}

    def magic_stage():
        report = trees.magic_number(trin, cap)
        return {**report.to_json(), "ok": report.agree}

    def hypertree_stage():
        counts = {}
        for label in hypertrees.HYPERGRAPH_LABELS:
            hg = hypertrees.trinity_hypergraph_by_label(trin, label)
            counts[label] = len(hypertrees.enumerate_hypertrees(hg, cap))
        ok = len(set(counts.values())) == 1
        pairs_ok = True
        for a, b in (("VE", "RE"), ("ER", "VR"), ("RV", "EV")):
            ha = hypertrees.enumerate_hypertrees(
                hypertrees.trinity_hypergraph_by_label(trin, a), cap
            )
            hb = hypertrees.enumerate_hypertrees(
                hypertrees.trinity_hypergraph_by_label(trin, b), cap
            )
            if hypertrees.translate_offset(ha, hb) is None:
                pairs_ok = False
        return {
            "counts": {k: str(v) for k, v in sorted(counts.items())},
            "planar_dual_translates": pairs_ok,
            "ok": ok and pairs_ok,
        }

    def classify_stage():
        graph_c = transitions.build_configuration_graph(trin, cap, jobs)
        report = transitions.classify_components(graph_c, cap)
        magic = trees.magic_number(trin, cap)
        euler_ok = all(
            sum(c.euler.values()) == len(trin.emerald) - len(trin.violet)
            for c in graph_c.components
        )
        counts_ok = graph_c.component_count() == magic.value
        return {
            "total_configurations": str(graph_c.total_configurations),
            "tight_configurations": str(len(graph_c.vertices)),
            "components": str(graph_c.component_count()),
            "bijection_ok": report.bijection_ok,
            "euler_sum_ok": euler_ok,
            "matches_magic": counts_ok,
            "ok": report.bijection_ok and euler_ok and counts_ok,
        }

    stage("census", census_stage)
    stage("magic", magic_stage)
    stage("hypertrees", hypertree_stage)
    stage("classification", classify_stage)
    return suite


# -- command implementations ---------------------------------------------------------------


def _load_graph(args):
    if not args.graph:
        raise plane_graph.SchemaError("this command needs --graph FILE")
    with open(args.graph) as fh:
        graph = plane_graph.parse_graph(fh.read())
    report = plane_graph.validate_bipartite_plane(graph)
    if not report.ok:
        raise plane_graph.SchemaError("; ".join(report.failures))
    return plane_graph.ensure_bicoloured(graph)


def _load_universe(args):
    if not args.universe:
        raise plane_graph.SchemaError("this command needs --universe FILE")
    with open(args.universe) as fh:
        return fkt.parse_universe(json.loads(fh.read()))


def _emit(args, payload, summary_lines, ok=True):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        for line in summary_lines:
            print(line, file=sys.stderr)
    else:
        for line in summary_lines:
            print(line)
    return 0 if ok else 1


def _cmd_census(args):
    trin = trinity.build_trinity(_load_graph(args))
    census = trin.census()
    lines = [
        f"census: |V|={census['V']} |E|={census['E']} |R|={census['R']} n={census['n']}",
        f"euler identity: {'pass' if census['euler_ok'] else 'FAIL'}",
    ]
    return _emit(args, census, lines, census["euler_ok"])


def _cmd_magic(args):
    trin = trinity.build_trinity(_load_graph(args))
    report = trees.magic_number(trin, args.cap)
    lines = [
        f"magic number: {report.value}",
        f"all counts agree: {'pass' if report.agree else 'FAIL'}",
    ]
    return _emit(args, report.to_json(), lines, report.agree)


def _cmd_hypertrees(args):
    trin = trinity.build_trinity(_load_graph(args))
    payload = []
    lines = []
    for label in hypertrees.HYPERGRAPH_LABELS:
        hg = hypertrees.trinity_hypergraph_by_label(trin, label)
        hts = hypertrees.enumerate_hypertrees(hg, args.cap)
        order = hg.hyperedge_ids()
        payload.append(
            {
                "hypergraph": label,
                "hyperedges": list(order),
                "vectors": [[dict(h.vector)[e] for e in order] for h in hts],
                "count": len(hts),
            }
        )
        lines.append(f"hypertrees {label}: {len(hts)}")
    return _emit(args, payload, lines)


def _cmd_configs(args):
    trin = trinity.build_trinity(_load_graph(args))
    graph_c = transitions.build_configuration_graph(trin, args.cap, args.jobs)
    payload = {
        "total": str(graph_c.total_configurations),
        "tight": str(len(graph_c.vertices)),
        "configurations": [v.to_json() for v in graph_c.vertices],
    }
    lines = [f"configurations: {graph_c.total_configurations} total, {len(graph_c.vertices)} tight"]
    return _emit(args, payload, lines)


def _cmd_classify(args):
    trin = trinity.build_trinity(_load_graph(args))
    graph_c = transitions.build_configuration_graph(trin, args.cap, args.jobs)
    report = transitions.classify_components(graph_c, args.cap)
    lines = [
        f"components: {graph_c.component_count()}",
        f"hypertree bijection: {'pass' if report.bijection_ok else 'FAIL'}",
    ]
    return _emit(args, report.to_json(), lines, report.bijection_ok)


def _cmd_verify(args):
    graph = _load_graph(args)
    suite = run_verification(graph, args.graph, args.cap, args.jobs)
    lines = [
        f"{name}: {'pass' if stage.get('ok') else 'FAIL'}"
        + f"  ({suite.seconds[name]:.3f}s)"
        for name, stage in suite.stages.items()
    ]
    lines.append(f"verdict: {'pass' if suite.ok else 'FAIL'}")
    if args.format == "json":
        print(json.dumps(suite.to_json(), sort_keys=True, indent=2))
        for line in lines:
            print(line, file=sys.stderr)
    else:
        for line in lines:
            print(line)
    return 0 if suite.ok else 1


def _cmd_states(args):
    universe = _load_universe(args)
    states = fkt.enumerate_states(universe, args.cap)
    payload = {"count": str(len(states)), "states": [s.to_json() for s in states]}
    return _emit(args, payload, [f"states: {len(states)}"])


def _cmd_clock(args):
    universe = _load_universe(args)
    clock = fkt.clock_graph(universe, args.cap)
    lines = [
        f"clock graph: {clock.report['states']} states, {clock.report['arcs']} arcs",
        f"structure checks: {'pass' if clock.report['ok'] else 'FAIL'}",
    ]
    return _emit(args, clock.report, lines, clock.report["ok"])


def _cmd_dual(args):
    if args.universe:
        universe = _load_universe(args)
        dual = fkt.universe_dual_graph(universe)
    else:
        dual = plane_graph.planar_dual(_load_graph(args))
    payload = plane_graph.to_document(dual)
    lines = [f"dual: {len(dual.vertices)} vertices, {len(dual.edges)} edges"]
    return _emit(args, payload, lines)


def _cmd_correspond(args):
    universe = _load_universe(args)
    report = fkt.states_vs_configurations(universe, args.cap)
    payload = report.to_json()
    lines = [
        f"states: {report.states}, tight configurations: {report.tight}, magic: {report.magic}",
        f"bijection: {'pass' if payload['ok'] else 'FAIL'}",
    ]
    return _emit(args, payload, lines, payload["ok"])


def _cmd_gen(args):
    documents = generate_corpus(args.family, args.size)
    written = []
    for doc in documents:
        graph = plane_graph.parse_graph(doc)
        report = plane_graph.validate_bipartite_plane(graph)
        if not report.ok:
            raise plane_graph.SchemaError(
                f"generator self-check failed: {'; '.join(report.failures)}"
            )
        name = f"{args.family}_{args.size}.json"
        if args.out:
            import os

            os.makedirs(args.out, exist_ok=True)
            path = os.path.join(args.out, name)
            with open(path, "w") as fh:
                json.dump(doc, fh, sort_keys=True, indent=2)
            written.append(path)
        else:
            print(json.dumps(doc, sort_keys=True, indent=2))
    lines = [f"wrote {p}" for p in written] or [f"generated {args.family} size {args.size}"]
    for line in lines:
        print(line, file=sys.stderr)
    return 0


# -- entry point ------------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="trinities",
        description="Verify the counting identities of a plane bipartite graph's trinity.",
    )
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap per stage")
    parser.add_argument("--jobs", type=int, default=1, help="parallel shards for enumeration")
    parser.add_argument("--format", choices=("json", "summary"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, needs in (
        ("census", _cmd_census, "graph"),
        ("magic", _cmd_magic, "graph"),
        ("hypertrees", _cmd_hypertrees, "graph"),
        ("configs", _cmd_configs, "graph"),
        ("classify", _cmd_classify, "graph"),
        ("verify", _cmd_verify, "graph"),
        ("states", _cmd_states, "universe"),
        ("clock", _cmd_clock, "universe"),
        ("dual", _cmd_dual, "either"),
        ("correspond", _cmd_correspond, "universe"),
    ):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        if needs in ("graph", "either"):
            p.add_argument("--graph", help="graph JSON file")
        if needs in ("universe", "either"):
            p.add_argument("--universe", help="universe JSON file")
    g = sub.add_parser("gen")
    g.set_defaults(fn=_cmd_gen)
    g.add_argument("--family", required=True, choices=GEN_FAMILIES)
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--out", help="directory for generated documents")
    return parser


USAGE_ERRORS = (
    plane_graph.SchemaError,
    plane_graph.NotConnected,
    plane_graph.NotPlanarConsistent,
    fkt.NotFourRegular,
    fkt.StarsNotAdjacent,
    fkt.CountMismatch,
    UnknownFamily,
    CapExceeded,
    FileNotFoundError,
    json.JSONDecodeError,
)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
