"""Command line front end.

Exit codes: 0 pass, 1 a check failed (a witness is printed), 2 bad input.
Set ORART_LOG=DEBUG (or INFO, ...) for log output on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from typing import Any

import numpy as np

from . import __version__
from ._util import OrartError
from .bruhat_tits import EuclideanIsometry, generate_group, fixed_point, min_enclosing_ball, tree_circumcenter
from .cohomology import QuadAlgebraF2, build_gamma_algebra, conjecture_probe, hilbert_dims
from .complexes import CubeComplex, SimplicialComplex, gromov_check, is_flag, validate_strict
from .graph_of_groups import build, compare_presentations, exact_rows_check, pi1_presentation
from .kappa_cone import FiniteMetricSpace, MetricAxiomError, berestovskii_probe, cone_space
from .klein_salvetti import ball_gromov_check, cayley_ball, f2_betti, link_at_identity, salvetti_cells
from .metric_graph import GraphOracle, GraphPoint, MetricGraph, cn_test, triangle_comparison_test
from .oraag import abelianization, center_clique, embedding_index_check, presentation, racg_projection
from .special_graph import SpecialGraph, clique_tree, is_chordal, maximal_cliques

log = logging.getLogger("orart")

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(OrartError):
    pass


def _load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return None if math.isnan(x) else x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return x


def _emit(args, report: dict, lines: list[str]):
    if args.json:
        print(json.dumps(_jsonable(report), indent=2))
    else:
        print("\n".join(lines))


def _special_graph(path: str) -> SpecialGraph:
    return SpecialGraph.from_json(_load(path))


# -- subcommands -------------------------------------------------------------------

def cmd_validate(args) -> int:
    data = _load(args.file)
    kind = args.kind
    if kind == "auto":
        if "cells" in data:
            kind = "cube-complex"
        elif "simplices" in data or "facets" in data:
            kind = "complex"
        elif "d" in data and "points" in data:
            kind = "metric-space"
        elif "generators" in data:
            kind = "algebra"
        elif data.get("edges") and isinstance(data["edges"][0], dict) and "len" in data["edges"][0]:
            kind = "metric-graph"
        else:
            kind = "special-graph"
    log.info("validating %s as %s", args.file, kind)
    if kind == "special-graph":
        d = _special_graph(args.file).validate()
        _emit(args, {"kind": kind, **d.to_json()},
              [f"special graph: {'valid' if d.valid else 'invalid'}"] + ([] if d.valid else [f"rule: {d.rule}", f"witness: {list(d.witness)}", d.message]))
        return EXIT_PASS if d.valid else EXIT_FAIL
    if kind == "cube-complex":
        st = validate_strict(CubeComplex.from_json(data))
        _emit(args, {"kind": kind, **st.to_json()},
              [f"cube complex: {'strict' if st.strict else 'not strict'}"] + ([] if st.strict else [f"rule: {st.rule}", f"witness: {st.witness}"]))
        return EXIT_PASS if st.strict else EXIT_FAIL
    if kind == "complex":
        L = SimplicialComplex.from_json(data)
        _emit(args, {"kind": kind, "valid": True, "f_vector": L.f_vector()}, [f"simplicial complex: valid, f-vector {L.f_vector()}"])
        return EXIT_PASS
    if kind == "metric-space":
        try:
            FiniteMetricSpace.from_json(data)
        except MetricAxiomError as exc:
            _emit(args, {"kind": kind, "valid": False, "axiom": exc.witness[0], "witness": list(exc.witness[1])},
                  [f"metric space: invalid ({exc})"])
            return EXIT_FAIL
        _emit(args, {"kind": kind, "valid": True}, ["metric space: valid"])
        return EXIT_PASS
    if kind == "metric-graph":
        G = MetricGraph.from_json(data)
        _emit(args, {"kind": kind, "valid": True, "tree": G.is_tree()}, [f"metric graph: valid ({'tree' if G.is_tree() else 'not a tree'})"])
        return EXIT_PASS
    if kind == "algebra":
        A = QuadAlgebraF2.from_json(data)
        _emit(args, {"kind": kind, "valid": True, "relations": len(A.relations)}, [f"algebra: valid, {len(A.relations)} relations"])
        return EXIT_PASS
    raise UsageError(f"unknown kind {kind}")


def cmd_analyze(args) -> int:
    G = _special_graph(args.file)
    d = G.validate()
    if not d:
        _emit(args, {"valid": False, **d.to_json()}, [f"invalid special graph ({d.rule}): {d.message}"])
        return EXIT_FAIL
    N = G.naive()
    chordal = is_chordal(N)
    P = presentation(G)
    ab = abelianization(G)
    A = build_gamma_algebra(G)
    maxdeg = args.maxdeg if args.maxdeg is not None else len(G.vertices) + 1
    dims = hilbert_dims(A, maxdeg)
    probe = conjecture_probe(G, maxdeg)
    cells = salvetti_cells(G)
    link = link_at_identity(G)
    rac = racg_projection(G)
    report = {
        "valid": True,
        "vertices": list(G.vertices),
        "attractors": list(G.attractors()),
        "chordal": chordal,
        "maximal_cliques": [list(c) for c in maximal_cliques(N)],
        "presentation": {"text": str(P), **P.to_json()},
        "abelianization": ab.to_json(),
        "coxeter_order": rac.order,
        "algebra": {"relations": A.relation_strings(), "dims": dims},
        "conjecture_probe": probe.to_json(),
        "salvetti_cells": cells.to_json(),
        "link_at_identity_flag": link.flag,
    }
    if G.is_complete():
        report["center"] = center_clique(G).to_json()
        report["embedding"] = embedding_index_check(G).to_json()
    lines = [
        "special graph: valid",
        f"attractors: {list(G.attractors())}",
        f"chordal: {chordal}",
        f"maximal cliques: {[list(c) for c in maximal_cliques(N)]}",
        f"presentation: {P}",
        f"abelianization: {ab}",
        f"F2 algebra relations: {A.relation_strings()}",
        f"F2 algebra dims: {dims}",
        f"conjecture probe ({probe.label}): dims {probe.algebra_dims} vs clique counts {probe.clique_counts} -> {'match' if probe.match else 'mismatch'}",
        f"Klein-Salvetti cells: {cells.cells}, euler {cells.euler}",
        f"link at identity flag: {link.flag}",
    ]
    if G.is_complete():
        c = report["center"]
        lines.append(f"center generators: {c['center_generators']}")
        e = report["embedding"]
        lines.append(f"square subgroup index: {e['index']} (Coxeter order {e['coxeter_order']})")
    _emit(args, report, lines)
    return EXIT_PASS if link.flag else EXIT_FAIL


def cmd_gromov(args) -> int:
    data = _load(args.file)
    if args.kind == "simplicial":
        r = is_flag(SimplicialComplex.from_json(data))
        _emit(args, r.to_json(), [f"flag: {r.flag}"] + ([] if r.flag else [f"witness: {list(r.witness)}"]))
        return EXIT_PASS if r.flag else EXIT_FAIL
    K = CubeComplex.from_json(data)
    st = validate_strict(K)
    if not st:
        _emit(args, {"strict": st.to_json()}, [f"cube complex is not strict ({st.rule}): {st.witness}"])
        return EXIT_INPUT
    r = gromov_check(K)
    lines = [f"cells per dimension: {K.counts()}", f"verdict: {'pass' if r.passed else 'fail'} ({r.verdict})",
             f"vertices checked: {r.checked}"]
    lines += [f"vertex {v!r}: link not flag, witness clique {list(w)}" for v, w in r.failures]
    _emit(args, r.to_json(), lines)
    return EXIT_PASS if r.passed else EXIT_FAIL


def _graph_point(G: MetricGraph, spec) -> GraphPoint:
    if isinstance(spec, dict):
        return GraphPoint(vertex=spec.get("vertex"), edge=spec.get("edge"), t=spec.get("t", 0.0)) if "edge" in spec else GraphPoint(vertex=spec["vertex"])
    return GraphPoint(vertex=spec)


def cmd_cat_test(args) -> int:
    data = _load(args.file)
    G = MetricGraph.from_json(data)
    reports = []
    if args.triangle:
        if len(args.triangle) != 3:
            raise UsageError("--triangle takes three vertex ids")
        ids = [_coerce_id(G, x) for x in args.triangle]
        reports.append(triangle_comparison_test(G, [GraphPoint(vertex=v) for v in ids], kappa=args.kappa, tol=args.tol))
    if args.cn or not args.triangle:
        samples = None if args.exhaustive else args.samples
        reports.append(cn_test(GraphOracle(G, subdivide=args.subdivide), samples, tol=args.tol, seed=args.seed))
    ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r.test}: {r.verdict} (checked {r.n_checked}, skipped {r.n_skipped}, min slack {r.min_slack:.6g}, tol {r.tol:g}, seed {args.seed})")
        if r.worst is not None:
            lines.append(f"  worst witness: {r.worst.points} slack {r.worst.slack:.6g}")
    _emit(args, {"reports": [r.to_json() for r in reports], "seed": args.seed, "pass": ok}, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def _coerce_id(G: MetricGraph, x: str):
    for v in G.vertices:
        if str(v) == x:
            return v
    raise UsageError(f"unknown vertex {x!r}")


def cmd_circumcenter(args) -> int:
    data = _load(args.file)
    if "graph" in data:
        G = MetricGraph.from_json(data["graph"])
        pts = [_graph_point(G, p) for p in data["points"]]
        ball = tree_circumcenter(G, pts)
    else:
        ball = min_enclosing_ball(data["points"], seed=args.seed)
    _emit(args, ball.to_json(), [f"center: {_jsonable(ball.to_json())['center']}", f"radius: {ball.radius:.12g}"])
    return EXIT_PASS


def cmd_fixed_point(args) -> int:
    data = _load(args.file)
    isos = [EuclideanIsometry.from_json(x) for x in data["isometries"]]
    group = generate_group(isos) if data.get("generate", False) else isos
    c = fixed_point(group, data["seed"])
    moved = max(float(np.max(np.abs(g(c) - c))) for g in group)
    _emit(args, {"fixed_point": c.tolist(), "group_order": len(group), "max_displacement": moved},
          [f"group order: {len(group)}", f"fixed point: {c.tolist()}", f"max displacement: {moved:.3g}"])
    return EXIT_PASS


def cmd_cone(args) -> int:
    Y = FiniteMetricSpace.from_json(_load(args.file))
    radii = [float(r) for r in args.radii.split(",")]
    try:
        S = cone_space(args.kappa, Y, radii, tol=args.tol)
        metric = {"metric": True, "points": len(S)}
    except MetricAxiomError as exc:
        metric = {"metric": False, "axiom": exc.witness[0], "witness": [_jsonable(p) for p in exc.witness[1]]}
    samples = None if args.exhaustive else args.samples
    rep = berestovskii_probe(args.kappa, Y, radii, samples=samples, tol=args.tol, seed=args.seed)
    ok = metric["metric"] and rep.passed
    lines = [f"cone metric axioms: {'hold' if metric['metric'] else 'fail ' + str(metric)}",
             f"{rep.test}: {rep.verdict} (checked {rep.n_checked}, skipped {rep.n_skipped}, seed {args.seed})"]
    if rep.worst is not None:
        lines.append(f"  worst witness: {rep.worst.points} slack {rep.worst.slack:.6g}")
    _emit(args, {"metric": metric, "probe": rep.to_json(), "kappa": args.kappa, "radii": radii}, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_cohomology(args) -> int:
    data = _load(args.file)
    maxdeg = args.maxdeg if args.maxdeg is not None else 4
    if "generators" in data:
        A = QuadAlgebraF2.from_json(data)
        dims = hilbert_dims(A, maxdeg)
        _emit(args, {"dims": dims}, [f"dims: {dims}"])
        return EXIT_PASS
    G = SpecialGraph.from_json(data).checked()
    A = build_gamma_algebra(G)
    probe = conjecture_probe(G, maxdeg)
    betti = f2_betti(G)
    _emit(args, {"algebra": A.to_json(), "dims": probe.algebra_dims, "probe": probe.to_json(), "betti": betti.to_json()},
          [f"relations: {A.relation_strings()}", f"dims: {probe.algebra_dims}",
           f"clique counts: {probe.clique_counts} ({betti.assumption})",
           f"probe: {'match' if probe.match else 'mismatch'} ({probe.label})"])
    return EXIT_PASS


def cmd_graph_of_groups(args) -> int:
    G = _special_graph(args.file).checked()
    if not is_chordal(G.naive()):
        raise UsageError("graph of groups needs a chordal graph")
    T = clique_tree(G.naive(), seed=args.tree_seed)
    GG = build(G, T)
    P = pi1_presentation(GG)
    same = compare_presentations(P, presentation(G))
    rows = exact_rows_check(GG) if all(n.graph.is_complete() for n in GG.nodes) else None
    report = {"clique_tree": T.to_json(), "pi1": {"text": str(P), **P.to_json()}, "matches_presentation": same,
              "exact_rows": None if rows is None else rows.to_json()}
    lines = [f"clique tree nodes: {[list(c) for c in T.nodes]}", f"clique tree edges: {T.edges}",
             f"pi1 presentation: {P}", f"equals graph presentation: {same}"]
    if rows is not None:
        lines.append(f"exact rows: {'ok' if rows.ok else 'FAILED'} ({rows.note})")
    _emit(args, report, lines)
    return EXIT_PASS if same and (rows is None or rows.ok) else EXIT_FAIL


def cmd_cayley(args) -> int:
    G = _special_graph(args.file).checked()
    R = args.radius if args.radius is not None else 2
    ball = cayley_ball(G, R)
    link = link_at_identity(G)
    K, strict, gr = ball_gromov_check(G, max(R, len(G.vertices)))
    report = {"size": len(ball), "growth": ball.growth(), "link_flag": link.flag,
              "ball_complex": {"cells": K.counts(), "strict": strict.strict, "gromov": gr.to_json()}}
    lines = [f"ball radius {R}: {len(ball)} elements, growth {ball.growth()}", f"link at identity flag: {link.flag}",
             f"ball cube complex cells {K.counts()}, strict {strict.strict}, Gromov at {gr.checked} interior vertices: {'pass' if gr.passed else 'fail'}"]
    _emit(args, report, lines)
    return EXIT_PASS if link.flag and gr.passed else EXIT_FAIL


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=42, help="RNG seed for sampled checks (default 42)")
    common.add_argument("--tol", type=float, default=1e-9, help="absolute tolerance (default 1e-9)")

    p = argparse.ArgumentParser(prog="orart", description="CAT(0) geometry, cube complexes and oriented RAAGs on finite inputs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate any supported JSON input")
    s.add_argument("file")
    s.add_argument("--kind", default="auto", choices=["auto", "special-graph", "metric-graph", "complex", "cube-complex", "metric-space", "algebra"])
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", parents=[common], help="full report on a special graph")
    s.add_argument("kind", choices=["special-graph"])
    s.add_argument("file")
    s.add_argument("--maxdeg", type=int)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("gromov", parents=[common], help="link condition of a cube complex (or flag test of a simplicial complex)")
    s.add_argument("kind", choices=["cube", "simplicial"])
    s.add_argument("file")
    s.set_defaults(func=cmd_gromov)

    s = sub.add_parser("cat-test", parents=[common], help="sampled CN / triangle comparison on a metric graph")
    s.add_argument("kind", choices=["graph"])
    s.add_argument("file")
    s.add_argument("--cn", action="store_true")
    s.add_argument("--triangle", nargs=3, metavar="V")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--samples", type=int, default=2000)
    s.add_argument("--subdivide", type=int, default=1)
    s.add_argument("--kappa", type=float, default=0.0)
    s.set_defaults(func=cmd_cat_test)

    s = sub.add_parser("circumcenter", parents=[common], help="minimal enclosing ball")
    s.add_argument("file")
    s.set_defaults(func=cmd_circumcenter)

    s = sub.add_parser("fixed-point", parents=[common], help="fixed point of a finite isometry group")
    s.add_argument("file")
    s.set_defaults(func=cmd_fixed_point)

    s = sub.add_parser("cone", parents=[common], help="kappa-cone metric check and curvature probe")
    s.add_argument("file")
    s.add_argument("--kappa", type=float, default=0.0)
    s.add_argument("--radii", default="0,1,2")
    s.add_argument("--samples", type=int, default=5000)
    s.add_argument("--exhaustive", action="store_true")
    s.set_defaults(func=cmd_cone)

    s = sub.add_parser("cohomology", parents=[common], help="F2 algebra of a special graph (or of an algebra JSON)")
    s.add_argument("file")
    s.add_argument("--maxdeg", type=int)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("graph-of-groups", parents=[common], help="tree of groups of a chordal special graph")
    s.add_argument("file")
    s.add_argument("--tree-seed", type=int, default=None, help="shuffle clique-tree tie-breaks")
    s.set_defaults(func=cmd_graph_of_groups)

    s = sub.add_parser("cayley", parents=[common], help="Cayley ball of a complete special graph")
    s.add_argument("file")
    s.add_argument("--radius", type=int)
    s.set_defaults(func=cmd_cayley)
    return p


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("ORART_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OrartError, ValueError, KeyError, TypeError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
