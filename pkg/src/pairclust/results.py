"""Run results: metrics recomputed from the graph at serialization time."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cover import conductance_in_cover, pair_to_cover_set
from .fileio import graph_fingerprint
from .graph import Graph, bipartiteness, cut_imbalance, flow_ratio

__all__ = ["RunResult", "build_run_result", "run_result_to_dict", "run_result_json"]


@dataclass
class RunResult:
    """One clustering run, ready for JSON output.

    Every metric is recomputed from (graph, l, r) when the result is built,
    never copied from algorithm internals, so reported values cannot drift
    from what the output sets actually achieve.
    """

    algorithm: str
    seed_vertex: int
    params: dict
    found: bool
    l: list = field(default_factory=list)
    r: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    wall_ms: float = 0.0
    rng_seed: int | None = None
    graph: dict = field(default_factory=dict)


def build_run_result(
    g: Graph,
    algorithm: str,
    seed_vertex: int,
    params: dict,
    pair,
    wall_ms: float,
    rng_seed: int | None = None,
) -> RunResult:
    """Assemble a RunResult, recomputing all reported metrics from the graph."""
    result = RunResult(
        algorithm=algorithm,
        seed_vertex=seed_vertex,
        params=params,
        found=pair is not None,
        wall_ms=wall_ms,
        rng_seed=rng_seed,
        graph=graph_fingerprint(g),
    )
    if pair is None:
        return result
    l = [int(v) for v in pair.l]
    r = [int(v) for v in pair.r]
    result.l = sorted(l)
    result.r = sorted(r)
    metrics: dict = {}
    cover_set = pair_to_cover_set(l, r)
    metrics["conductance_in_cover"] = conductance_in_cover(g, cover_set)
    if g.directed:
        metrics["flow_ratio"] = flow_ratio(g, l, r)
        metrics["volume"] = g.vol_out(l) + g.vol_in(r)
        try:
            metrics["cut_imbalance"] = cut_imbalance(g, l, r)
        except ValueError:
            metrics["cut_imbalance"] = None
    else:
        metrics["beta"] = bipartiteness(g, l, r)
        metrics["volume"] = g.volume(sorted(set(l) | set(r)))
    result.metrics = metrics
    return result


def run_result_to_dict(result: RunResult) -> dict:
    return {
        "algorithm": result.algorithm,
        "seed_vertex": result.seed_vertex,
        "params": result.params,
        "found": result.found,
        "l": result.l,
        "r": result.r,
        "metrics": result.metrics,
        "wall_ms": result.wall_ms,
        "rng_seed": result.rng_seed,
        "graph": result.graph,
    }


def run_result_json(result: RunResult) -> str:
    return json.dumps(run_result_to_dict(result), indent=2, sort_keys=False)
