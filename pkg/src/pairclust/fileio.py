"""File formats: edge lists, pairwise flow matrices, label and name sidecars."""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .graph import Graph

__all__ = [
    "ParseError",
    "load_edge_list",
    "write_edge_list",
    "load_flow_matrix",
    "load_labels",
    "write_labels",
    "load_names",
    "graph_fingerprint",
]


class ParseError(ValueError):
    """Malformed input file; the message carries the offending line number."""


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def load_edge_list(path, directed: bool = False) -> Graph:
    """Read a text edge list: one `u v [w]` per line, `#` comments, 0-based ids.

    The weight defaults to 1.0. Directed files read `u v` as an arc u -> v.
    Parallel edges merge by weight sum; self-loops and nonpositive weights are
    rejected with the line number.
    """
    us, vs, ws = [], [], []
    max_id = -1
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"{path}:{lineno}: expected 'u v [w]', got {line!r}")
        try:
            u = int(parts[0])
            v = int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        if u < 0 or v < 0:
            raise ParseError(f"{path}:{lineno}: negative vertex id")
        if u == v:
            raise ParseError(f"{path}:{lineno}: self-loop at vertex {u}")
        if not w > 0:
            raise ParseError(f"{path}:{lineno}: edge weight must be > 0, got {w}")
        us.append(u)
        vs.append(v)
        ws.append(w)
        max_id = max(max_id, u, v)
    return Graph.from_arrays(
        max_id + 1,
        np.asarray(us, dtype=np.int64),
        np.asarray(vs, dtype=np.int64),
        np.asarray(ws, dtype=np.float64),
        directed=directed,
    )


def _canonical_edges(g: Graph):
    """Merged edges in canonical sorted order: (u, v, w) with u < v if undirected."""
    for u in range(g.n):
        ids, ws = g.neighbors(u)
        for v, w in zip(ids.tolist(), ws.tolist()):
            if g.directed or v > u:
                yield u, v, w


def write_edge_list(g: Graph, path):
    """Write the canonical sorted edge list; load/write round-trips are byte-stable."""
    with open(path, "w", encoding="utf-8") as handle:
        for u, v, w in _canonical_edges(g):
            handle.write(f"{u} {v} {w!r}\n")


def load_flow_matrix(path) -> Graph:
    """Build a digraph from a CSV of pairwise flow counts `j,l,count`.

    Each unordered pair with asymmetric flow becomes one arc from the larger
    flow's origin, weighted by |M_jl - M_lj| / (M_jl + M_lj); balanced or
    absent flows produce no edge. Duplicate rows accumulate.
    """
    counts: dict = {}
    max_id = -1
    for lineno, line in _data_lines(path):
        parts = [part.strip() for part in line.split(",")]
        if len(parts) != 3:
            raise ParseError(f"{path}:{lineno}: expected 'j,l,count', got {line!r}")
        try:
            j = int(parts[0])
            l = int(parts[1])
            c = float(parts[2])
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        if j < 0 or l < 0:
            raise ParseError(f"{path}:{lineno}: negative vertex id")
        if c < 0:
            raise ParseError(f"{path}:{lineno}: negative count {c}")
        counts[(j, l)] = counts.get((j, l), 0.0) + c
        max_id = max(max_id, j, l)

    us, vs, ws = [], [], []
    for (j, l), fwd in counts.items():
        if j >= l:
            continue  # handle each unordered pair once, from the (j < l) entry
        bwd = counts.get((l, j), 0.0)
        _append_flow_edge(us, vs, ws, j, l, fwd, bwd)
    for (j, l), fwd in counts.items():
        if j < l or j == l:
            continue
        if (l, j) in counts:
            continue  # already handled from the (l, j) entry
        _append_flow_edge(us, vs, ws, j, l, fwd, 0.0)
    return Graph.from_arrays(
        max_id + 1,
        np.asarray(us, dtype=np.int64),
        np.asarray(vs, dtype=np.int64),
        np.asarray(ws, dtype=np.float64),
        directed=True,
    )


def _append_flow_edge(us, vs, ws, j, l, fwd, bwd):
    total = fwd + bwd
    if total <= 0:
        return
    weight = abs(fwd - bwd) / total
    if weight == 0.0:
        return
    if fwd > bwd:
        us.append(j)
        vs.append(l)
    else:
        us.append(l)
        vs.append(j)
    ws.append(weight)


def load_labels(path) -> np.ndarray:
    """Read a `vertex label` sidecar into a dense label array."""
    pairs = []
    max_id = -1
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'vertex label', got {line!r}")
        try:
            v = int(parts[0])
            lab = int(parts[1])
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        if v < 0:
            raise ParseError(f"{path}:{lineno}: negative vertex id")
        pairs.append((v, lab))
        max_id = max(max_id, v)
    labels = np.zeros(max_id + 1, dtype=np.int64)
    for v, lab in pairs:
        labels[v] = lab
    return labels


def write_labels(labels: np.ndarray, path):
    with open(path, "w", encoding="utf-8") as handle:
        for v, lab in enumerate(np.asarray(labels).tolist()):
            handle.write(f"{v} {lab}\n")


def load_names(path) -> dict:
    """Read an optional `vertex<TAB>name` sidecar mapping ids to display names."""
    names: dict = {}
    for lineno, line in _data_lines(path):
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'vertex name', got {line!r}")
        try:
            names[int(parts[0])] = parts[1]
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return names


def graph_fingerprint(g: Graph) -> dict:
    """Stable identity of a graph: n, merged edge count, and a content hash."""
    digest = hashlib.blake2b(digest_size=8)
    digest.update(f"{g.n}:{int(g.directed)}".encode())
    for u, v, w in _canonical_edges(g):
        digest.update(f"{u},{v},{w!r};".encode())
    return {"n": g.n, "m": g.edge_count, "hash": digest.hexdigest()}


def default_labels_path(graph_path) -> Path:
    return Path(str(graph_path) + ".labels")
