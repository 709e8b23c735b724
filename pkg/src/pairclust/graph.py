"""Sparse weighted graph storage with degree, volume, cut, and cluster-quality queries."""

from __future__ import annotations

from typing import Iterable

import numpy as np

__all__ = [
    "Graph",
    "as_vertex_array",
    "conductance",
    "bipartiteness",
    "flow_ratio",
    "cut_imbalance",
]


def as_vertex_array(n: int, vertices: Iterable[int]) -> np.ndarray:
    """Normalize a vertex collection to a sorted, deduplicated int64 array.

    Raises ValueError for ids outside [0, n).
    """
    if isinstance(vertices, np.ndarray):
        arr = vertices.astype(np.int64, copy=False)
    else:
        arr = np.fromiter(vertices, dtype=np.int64)
    ids = np.unique(arr)
    if ids.size and (ids[0] < 0 or ids[-1] >= n):
        raise ValueError(f"vertex id out of range [0, {n})")
    return ids


def _merge_edges(n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray):
    """Sum weights of parallel edges. Keys are u*n+v, so (u, v) must be canonical."""
    keys = u * np.int64(n) + v
    uniq, inverse = np.unique(keys, return_inverse=True)
    wsum = np.bincount(inverse, weights=w, minlength=uniq.size)
    return uniq // n, uniq % n, wsum


def _csr(n: int, rows: np.ndarray, cols: np.ndarray, vals: np.ndarray):
    # single-key sort; (row, col) pairs are unique after merging
    order = np.argsort(rows * np.int64(n) + cols)
    rows, cols, vals = rows[order], cols[order], vals[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    for arr in (indptr, cols, vals):
        arr.setflags(write=False)
    return indptr, cols, vals


class Graph:
    """Immutable weighted sparse graph, undirected or directed.

    Vertex ids are dense integers in [0, n). All edge weights are strictly
    positive; parallel edges are merged by summing weights and self-loops are
    rejected at construction. Undirected adjacency is stored symmetrically;
    directed graphs keep both out- and in-adjacency in CSR form. Instances
    are safe to share across threads: every query is pure and the underlying
    arrays are marked read-only.
    """

    __slots__ = (
        "n",
        "directed",
        "edge_count",
        "indptr",
        "indices",
        "weights",
        "in_indptr",
        "in_indices",
        "in_weights",
        "_deg",
        "_in_deg",
        "_total_deg",
        "_total_in_deg",
    )

    def __init__(self, n: int, edges: Iterable[tuple], directed: bool = False):
        u, v, w = _edge_arrays(edges)
        self._build(n, u, v, w, directed)

    @classmethod
    def from_arrays(
        cls,
        n: int,
        u: np.ndarray,
        v: np.ndarray,
        w: np.ndarray | None = None,
        directed: bool = False,
    ) -> "Graph":
        """Build a graph from parallel endpoint/weight arrays (weights default to 1)."""
        g = cls.__new__(cls)
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if w is None:
            w = np.ones(u.size, dtype=np.float64)
        else:
            w = np.asarray(w, dtype=np.float64)
        g._build(n, u, v, w, directed)
        return g

    def _build(self, n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray, directed: bool):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if not (u.size == v.size == w.size):
            raise ValueError("endpoint and weight arrays must have equal length")
        if u.size:
            lo = min(u.min(), v.min())
            hi = max(u.max(), v.max())
            if lo < 0 or hi >= n:
                raise ValueError(f"edge endpoint out of range [0, {n})")
            if np.any(u == v):
                raise ValueError("self-loops are not allowed")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise ValueError("edge weights must be finite and > 0")

        self.n = int(n)
        self.directed = bool(directed)

        if directed:
            su, sv, sw = _merge_edges(n, u, v, w)
            self.edge_count = int(su.size)
            self.indptr, self.indices, self.weights = _csr(n, su, sv, sw)
            self.in_indptr, self.in_indices, self.in_weights = _csr(n, sv, su, sw)
            self._deg = np.bincount(su, weights=sw, minlength=n)
            self._in_deg = np.bincount(sv, weights=sw, minlength=n)
        else:
            lo = np.minimum(u, v)
            hi = np.maximum(u, v)
            su, sv, sw = _merge_edges(n, lo, hi, w)
            self.edge_count = int(su.size)
            rows = np.concatenate([su, sv])
            cols = np.concatenate([sv, su])
            vals = np.concatenate([sw, sw])
            self.indptr, self.indices, self.weights = _csr(n, rows, cols, vals)
            self.in_indptr, self.in_indices, self.in_weights = (
                self.indptr,
                self.indices,
                self.weights,
            )
            self._deg = np.bincount(rows, weights=vals, minlength=n)
            self._in_deg = self._deg
        self._deg.setflags(write=False)
        self._in_deg.setflags(write=False)
        self._total_deg = float(self._deg.sum())
        self._total_in_deg = float(self._in_deg.sum())

    # -- degree / volume -------------------------------------------------

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise ValueError(f"vertex id {v} out of range [0, {self.n})")

    def degree(self, v: int) -> float:
        """Weighted degree of v. Only defined for undirected graphs."""
        if self.directed:
            raise ValueError("degree() is undirected-only; use out_degree/in_degree")
        self._check_vertex(v)
        return float(self._deg[v])

    def out_degree(self, v: int) -> float:
        self._check_vertex(v)
        return float(self._deg[v])

    def in_degree(self, v: int) -> float:
        self._check_vertex(v)
        return float(self._in_deg[v])

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degree array (out-degrees for directed graphs)."""
        return self._deg

    @property
    def in_degrees(self) -> np.ndarray:
        return self._in_deg

    def neighbors(self, v: int):
        """Out-neighbors of v as (ids, weights) array views."""
        self._check_vertex(v)
        s, e = self.indptr[v], self.indptr[v + 1]
        return self.indices[s:e], self.weights[s:e]

    def in_neighbors(self, v: int):
        self._check_vertex(v)
        s, e = self.in_indptr[v], self.in_indptr[v + 1]
        return self.in_indices[s:e], self.in_weights[s:e]

    def volume(self, vertices: Iterable[int]) -> float:
        """Sum of weighted degrees over a vertex set (out-volume if directed)."""
        ids = as_vertex_array(self.n, vertices)
        return float(self._deg[ids].sum())

    def vol_out(self, vertices: Iterable[int]) -> float:
        ids = as_vertex_array(self.n, vertices)
        return float(self._deg[ids].sum())

    def vol_in(self, vertices: Iterable[int]) -> float:
        ids = as_vertex_array(self.n, vertices)
        return float(self._in_deg[ids].sum())

    def total_volume(self) -> float:
        """vol(V): sum of all degrees (out-degrees if directed)."""
        return self._total_deg

    # -- cuts --------------------------------------------------------------

    def cut_weight(self, a: Iterable[int], b: Iterable[int]) -> float:
        """Total weight of edges between disjoint sets a and b (from a to b if directed)."""
        a_ids = as_vertex_array(self.n, a)
        b_ids = as_vertex_array(self.n, b)
        if np.intersect1d(a_ids, b_ids).size:
            raise ValueError("cut_weight requires disjoint vertex sets")
        return self._weight_between(a_ids, b_ids)

    def _weight_between(self, a_ids: np.ndarray, b_ids: np.ndarray) -> float:
        total = 0.0
        for u in a_ids.tolist():
            s, e = self.indptr[u], self.indptr[u + 1]
            nbrs = self.indices[s:e]
            mask = np.isin(nbrs, b_ids, assume_unique=True)
            if mask.any():
                total += float(self.weights[s:e][mask].sum())
        return total

    def boundary_weight(self, vertices: Iterable[int]) -> float:
        """Weight of the undirected boundary: edges with exactly one endpoint inside."""
        if self.directed:
            raise ValueError("boundary_weight() is undirected-only")
        ids = as_vertex_array(self.n, vertices)
        internal2 = self._weight_between(ids, ids)
        return float(self._deg[ids].sum()) - internal2


def _edge_arrays(edges: Iterable[tuple]):
    us, vs, ws = [], [], []
    for edge in edges:
        if len(edge) == 2:
            u, v = edge
            w = 1.0
        else:
            u, v, w = edge
        us.append(u)
        vs.append(v)
        ws.append(w)
    return (
        np.asarray(us, dtype=np.int64),
        np.asarray(vs, dtype=np.int64),
        np.asarray(ws, dtype=np.float64),
    )


def conductance(g: Graph, vertices: Iterable[int]) -> float:
    """Boundary weight of the set over min(vol(S), vol(V \\ S)).

    Requires an undirected graph and a nonempty proper subset with a
    nonzero denominator.
    """
    if g.directed:
        raise ValueError("conductance() is undirected-only")
    ids = as_vertex_array(g.n, vertices)
    if ids.size == 0 or ids.size == g.n:
        raise ValueError("conductance undefined for empty set or whole vertex set")
    vol = float(g.degrees[ids].sum())
    denom = min(vol, g.total_volume() - vol)
    if denom <= 0:
        raise ValueError("conductance undefined: zero-volume side")
    return g.boundary_weight(ids) / denom


def bipartiteness(g: Graph, l: Iterable[int], r: Iterable[int]) -> float:
    """1 - 2 e(L, R) / vol(L u R): low values mean a dense, jointly isolated pair."""
    if g.directed:
        raise ValueError("bipartiteness() is undirected-only; see flow_ratio()")
    l_ids = as_vertex_array(g.n, l)
    r_ids = as_vertex_array(g.n, r)
    union = np.union1d(l_ids, r_ids)
    if union.size != l_ids.size + r_ids.size:
        raise ValueError("L and R must be disjoint")
    if union.size == 0:
        raise ValueError("L u R must be nonempty")
    vol = float(g.degrees[union].sum())
    if vol <= 0:
        raise ValueError("L u R has zero volume")
    return 1.0 - 2.0 * g._weight_between(l_ids, r_ids) / vol


def flow_ratio(g: Graph, l: Iterable[int], r: Iterable[int]) -> float:
    """1 - 2 e(L->R) / (vol_out(L) + vol_in(R)): low values mean edges flow L to R."""
    if not g.directed:
        raise ValueError("flow_ratio() is directed-only; see bipartiteness()")
    l_ids = as_vertex_array(g.n, l)
    r_ids = as_vertex_array(g.n, r)
    if np.intersect1d(l_ids, r_ids).size:
        raise ValueError("L and R must be disjoint")
    denom = float(g.degrees[l_ids].sum()) + float(g.in_degrees[r_ids].sum())
    if denom <= 0:
        raise ValueError("vol_out(L) + vol_in(R) must be positive")
    return 1.0 - 2.0 * g._weight_between(l_ids, r_ids) / denom


def cut_imbalance(g: Graph, l: Iterable[int], r: Iterable[int]) -> float:
    """Half the normalized difference between the two cut directions, in [0, 1/2]."""
    if not g.directed:
        raise ValueError("cut_imbalance() is directed-only")
    lr = g.cut_weight(l, r)
    rl = g.cut_weight(r, l)
    if lr + rl <= 0:
        raise ValueError("no edges between L and R in either direction")
    return 0.5 * abs((lr - rl) / (lr + rl))
