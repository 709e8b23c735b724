"""Slow exact references: dense Pagerank, brute-force set search, exact ESP kernel, LS curve.

Everything here trades speed for verifiability and is size-guarded; exceeding
a guard raises instead of silently approximating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cover import cover_degree, pair_to_cover_set, total_cover_volume
from .graph import Graph, bipartiteness

__all__ = [
    "dense_walk_matrix",
    "exact_pagerank",
    "brute_force_best_pair",
    "brute_force_min_conductance",
    "exact_esp_kernel",
    "ls_curve",
    "LsCurve",
]

_PAGERANK_GUARD = 4096
_PAIR_GUARD = 8
_KERNEL_GUARD = 24


def dense_walk_matrix(g: Graph, cover: bool = True) -> np.ndarray:
    """Dense lazy-walk matrix W = (I + D^-1 A) / 2; degree-0 rows are absorbing."""
    if cover:
        dim = 2 * g.n
        adj = np.zeros((dim, dim))
        if g.directed:
            for u in range(g.n):
                ids, ws = g.neighbors(u)
                adj[2 * u, 2 * ids + 1] = ws
                adj[2 * ids + 1, 2 * u] = ws
        else:
            for u in range(g.n):
                ids, ws = g.neighbors(u)
                adj[2 * u, 2 * ids + 1] += ws
                adj[2 * u + 1, 2 * ids] += ws
    else:
        if g.directed:
            raise ValueError("base-graph walk matrix is undirected-only")
        dim = g.n
        adj = np.zeros((dim, dim))
        for u in range(g.n):
            ids, ws = g.neighbors(u)
            adj[u, ids] = ws
    deg = adj.sum(axis=1)
    w = np.eye(dim)
    pos = deg > 0
    w[pos] = 0.5 * (np.eye(dim)[pos] + adj[pos] / deg[pos, None])
    return w


def exact_pagerank(g: Graph, cover: bool, alpha: float, s: np.ndarray) -> np.ndarray:
    """Personalized Pagerank by direct series iteration, to residual 1e-12.

    Solves pr = alpha * s + (1 - alpha) * pr W via the geometric series
    alpha * sum_t (1 - alpha)^t s W^t.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    dim = 2 * g.n if cover else g.n
    if dim > _PAGERANK_GUARD:
        raise ValueError(f"dense pagerank guard exceeded: {dim} > {_PAGERANK_GUARD}")
    s = np.asarray(s, dtype=np.float64)
    if s.shape != (dim,):
        raise ValueError(f"starting vector must have shape ({dim},)")
    w = dense_walk_matrix(g, cover)
    out = np.zeros(dim)
    term = alpha * s
    scale = float(np.abs(s).sum())
    tol = 1e-12 * max(scale, 1.0)
    while np.abs(term).sum() > tol:
        out += term
        term = (1.0 - alpha) * (term @ w)
    return out + term


def _pair_assignments(n: int):
    # each vertex is unassigned (0), in L (1), or in R (2)
    return itertools.product((0, 1, 2), repeat=n)


def brute_force_best_pair(g: Graph):
    """Exact minimum of the pair quality ratio over all disjoint (L, R), n <= 8."""
    if g.directed:
        raise ValueError("brute_force_best_pair is undirected-only")
    if g.n > _PAIR_GUARD:
        raise ValueError(f"brute-force guard exceeded: n={g.n} > {_PAIR_GUARD}")
    best = None
    for assign in _pair_assignments(g.n):
        l = [v for v, a in enumerate(assign) if a == 1]
        r = [v for v, a in enumerate(assign) if a == 2]
        if not l and not r:
            continue
        if g.volume(l + r) <= 0:
            continue
        beta = bipartiteness(g, l, r)
        if best is None or beta < best[2]:
            best = (np.asarray(l, dtype=np.int64), np.asarray(r, dtype=np.int64), beta)
    if best is None:
        raise ValueError("graph has no pair with positive volume")
    return best


def brute_force_min_conductance(g: Graph, cover: bool = True):
    """Exact minimum conductance over simple cover sets (or base-graph subsets)."""
    from .cover import conductance_in_cover
    from .graph import conductance

    if g.n > _PAIR_GUARD:
        raise ValueError(f"brute-force guard exceeded: n={g.n} > {_PAIR_GUARD}")
    best = None
    if cover:
        total = total_cover_volume(g)
        for assign in _pair_assignments(g.n):
            l = [v for v, a in enumerate(assign) if a == 1]
            r = [v for v, a in enumerate(assign) if a == 2]
            s = pair_to_cover_set(l, r)
            if not s:
                continue
            vol = sum(cover_degree(g, key) for key in s)
            if vol <= 0 or total - vol <= 0:
                continue
            phi = conductance_in_cover(g, s)
            if best is None or phi < best[1]:
                best = (s, phi)
    else:
        if g.directed:
            raise ValueError("base-graph conductance search is undirected-only")
        for size in range(1, g.n):
            for subset in itertools.combinations(range(g.n), size):
                try:
                    phi = conductance(g, subset)
                except ValueError:
                    continue
                if best is None or phi < best[1]:
                    best = (set(subset), phi)
    if best is None:
        raise ValueError("no admissible set found")
    return best


def _membership_probabilities(g: Graph, s: set) -> dict:
    """Q(y, S) = one lazy-walk-step probability of landing in S, for all cover y."""
    from .cover import cover_neighbors

    q = {}
    for key in range(2 * g.n):
        deg = cover_degree(g, key)
        if deg <= 0:
            q[key] = 1.0 if key in s else 0.0
            continue
        nbr_keys, ws = cover_neighbors(g, key)
        mass = sum(w for nb, w in zip(nbr_keys.tolist(), ws.tolist()) if nb in s)
        q[key] = 0.5 * (1.0 if key in s else 0.0) + 0.5 * mass / deg
    return q


def exact_esp_kernel(g: Graph, s: set):
    """Exact one-step kernels of the evolving set process from cover set s.

    Returns (k, k_hat): dicts mapping successor frozensets to probabilities.
    k is the plain threshold kernel (may include the empty set); k_hat is the
    volume-biased reweighting vol(S') / vol(S) * k(S, S'), which drops the
    empty set and sums to 1 because set volume is a martingale under k.
    """
    if 2 * g.n > _KERNEL_GUARD:
        raise ValueError(f"kernel guard exceeded: {2 * g.n} > {_KERNEL_GUARD}")
    s = set(s)
    if not s:
        raise ValueError("start set must be nonempty")
    q = _membership_probabilities(g, s)
    vol_s = cover_volume_dense(g, s)
    if vol_s <= 0:
        raise ValueError("start set must have positive volume")

    # Distinct positive Q values partition (0, 1] into intervals; the interval
    # (next_level, level] selects the superlevel set {y : Q(y) >= level}.
    levels = sorted({val for val in q.values() if val > 0}, reverse=True)
    k: dict = {}
    k_hat: dict = {}
    top = levels[0] if levels else 0.0
    if top < 1.0:
        k[frozenset()] = 1.0 - top
    for i, threshold in enumerate(levels):
        succ = frozenset(key for key, val in q.items() if val >= threshold)
        nxt = levels[i + 1] if i + 1 < len(levels) else 0.0
        prob = threshold - nxt
        k[succ] = k.get(succ, 0.0) + prob
        k_hat[succ] = k_hat.get(succ, 0.0) + prob * cover_volume_dense(g, succ) / vol_s
    return k, k_hat


def cover_volume_dense(g: Graph, keys) -> float:
    return sum(cover_degree(g, key) for key in keys)


@dataclass(frozen=True)
class LsCurve:
    """Concave piecewise-linear upper envelope of set masses by volume."""

    xs: np.ndarray
    ys: np.ndarray

    def __call__(self, x: float) -> float:
        if x < -1e-12 or x > self.xs[-1] + 1e-12:
            raise ValueError(f"query {x} outside [0, {self.xs[-1]}]")
        return float(np.interp(x, self.xs, self.ys))


def ls_curve(p: dict, g: Graph, cover: bool = True) -> LsCurve:
    """Curve through the sweep-prefix points ordered by mass/degree, descending.

    A diagnostic: for any vertex set S, the set mass p(S) is bounded above by
    the curve evaluated at vol(S).
    """
    if cover:
        items = [(key, val, cover_degree(g, key)) for key, val in p.items() if val != 0.0]
    else:
        items = [(key, val, float(g.degrees[key])) for key, val in p.items() if val != 0.0]
    for key, val, deg in items:
        if val < 0:
            raise ValueError("mass vector must be nonnegative")
        if deg <= 0:
            raise ValueError(f"support vertex {key} has zero degree")
    items.sort(key=lambda t: (-t[1] / t[2], t[0]))
    xs = [0.0]
    ys = [0.0]
    for _, val, deg in items:
        xs.append(xs[-1] + deg)
        ys.append(ys[-1] + val)
    total = total_cover_volume(g) if cover else g.total_volume()
    if xs[-1] > total + 1e-9:
        raise ValueError("support volume exceeds total volume")
    if xs[-1] < total:
        xs.append(total)
        ys.append(ys[-1])
    return LsCurve(np.asarray(xs), np.asarray(ys))
