"""Shared builders for randomized tests. All randomness flows through a passed-in rng."""

from __future__ import annotations

import numpy as np

from pairclust import Graph


def random_undirected(rng, n, p=0.35, weighted=False) -> Graph:
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                w = float(rng.uniform(0.2, 3.0)) if weighted else 1.0
                edges.append((i, j, w))
    if not edges:
        edges = [(0, 1, 1.0)] if n >= 2 else []
    return Graph(n, edges)


def random_directed(rng, n, p=0.3, weighted=False) -> Graph:
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                w = float(rng.uniform(0.2, 3.0)) if weighted else 1.0
                edges.append((i, j, w))
    if not edges:
        edges = [(0, 1, 1.0)] if n >= 2 else []
    return Graph(n, edges, directed=True)


def random_connected_undirected(rng, n, p=0.5, weighted=False) -> Graph:
    # spanning path first, then extra random edges
    perm = rng.permutation(n)
    edges = []
    for a, b in zip(perm[:-1], perm[1:]):
        w = float(rng.uniform(0.2, 3.0)) if weighted else 1.0
        edges.append((int(a), int(b), w))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                w = float(rng.uniform(0.2, 3.0)) if weighted else 1.0
                edges.append((i, j, w))
    return Graph(n, edges)


def random_disjoint_pair(rng, n):
    """Random disjoint (L, R), possibly empty on one side but not both."""
    while True:
        assign = rng.integers(0, 3, size=n)
        l = np.flatnonzero(assign == 1)
        r = np.flatnonzero(assign == 2)
        if l.size or r.size:
            return l, r


def mass_to_dense(p: dict, dim: int) -> np.ndarray:
    vec = np.zeros(dim)
    for key, val in p.items():
        vec[key] = val
    return vec


def dense_to_mass(vec: np.ndarray) -> dict:
    return {i: float(v) for i, v in enumerate(vec) if v != 0.0}
