"""Synthetic graphs with planted dense regions, for scale runs and benchmarks."""

from __future__ import annotations

import numpy as np

from .graph import Graph


def planted_communities(
    n: int,
    communities: int,
    size_range=(8, 30),
    p_in=0.5,
    background: int = 0,
    seed=None,
) -> Graph:
    """Random graph made of overlapping G(size, p_in) blocks plus uniform noise edges.

    Block members are drawn independently, so blocks overlap on a few
    vertices. ``background`` extra edges are sampled uniformly over all pairs.
    Labels are the identity; isolated vertices are kept.
    """
    rng = np.random.default_rng(seed)
    lo, hi = size_range
    sizes = rng.integers(lo, hi + 1, size=communities)
    parts = []
    for size in sizes.tolist():
        members = np.sort(rng.choice(n, size=size, replace=False))
        iu, ju = np.triu_indices(size, k=1)
        keep = rng.random(len(iu)) < p_in
        parts.append(np.column_stack([members[iu[keep]], members[ju[keep]]]))
    if background:
        parts.append(rng.integers(0, n, size=(background, 2)))
    edges = np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)
    return Graph.from_edges(edges, num_vertices=n)
