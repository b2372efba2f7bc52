"""Generalised Matula–Beck peeling: κ values for every K_r.

An unprocessed K_r of minimum δ is repeatedly taken, its κ fixed to the
current δ, and every K_s through it that has no processed member lowers the
δ of its other members, never below the current κ.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from .cliques import (
    DEFAULT_MEMORY_BUDGET,
    CliqueIndex,
    _check_rs,
    build_supergraph,
    count_r_cliques,
    enumerate_r_cliques,
    subset_patterns,
    supergraph_bytes,
)
from .errors import InvariantError, UnsupportedParameterError
from .graph import Graph

STRATEGIES = ("auto", "on-demand", "materialized")
INT64_MAX = 2**63 - 1


@dataclass(frozen=True, eq=False)
class KappaAssignment:
    r: int
    s: int
    index: CliqueIndex
    kappa: np.ndarray
    processing_order: np.ndarray
    initial_degree: np.ndarray
    fingerprint: str
    strategy: str

    @property
    def max_kappa(self) -> int:
        return int(self.kappa.max()) if len(self.kappa) else 0

    @property
    def transition_times(self) -> dict:
        return transition_times(self)

    def kappa_along_order(self) -> np.ndarray:
        return self.kappa[self.processing_order]


def _empty_i64():
    return np.zeros(1, dtype=np.int64)


def _empty_i32():
    return np.zeros(0, dtype=np.int32)


def choose_strategy(g: Graph, r: int, s: int, strategy: str, memory_budget: int) -> str:
    if strategy not in STRATEGIES:
        raise UnsupportedParameterError(f"unknown strategy {strategy!r}")
    if strategy != "auto":
        return strategy
    # K_4 storage is never worth it; for s <= 3 store links when they fit
    if s == 4:
        return "on-demand"
    if supergraph_bytes(count_r_cliques(g, s), r, s) > memory_budget:
        return "on-demand"
    return "materialized"


def link_source(g: Graph, idx: CliqueIndex, s: int, strategy: str, memory_budget=DEFAULT_MEMORY_BUDGET, kern=None):
    """Kernel object yielding, per K_r, the co-members of every K_s containing it."""
    kern = kern or _backend.kernels
    r = idx.r
    if strategy == "materialized":
        sg = build_supergraph(g, r, s, nodes=idx, memory_budget=memory_budget, accept_s4=True)
        return kern.MaterializedLinks(np.ascontiguousarray(sg.links), len(idx))
    edge_off, edge_last = _empty_i64(), _empty_i32()
    tri_off, tri_last = _empty_i64(), _empty_i32()
    if r == 2:
        edge_off, edge_last = idx.offsets, idx.last
    elif r == 3:
        edge_off, edge_last = idx.parent.offsets, idx.parent.last
        tri_off, tri_last = idx.offsets, idx.last
    return kern.OnDemandLinks(
        g.indptr, g.indices, idx.cliques, s, subset_patterns(r, s), edge_off, edge_last, tri_off, tri_last
    )


def _priority(c, tie_break):
    if tie_break is None:
        return np.arange(c, dtype=np.int32)
    if isinstance(tie_break, (int, np.integer)):
        return np.random.default_rng(int(tie_break)).permutation(c).astype(np.int32)
    pr = np.ascontiguousarray(tie_break, dtype=np.int32)
    if pr.shape != (c,):
        raise ValueError("tie_break priorities must have one entry per K_r")
    return pr


def set_k(
    g: Graph,
    r: int,
    s: int,
    *,
    strategy: str = "auto",
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    tie_break=None,
    index: CliqueIndex | None = None,
    backend: str | None = None,
    check: bool = True,
) -> KappaAssignment:
    """Assign κ to every K_r of ``g`` by peeling with respect to K_s.

    Among K_r of equal minimum δ the lowest index goes first; ``tie_break``
    may instead be a seed (random priorities) or an explicit priority array.
    κ itself does not depend on that choice. ``strategy`` picks between
    materialised K_s storage and on-demand discovery from adjacency.
    """
    _check_rs(r, s)
    kern = _backend.get(backend)
    if index is None:
        index = enumerate_r_cliques(g, r, memory_budget)
    used = choose_strategy(g, r, s, strategy, memory_budget)
    src = link_source(g, index, s, used, memory_budget, kern)
    kappa, order, init = kern.peel(src, len(index), _priority(len(index), tie_break))
    ka = KappaAssignment(r, s, index, kappa, order, init, g.fingerprint, used)
    if check:
        check_monotone(ka)
    return ka


def check_monotone(ka: KappaAssignment) -> None:
    kv = ka.kappa_along_order()
    if len(kv) > 1 and np.any(np.diff(kv) < 0):
        t = int(np.flatnonzero(np.diff(kv) < 0)[0])
        raise InvariantError(f"κ decreases along processing order at time {t}")
    if np.any(ka.kappa > ka.initial_degree):
        raise InvariantError("κ exceeds the initial s-degree")


def transition_times(ka) -> dict:
    """Map each attained κ value k to the first time t_k it is assigned.

    Accepts a :class:`KappaAssignment` or a κ sequence already in processing order.
    """
    kv = ka.kappa_along_order() if isinstance(ka, KappaAssignment) else np.asarray(ka)
    values, first = np.unique(kv, return_index=True)
    return {int(k): int(t) for k, t in zip(values, first)}


class Cost(NamedTuple):
    value: int
    saturated: bool


def cost_predictor(g: Graph, idx: CliqueIndex, r: int, s: int) -> Cost:
    """Σ_v ct_r(v)·d(v)^(s-r), the on-demand running-time bound; saturates at 2^63-1."""
    _check_rs(r, s)
    if idx.r != r:
        raise UnsupportedParameterError(f"index holds {idx.r}-cliques, not {r}-cliques")
    e = s - r
    ct = idx.per_vertex_count.tolist()
    deg = g.degrees.tolist()
    total = sum(c * d**e for c, d in zip(ct, deg) if c)
    if total > INT64_MAX:
        return Cost(INT64_MAX, True)
    return Cost(total, False)


def check_transition_degrees(g: Graph, ka: KappaAssignment, sample=None, seed=0, backend=None) -> None:
    """Post-hoc check of δ exactness at transition times.

    The first K_r processed at level k must have exactly k K_s all of whose
    members have κ >= k, and every K_r must have at least κ(R) such K_s.
    ``sample`` limits the second check to that many random K_r.
    """
    kern = _backend.get(backend)
    src = link_source(g, ka.index, ka.s, "on-demand", kern=kern)
    kappa = ka.kappa
    c = len(kappa)
    firsts = {ka.processing_order[t] for t in transition_times(ka).values()}
    if sample is None or sample >= c:
        chosen = range(c)
    else:
        rng = np.random.default_rng(seed)
        chosen = sorted(set(rng.choice(c, size=sample, replace=False).tolist()) | {int(x) for x in firsts})
    for R in chosen:
        k = int(kappa[R])
        others = src.others(int(R))
        lam = np.minimum(kappa[others].min(axis=1), k) if len(others) else np.zeros(0, dtype=np.int32)
        live = int((lam >= k).sum()) if k > 0 else len(lam)
        if live < k:
            raise InvariantError(f"K_r {R} has κ={k} but only {live} K_s at level {k}")
        if R in firsts and k > 0 and live != k:
            raise InvariantError(f"δ not exact at transition time of level {k}: {live} != {k}")
