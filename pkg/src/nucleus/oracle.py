"""Brute-force reference for κ and nuclei on tiny graphs.

Everything here is deliberately naive: cliques come from checking every
vertex tuple, and nuclei from a literal delete-until-stable fixpoint. Nothing
is shared with the peeling or forest code beyond :class:`~nucleus.graph.Graph`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import OracleGuardError
from .graph import Graph

MAX_ORACLE_VERTICES = 30


def _guard(g: Graph):
    if g.n > MAX_ORACLE_VERTICES:
        raise OracleGuardError(f"oracle refuses graphs with more than {MAX_ORACLE_VERTICES} vertices (got {g.n})")


def all_cliques(g: Graph, size: int) -> list:
    """Every K_size as a sorted tuple, by checking all vertex tuples."""
    _guard(g)
    adj = [set(g.neighbors(v).tolist()) for v in range(g.n)]
    return [t for t in combinations(range(g.n), size) if all(b in adj[a] for a, b in combinations(t, 2))]


def _setup(g, r, s):
    if not 1 <= r < s <= 4:
        raise ValueError(f"need 1 <= r < s <= 4, got ({r}, {s})")
    rcl = all_cliques(g, r)
    scl = all_cliques(g, s)
    parts = {S: list(combinations(S, r)) for S in scl}
    return rcl, scl, parts


def _survivors(pool, parts, k):
    alive = set(pool)
    while True:
        deg = {}
        for S in alive:
            for R in parts[S]:
                deg[R] = deg.get(R, 0) + 1
        drop = {S for S in alive if any(deg[R] < k for R in parts[S])}
        if not drop:
            return alive, deg
        alive -= drop


def _components(alive, parts):
    owner = {}
    adj = {}
    for S in alive:
        rs = parts[S]
        for R in rs:
            adj.setdefault(R, set()).update(rs)
    comps = []
    for start in sorted(adj):
        if start in owner:
            continue
        stack, comp = [start], set()
        owner[start] = True
        while stack:
            R = stack.pop()
            comp.add(R)
            for x in adj[R]:
                if x not in owner:
                    owner[x] = True
                    stack.append(x)
        comps.append(frozenset(comp))
    return comps


def oracle_nuclei(g: Graph, r: int, s: int, k: int) -> list:
    """The k-(r,s)-nuclei of ``g`` as frozensets of K_r vertex tuples."""
    _guard(g)
    if k < 1:
        raise ValueError("k must be >= 1")
    _, scl, parts = _setup(g, r, s)
    alive, _ = _survivors(scl, parts, k)
    return sorted(_components(alive, parts), key=lambda c: min(c))


def oracle_kappa(g: Graph, r: int, s: int) -> dict:
    """κ for every K_r (keyed by vertex tuple): the largest k at which it survives the fixpoint."""
    _guard(g)
    rcl, scl, parts = _setup(g, r, s)
    kappa = dict.fromkeys(rcl, 0)
    alive = set(scl)
    k = 1
    while alive:
        alive, deg = _survivors(alive, parts, k)
        for R in deg:
            kappa[R] = k
        k += 1
    return kappa


@dataclass(frozen=True)
class OracleResult:
    kappa: dict
    nuclei: list  # (k, frozenset of K_r tuples)


def oracle(g: Graph, r: int, s: int) -> OracleResult:
    kappa = oracle_kappa(g, r, s)
    top = max(kappa.values(), default=0)
    nuclei = [(k, c) for k in range(1, top + 1) for c in oracle_nuclei(g, r, s, k)]
    return OracleResult(kappa, nuclei)
