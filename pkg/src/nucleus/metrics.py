"""Density and overlap statistics over forest views."""

from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .forest import NucleusForest


def _as_view(f):
    return f.view() if isinstance(f, NucleusForest) else f


def _bins(bin_width) -> int:
    w = Fraction(str(bin_width)) if isinstance(bin_width, float) else Fraction(bin_width)
    if w <= 0 or w > 1 or (1 / w).denominator != 1:
        raise ValueError(f"bin width {bin_width} does not divide 1 evenly")
    return int(1 / w)


@dataclass(frozen=True)
class DensityHistogram:
    bin_edges: tuple
    counts: tuple
    min_size: int | None = None

    @property
    def total(self) -> int:
        return sum(self.counts)

    def rows(self):
        return [(self.bin_edges[i], self.bin_edges[i + 1], c) for i, c in enumerate(self.counts)]


def density_bin(density: Fraction, nbins: int) -> int:
    # lower edge inclusive; 1.0 goes to the last bin
    return min(int(density * nbins), nbins - 1)


def density_histogram(f, bin_width=0.05, min_size: int | None = None) -> DensityHistogram:
    """Count the nuclei of a view per density bin of width ``bin_width``.

    ``min_size`` is informational (the filter already applied to the view);
    pass a plain forest to histogram every node.
    """
    view = _as_view(f)
    nb = _bins(bin_width)
    counts = [0] * nb
    for v in view:
        counts[density_bin(view.density_exact(v), nb)] += 1
    edges = tuple(Fraction(i, nb) for i in range(nb + 1))
    return DensityHistogram(edges, tuple(counts), min_size)


def size_density_scatter(f) -> list:
    """(size, density) per nucleus, sorted by size then density."""
    view = _as_view(f)
    return sorted((view.size(v), view.density(v)) for v in view)


@dataclass(frozen=True)
class OverlapRecord:
    node_a: int
    node_b: int
    overlap_vertices: int
    jaccard: Fraction
    density_a: Fraction
    density_b: Fraction


def overlap_analysis(f, min_overlap: int = 1) -> list:
    """Every unordered non-ancestor pair of nuclei sharing at least ``min_overlap`` vertices.

    Only pairs that co-occur in some vertex's nucleus list are ever counted,
    so the cost is the sum over vertices of (nuclei containing it)^2 rather
    than all pairs. ``node_a`` is the denser nucleus of each pair.
    """
    if min_overlap < 1:
        raise ValueError("min_overlap must be >= 1")
    view = _as_view(f)
    forest = view.forest
    holders = defaultdict(list)
    for v in view:
        for x in forest.vertex_sets[v].tolist():
            holders[x].append(v)
    shared = Counter()
    for nodes in holders.values():
        if len(nodes) < 2:
            continue
        for a, b in combinations(nodes, 2):
            if not (forest.is_ancestor(a, b) or forest.is_ancestor(b, a)):
                shared[a, b] += 1
    out = []
    for (a, b), common in sorted(shared.items()):
        if common < min_overlap:
            continue
        da, db = view.density_exact(a), view.density_exact(b)
        if db > da:
            a, b, da, db = b, a, db, da
        union = view.size(a) + view.size(b) - common
        out.append(OverlapRecord(a, b, common, Fraction(common, union), da, db))
    return out


def overlap_histogram(records) -> dict:
    """Number of pairs per overlap size."""
    return dict(sorted(Counter(r.overlap_vertices for r in records).items()))


def density_violations(f) -> list:
    """Forest edges where the child is sparser than its parent (reported, not asserted)."""
    view = _as_view(f)
    return [
        (view.parent[v], v)
        for v in view
        if view.parent[v] >= 0 and view.density_exact(v) < view.density_exact(view.parent[v])
    ]


def _fmt(x) -> str:
    return f"{float(x):.6f}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def histogram_csv(h: DensityHistogram) -> str:
    return _csv(["bin_low", "bin_high", "count"], [(_fmt(lo), _fmt(hi), c) for lo, hi, c in h.rows()])


def scatter_csv(points) -> str:
    return _csv(["size", "density"], [(s, _fmt(d)) for s, d in points])


def overlaps_csv(records) -> str:
    return _csv(
        ["node_a", "node_b", "overlap", "jaccard", "density_hi", "density_lo"],
        [
            (r.node_a, r.node_b, r.overlap_vertices, _fmt(r.jaccard), _fmt(r.density_a), _fmt(r.density_b))
            for r in records
        ],
    )


__all__ = [
    "DensityHistogram",
    "OverlapRecord",
    "density_histogram",
    "size_density_scatter",
    "overlap_analysis",
    "overlap_histogram",
    "density_violations",
    "histogram_csv",
    "scatter_csv",
    "overlaps_csv",
]
