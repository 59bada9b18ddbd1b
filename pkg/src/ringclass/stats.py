"""Ring-rate distributions, power-law tail fits, class summaries, and random geometric graphs."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy.spatial import cKDTree

from .cycles import EdgeCycle
from .graph import Graph, load_graph
from .pipeline import Decomposition
from .vfamilies import VFamily

__all__ = [
    "InsufficientData",
    "RateDistribution",
    "ring_rate_distribution",
    "average_rates",
    "fit_power_law",
    "class_statistics",
    "RggSpec",
    "rgg_radius",
    "generate_rgg",
    "rgg_study",
]


class InsufficientData(ValueError):
    pass


@dataclass
class RateDistribution:
    """Rings per node by ring length."""

    rates: dict[int, Fraction]
    n_nodes: int
    source: str

    def as_floats(self) -> dict[int, float]:
        return {k: float(v) for k, v in sorted(self.rates.items())}

    def csv_rows(self) -> list[str]:
        return [f"{k},{float(v):.12g},{self.source}" for k, v in sorted(self.rates.items())]


def _length_counts(frame) -> tuple[Counter, str]:
    counts: Counter = Counter()
    if isinstance(frame, Decomposition):
        for comp in frame.components:
            for s in comp.classes.sli:
                counts[s.length] += s.count
        return counts, "relevant"
    items = list(frame)
    if items and isinstance(items[0], VFamily):
        for f in items:
            if f.relevant:
                counts[f.length] += f.count
        return counts, "relevant"
    for c in items:
        counts[len(c) if isinstance(c, EdgeCycle) else int(c)] += 1
    return counts, "mcb"


def ring_rate_distribution(frame, n_nodes: int, source: str | None = None) -> RateDistribution:
    """Rates for one frame.

    ``frame`` is a :class:`Decomposition` or a list of relevance-flagged
    families (relevant-cycle counts, never enumerated), or a list of cycles or
    cycle lengths (an MCB).
    """
    if n_nodes <= 0:
        raise ValueError("n_nodes must be positive")
    counts, tag = _length_counts(frame)
    return RateDistribution(
        {k: Fraction(v, n_nodes) for k, v in sorted(counts.items()) if v}, n_nodes, source or tag
    )


def average_rates(dists: Iterable[RateDistribution]) -> RateDistribution:
    """Per-frame average of several distributions."""
    dists = list(dists)
    if not dists:
        raise InsufficientData("no frames")
    total: dict[int, Fraction] = {}
    for d in dists:
        for k, v in d.rates.items():
            total[k] = total.get(k, Fraction(0)) + v
    n = len(dists)
    return RateDistribution(
        {k: v / n for k, v in sorted(total.items())},
        round(sum(d.n_nodes for d in dists) / n),
        dists[0].source,
    )


def fit_power_law(dist: RateDistribution | dict, k_min: int = 15, k_max: int = 40) -> tuple[float, float]:
    """Least-squares fit of ``log rate = log C - alpha log k`` on nonzero bins."""
    rates = dist.rates if isinstance(dist, RateDistribution) else dist
    pts = [(k, float(v)) for k, v in rates.items() if k_min <= k <= k_max and v > 0]
    if len(pts) < 2:
        raise InsufficientData(f"{len(pts)} nonzero bins in [{k_min}, {k_max}]")
    x = np.log([k for k, _ in pts])
    y = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(x, y, 1)
    return float(-slope), float(math.exp(intercept))


def class_statistics(dec: Decomposition) -> dict:
    sli, pis = [], []
    single = 0
    for comp in dec.components:
        for s in comp.classes.sli:
            sli.append({"length": s.length, "count": s.count})
        for p in comp.classes.pi:
            pis.append(
                {"length": p.length, "rank": p.rank, "sli_classes": len(p.sli), "polyhedra": len(p.polyhedra)}
            )
            single += len(p.sli) == 1
    return {
        "sli": sli,
        "pi": pis,
        "single_sli_fraction": single / len(pis) if pis else 0.0,
    }


@dataclass(frozen=True)
class RggSpec:
    n: int
    mean_degree: float
    seed: int | None = None
    dimension: int = 3
    periodic: bool = True


def rgg_radius(n: int, mean_degree: float) -> float:
    """Radius with ``(n - 1) * (4/3) pi r^3 = <k>``."""
    return (3.0 * mean_degree / (4.0 * math.pi * (n - 1))) ** (1.0 / 3.0)


def generate_rgg(spec: RggSpec, rng: np.random.Generator | None = None) -> Graph:
    """Uniform points in the unit cube joined when closer than the radius."""
    if spec.n < 2:
        raise ValueError("need at least 2 nodes")
    if spec.dimension != 3:
        raise ValueError("only 3-dimensional graphs are supported")
    rng = rng if rng is not None else np.random.default_rng(spec.seed)
    pts = rng.random((spec.n, 3))
    r = rgg_radius(spec.n, spec.mean_degree)
    if spec.periodic:
        if r >= 0.5:
            raise ValueError("radius too large for the unit torus")
        tree = cKDTree(pts, boxsize=1.0)
    else:
        tree = cKDTree(pts)
    pairs = tree.query_pairs(r, output_type="ndarray")
    return load_graph(map(tuple, pairs.tolist()), spec.n)


@dataclass
class RggRun:
    seed: int
    n: int
    nu: int
    relevant: int
    mcb_rates: RateDistribution
    relevant_rates: RateDistribution
    extra: dict = field(default_factory=dict)


def rgg_study(n: int, mean_degree: float, seeds: Iterable[int]) -> list[RggRun]:
    """Decompose one RGG per seed; MCB rates use the basis lengths, which
    every MCB shares."""
    from .pipeline import decompose

    runs = []
    for seed in seeds:
        g = generate_rgg(RggSpec(n, mean_degree, seed))
        dec = decompose(g)
        lengths = [ln for comp in dec.components for ln in comp.mcb.lengths]
        runs.append(
            RggRun(
                seed,
                n,
                dec.nu,
                dec.relevant_count,
                ring_rate_distribution(lengths, n, "mcb"),
                ring_rate_distribution(dec, n, "relevant"),
            )
        )
    return runs
