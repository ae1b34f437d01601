"""Flow-permutation null model and motif significance scores."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import TimeSeriesGraph
from .instances import count_instances
from .matcher import MatchSet, find_structural_matches
from .motif import Motif, check


def permute_flows(g: TimeSeriesGraph, seed: int) -> TimeSeriesGraph:
    """Shuffle all flow values across all interactions; structure and timestamps stay put.

    The shuffle acts on flows in canonical (pair, time) order, so a seed means
    the same graph on every platform.
    """
    rng = np.random.default_rng(seed)
    return g.with_flows(rng.permutation(g.flows))


def zscore(real: float, mean: float, std: float) -> float | None:
    if std == 0:
        return None
    return (real - mean) / std


@dataclass
class NullModelReport:
    motif: str
    real_count: int
    sample_counts: list[int] = field(default_factory=list)
    mean: float = 0.0
    std: float = 0.0
    z: float | None = None
    p_value: float = 0.0

    @property
    def z_defined(self) -> bool:
        return self.z is not None


def significance_run(
    g: TimeSeriesGraph, motif: Motif, samples: int = 20, base_seed: int = 0, *, threads: int = 1
) -> NullModelReport:
    """Count maximal instances in ``g`` and in ``samples`` flow-permuted copies.

    Sample ``i`` (1-based) uses seed ``base_seed + i``. The standard deviation
    is the population one.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    check(motif)
    matches = find_structural_matches(g, motif)
    real = count_instances(g, motif, matches=matches, threads=threads)
    counts = []
    for i in range(1, samples + 1):
        gr = permute_flows(g, base_seed + i)
        # same structure, so the structural matches carry over
        shared = MatchSet(gr, motif, matches.walks, matches.pair_ids)
        counts.append(count_instances(gr, motif, matches=shared, threads=threads))
    arr = np.array(counts, dtype=np.float64)
    mean = float(arr.mean())
    std = float(math.sqrt(float(((arr - mean) ** 2).mean())))
    return NullModelReport(
        motif=str(motif),
        real_count=real,
        sample_counts=counts,
        mean=mean,
        std=std,
        z=zscore(real, mean, std),
        p_value=float((arr > real).sum() / samples),
    )
