"""Top-k instances by flow (floating threshold) and the max-min DP for top-1."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .graph import TimeSeriesGraph
from .instances import (
    InstanceSet,
    MotifInstance,
    Window,
    _dedupe,
    canonical_order,
    candidate_windows,
    run_kernel,
)
from .matcher import MatchSet, StructuralMatch, find_structural_matches
from .motif import Motif, check


def ranked_order(inst: InstanceSet) -> np.ndarray:
    """Flow descending, then span start, match order, assignment ranges."""
    if len(inst) == 0:
        return np.arange(0)
    rng = inst.ranges
    keys = [rng[:, c] for c in range(rng.shape[1] - 1, -1, -1)]
    keys += [inst.match_ids, inst.g.times[rng[:, 0]], -inst.flows]
    return np.lexsort(keys)


def topk(g: TimeSeriesGraph, motif: Motif, k: int, *, threads: int = 1, matches: MatchSet | None = None) -> InstanceSet:
    """The k maximal instances of largest flow (phi ignored), best first."""
    if k < 1:
        raise ValueError("k must be >= 1")
    check(motif)
    if matches is None:
        matches = find_structural_matches(g, motif)
    ids, rng, fl = run_kernel(matches, motif.delta, 0.0, k=k, threads=threads)
    order = canonical_order(ids, rng)
    ids, rng, fl = _dedupe(ids[order], rng[order], fl[order])
    found = InstanceSet(matches, ids, rng, fl)
    return found.take(ranked_order(found)[:k])


@dataclass
class DpTable:
    timestamps: np.ndarray
    rows: np.ndarray  # rows[k, i]: best flow of the first k+1 edges over timestamps[:i+1]
    splits: np.ndarray  # first maximising split index, -1 when infeasible
    edge_weights: np.ndarray

    @property
    def maxflow(self) -> float:
        if self.rows.shape[1] == 0:
            return 0.0
        return float(self.rows[-1, -1])


def _window_of(window) -> tuple:
    if isinstance(window, Window):
        return window.start, window.end
    return tuple(window)


def dp_table(match: StructuralMatch, window, g: TimeSeriesGraph) -> DpTable:
    s, e = _window_of(window)
    pr = np.array(match.pair_ids, dtype=np.int64)
    grid, w = kernels.window_grid(g.times, g.flows, g.offsets, pr, s, e)
    rows, args = kernels.dp_table(w)
    return DpTable(grid, rows, args, w)


def dp_maxflow(match: StructuralMatch, window, g: TimeSeriesGraph) -> float:
    return dp_table(match, window, g).maxflow


def traceback(table: DpTable, match: StructuralMatch, g: TimeSeriesGraph) -> tuple[tuple[int, int], ...] | None:
    """Index ranges (per edge, into the CSR arrays) of the witness behind the last cell."""
    m, tau = table.rows.shape
    if tau == 0 or table.rows[-1, -1] <= 0:
        return None
    grid = table.timestamps
    spans = []
    i = tau - 1
    for k in range(m - 1, -1, -1):
        j = int(table.splits[k, i])
        spans.append((grid[j], grid[i]))
        i = j - 1
    spans.reverse()
    out = []
    for p, (a, b) in zip(match.pair_ids, spans):
        lo, hi = g.offsets[p], g.offsets[p + 1]
        ts = g.times[lo:hi]
        out.append((int(lo + np.searchsorted(ts, a, "left")), int(lo + np.searchsorted(ts, b, "right") - 1)))
    return tuple(out)


def extend_to_maximal(ranges, match: StructuralMatch, g: TimeSeriesGraph, delta):
    """Grow edge-set ranges one neighbour at a time until nothing more fits."""
    lo = [r[0] for r in ranges]
    hi = [r[1] for r in ranges]
    t = g.times
    m = len(lo)
    changed = True
    while changed:
        changed = False
        for i in range(m):
            base, stop = g.offsets[match.pair_ids[i]], g.offsets[match.pair_ids[i] + 1]
            for side in (-1, 1):
                j = lo[i] - 1 if side < 0 else hi[i] + 1
                if j < base or j >= stop:
                    continue
                if i > 0 and not t[j] > t[hi[i - 1]]:
                    continue
                if i < m - 1 and not t[j] < t[lo[i + 1]]:
                    continue
                a = min(t[lo[0]], t[j])
                b = max(t[hi[-1]], t[j])
                if b - a <= delta:
                    if side < 0:
                        lo[i] = j
                    else:
                        hi[i] = j
                    changed = True
    return tuple(zip(lo, hi))


class Top1(NamedTuple):
    flow: float
    instance: MotifInstance


def _scan(g, matches, delta):
    return kernels.scan_dp(g.times, g.flows, g.offsets, matches.pair_ids, float(delta), True)


def top1(g: TimeSeriesGraph, motif: Motif, *, matches: MatchSet | None = None) -> Top1 | None:
    """Best instance flow via the DP over every match and window; None when no instance exists."""
    check(motif)
    if matches is None:
        matches = find_structural_matches(g, motif)
    if len(matches) == 0:
        return None
    ids, anchors, vals = _scan(g, matches, motif.delta)
    if len(vals) == 0 or vals.max() <= 0:
        return None
    best = int(np.argmax(vals))  # first maximum: earliest match, then earliest window
    match = matches[int(ids[best])]
    s = g.times[anchors[best]]
    table = dp_table(match, (s, s + motif.delta), g)
    ranges = extend_to_maximal(traceback(table, match, g), match, g, motif.delta)
    flat = np.array([x for r in ranges for x in r], dtype=np.int64)[None, :]
    inst = InstanceSet(matches.subset([int(ids[best])]), np.zeros(1, np.int64), flat, np.array([vals[best]]))
    return Top1(float(vals[best]), inst[0])


def top1_grouped(g: TimeSeriesGraph, motif: Motif, group_by: str = "match", *, matches: MatchSet | None = None) -> list[tuple]:
    """Per-match or per-(match, window) DP flows, in match then window order.

    Rows are ``(walk, flow)`` for ``match`` and ``(walk, (start, end), flow)`` for ``window``.
    """
    if group_by not in ("match", "window"):
        raise ValueError(f"group_by must be 'match' or 'window', got {group_by!r}")
    check(motif)
    if matches is None:
        matches = find_structural_matches(g, motif)
    if len(matches) == 0:
        return []
    ids, anchors, vals = _scan(g, matches, motif.delta)
    rows = []
    if group_by == "match":
        best = np.zeros(len(matches))
        np.maximum.at(best, ids, vals)
        for i in range(len(matches)):
            rows.append((matches[i].walk, float(best[i])))
    else:
        for i, a, v in zip(ids.tolist(), anchors.tolist(), vals.tolist()):
            s = g.times[a].item()
            rows.append((matches[i].walk, (s, s + motif.delta), float(v)))
    return rows


__all__ = [
    "DpTable",
    "Top1",
    "candidate_windows",
    "dp_maxflow",
    "dp_table",
    "extend_to_maximal",
    "top1",
    "top1_grouped",
    "topk",
    "traceback",
]
