"""Phase two: sliding windows and recursive prefix search for maximal instances."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .graph import Interaction, TimeSeriesGraph
from .matcher import MatchSet, StructuralMatch, find_structural_matches
from .motif import Motif, check


class Window(NamedTuple):
    start: int | float
    end: int | float
    skippable: bool = False


@dataclass(frozen=True)
class MotifInstance:
    match: StructuralMatch
    assignment: tuple[tuple[Interaction, ...], ...]

    @property
    def edge_flows(self) -> tuple[float, ...]:
        return tuple(math.fsum(x.f for x in s) for s in self.assignment)

    @property
    def flow(self) -> float:
        return min(self.edge_flows)

    @property
    def span(self) -> tuple:
        return self.assignment[0][0].t, self.assignment[-1][-1].t

    @property
    def walk(self) -> tuple:
        return self.match.walk

    def key(self) -> tuple:
        return self.match.walk, tuple(tuple(s) for s in self.assignment)


def _float(x) -> float:
    return float(x)


def _as_arrays(g: TimeSeriesGraph, match: StructuralMatch) -> np.ndarray:
    return np.array(match.pair_ids, dtype=np.int64)


def candidate_windows(match: StructuralMatch, g: TimeSeriesGraph, delta) -> list[Window]:
    """One window per first-edge timestamp; redundant positions flagged as skippable."""
    pr = _as_arrays(g, match)
    keep = kernels.window_keep(g.times, g.offsets, pr[0], pr[-1], _float(delta))
    ts = g.pair_arrays(int(pr[0]))[0].tolist()
    return [Window(t, t + delta, not bool(k)) for t, k in zip(ts, keep)]


def find_instances(
    g: TimeSeriesGraph,
    match: StructuralMatch,
    window: Window,
    phi,
    first_edge: int = 0,
    after=None,
) -> list[tuple[tuple[Interaction, ...], ...]]:
    """Edge-set assignments for ``match`` edges ``first_edge..m-1`` inside ``window``.

    ``after`` makes the window open on the left (only t > after qualify), which
    is how the recursion hands the remainder of the window to the next edge.
    Results are raw candidates; maximality is checked separately.
    """
    ser = g.pair_series(match.pair_ids[first_edge])

    def inside(x):
        return (x.t > after if after is not None else x.t >= window.start) and x.t <= window.end

    elems = [x for x in ser if inside(x)]
    if first_edge == len(match.pair_ids) - 1:
        if elems and math.fsum(x.f for x in elems) >= phi:
            return [(tuple(elems),)]
        return []
    out = []
    for i in range(len(elems)):
        prefix = tuple(elems[: i + 1])
        if math.fsum(x.f for x in prefix) < phi:
            continue
        for rest in find_instances(g, match, window, phi, first_edge + 1, prefix[-1].t):
            out.append((prefix,) + rest)
    return out


def is_maximal(inst: MotifInstance, g: TimeSeriesGraph, delta) -> bool:
    """No interaction of a matched series can join its edge-set without breaking order or duration."""
    a = inst.assignment
    m = len(a)
    lo_t = min(x.t for s in a for x in s)
    hi_t = max(x.t for s in a for x in s)
    for i in range(m):
        members = set(a[i])
        prev_max = max(x.t for x in a[i - 1]) if i > 0 else None
        next_min = min(x.t for x in a[i + 1]) if i < m - 1 else None
        for x in g.pair_series(inst.match.pair_ids[i]):
            if x in members:
                continue
            if prev_max is not None and not x.t > prev_max:
                continue
            if next_min is not None and not x.t < next_min:
                continue
            if max(hi_t, x.t) - min(lo_t, x.t) <= delta:
                return False
    return True


class InstanceSet(Sequence):
    """Maximal instances as range tables over the graph's CSR arrays."""

    def __init__(self, matches: MatchSet, match_ids, ranges, flows):
        self.matches = matches
        self.g = matches.g
        self.match_ids = match_ids
        self.ranges = ranges
        self.flows = flows

    def __len__(self):
        return len(self.match_ids)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        match = self.matches[int(self.match_ids[i])]
        r = self.ranges[i].tolist()
        ts, fs = self.g.times, self.g.flows
        assignment = tuple(
            tuple(Interaction(t, f) for t, f in zip(ts[r[2 * e] : r[2 * e + 1] + 1].tolist(), fs[r[2 * e] : r[2 * e + 1] + 1].tolist()))
            for e in range(len(r) // 2)
        )
        return MotifInstance(match, assignment)

    def spans(self) -> np.ndarray:
        t = self.g.times
        return np.stack([t[self.ranges[:, 0]], t[self.ranges[:, -1]]], axis=1) if len(self) else np.empty((0, 2), t.dtype)

    def take(self, idx) -> "InstanceSet":
        return InstanceSet(self.matches, self.match_ids[idx], self.ranges[idx], self.flows[idx])


def _chunks(n: int, parts: int) -> list[slice]:
    parts = max(1, min(parts, n)) if n else 1
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [slice(a, b) for a, b in zip(bounds[:-1], bounds[1:])]


def run_kernel(matches: MatchSet, delta, phi, *, k=0, prune=True, skip=True, threads=1):
    """Run the instance kernel over match chunks and merge in match order."""
    g = matches.g
    m = matches.pair_ids.shape[1]
    if len(matches) == 0:
        return np.empty(0, np.int64), np.empty((0, 2 * m), np.int64), np.empty(0)

    def job(sl):
        ids, rng, fl = kernels.enumerate_kernel(
            g.times, g.flows, g.offsets, matches.pair_ids[sl], _float(delta), _float(phi), int(k), bool(prune), bool(skip)
        )
        return ids + sl.start, rng, fl

    slices = _chunks(len(matches), threads)
    if threads > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(job, slices))
    else:
        parts = [job(sl) for sl in slices]
    ids = np.concatenate([p[0] for p in parts])
    rng = np.concatenate([p[1] for p in parts])
    fl = np.concatenate([p[2] for p in parts])
    return ids, rng, fl


def canonical_order(ids: np.ndarray, rng: np.ndarray) -> np.ndarray:
    """Permutation sorting by (match, span start, per-edge index ranges)."""
    if len(ids) == 0:
        return np.arange(0)
    keys = [rng[:, c] for c in range(rng.shape[1] - 1, -1, -1)] + [ids]
    return np.lexsort(keys)


def _dedupe(ids, rng, fl):
    if len(ids) < 2:
        return ids, rng, fl
    same = (ids[1:] == ids[:-1]) & np.all(rng[1:] == rng[:-1], axis=1)
    keep = np.concatenate(([True], ~same))
    return ids[keep], rng[keep], fl[keep]


def enumerate_instances(
    g: TimeSeriesGraph,
    motif: Motif,
    *,
    threads: int = 1,
    prune: bool = True,
    skip: bool = True,
    matches: MatchSet | None = None,
) -> InstanceSet:
    """All maximal instances of ``motif`` (with its delta and phi) in ``g``."""
    check(motif)
    if matches is None:
        matches = find_structural_matches(g, motif)
    ids, rng, fl = run_kernel(matches, motif.delta, motif.phi, prune=prune, skip=skip, threads=threads)
    order = canonical_order(ids, rng)
    ids, rng, fl = _dedupe(ids[order], rng[order], fl[order])
    return InstanceSet(matches, ids, rng, fl)


def count_instances(g: TimeSeriesGraph, motif: Motif, *, threads: int = 1, matches: MatchSet | None = None) -> int:
    return len(enumerate_instances(g, motif, threads=threads, matches=matches))
