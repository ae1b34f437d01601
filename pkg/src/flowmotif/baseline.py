"""Join-based competitor: per-pair interval tuples joined edge by edge along the motif."""
from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .graph import TimeSeriesGraph
from .instances import InstanceSet, _dedupe, canonical_order
from .kernels import ranges_maximal
from .matcher import MatchSet
from .motif import Motif, check


class IntervalTuple(NamedTuple):
    u: object
    v: object
    t_s: int | float
    t_e: int | float
    f: float
    # CSR index range of the run; not part of the printed tuple
    lo: int = -1
    hi: int = -1


@dataclass
class PartialChain:
    tuples: tuple[IntervalTuple, ...]
    nodes: tuple = field(default=())

    @property
    def start(self):
        return self.tuples[0].t_s

    @property
    def last(self) -> IntervalTuple:
        return self.tuples[-1]

    @property
    def span(self):
        return self.tuples[-1].t_e - self.tuples[0].t_s


def build_tuples(g: TimeSeriesGraph, delta, phi) -> dict[tuple, list[IntervalTuple]]:
    """Every contiguous run of each series spanning at most delta, with flow >= phi."""
    out = {}
    for p in range(g.n_pairs):
        u, v = g.pair_nodes(p)
        base = int(g.offsets[p])
        ts, fs = g.pair_arrays(p)
        ts = ts.tolist()
        fs = fs.tolist()
        tuples = []
        for a in range(len(ts)):
            total = 0.0
            for b in range(a, len(ts)):
                if ts[b] - ts[a] > delta:
                    break
                total += fs[b]
                if total >= phi:
                    tuples.append(IntervalTuple(u, v, ts[a], ts[b], total, base + a, base + b))
        out[(u, v)] = tuples
    return out


class TupleTables:
    """The two sorted views of all tuples: by source vertex (C1) and by target vertex (C2)."""

    def __init__(self, per_pair: dict[tuple, list[IntervalTuple]]):
        flat = [t for ts in per_pair.values() for t in ts]
        self.by_u = sorted(flat, key=lambda t: (t.u, t.t_s, t.t_e, t.v))
        self.by_v = sorted(flat, key=lambda t: (t.v, t.t_s, t.t_e, t.u))
        self._u_index: dict = defaultdict(list)
        for t in self.by_u:
            self._u_index[t.u].append(t)
        self._u_starts = {u: [t.t_s for t in ts] for u, ts in self._u_index.items()}

    def __len__(self):
        return len(self.by_u)

    def from_node(self, u, after):
        """Tuples leaving ``u`` with t_s > after, in t_s order."""
        ts = self._u_index.get(u)
        if not ts:
            return []
        return ts[bisect.bisect_right(self._u_starts[u], after) :]


def join_level(left: list[PartialChain], right, delta) -> list[PartialChain]:
    """Extend chains by a tuple that starts at the chain's last target, strictly later, within delta."""
    if not isinstance(right, TupleTables):
        right = TupleTables({None: list(right)})
    out = []
    for chain in left:
        last = chain.last
        for t in right.from_node(last.v, last.t_e):
            if t.t_s - chain.start > delta:
                break
            if t.t_e - chain.start > delta:
                continue
            out.append(PartialChain(chain.tuples + (t,), chain.nodes + (t.v,)))
    return out


def _consistent(nodes: tuple, slots: tuple) -> bool:
    k = len(nodes)
    assigned: dict = {}
    used: dict = {}
    for node, slot in zip(nodes, slots[:k]):
        if slot in assigned:
            if assigned[slot] != node:
                return False
        else:
            if node in used:
                return False
            assigned[slot] = node
            used[node] = slot
    return True


class JoinResult(NamedTuple):
    instances: InstanceSet
    level_counts: list[int]


def run_join(g: TimeSeriesGraph, motif: Motif, matches: MatchSet | None = None) -> JoinResult:
    """Hierarchical join; the result is filtered to maximal instances in enumerator order."""
    from .matcher import find_structural_matches

    check(motif)
    delta, phi = motif.delta, motif.phi
    slots = motif.slots()
    m = motif.m
    tables = TupleTables(build_tuples(g, delta, phi))
    chains = [PartialChain((t,), (t.u, t.v)) for t in tables.by_u]
    chains = [c for c in chains if _consistent(c.nodes, slots)]
    counts = [len(tables), len(chains)]
    for _ in range(1, m):
        chains = join_level(chains, tables, delta)
        chains = [c for c in chains if _consistent(c.nodes, slots)]
        counts.append(len(chains))

    if matches is None:
        matches = find_structural_matches(g, motif)
    walk_index = {tuple(w): i for i, w in enumerate(matches.walks.tolist())}
    node_idx = g.node_index
    ids, rows, fl = [], [], []
    for c in chains:
        walk = tuple(node_idx[x] for x in c.nodes)
        mi = walk_index[walk]
        lo = np.array([t.lo for t in c.tuples], dtype=np.int64)
        hi = np.array([t.hi for t in c.tuples], dtype=np.int64)
        if not ranges_maximal(g.times, g.offsets, matches.pair_ids[mi], lo, hi, float(delta)):
            continue
        ids.append(mi)
        fl.append(min(t.f for t in c.tuples))
        rows.append([x for pair in zip(lo.tolist(), hi.tolist()) for x in pair])
    ids = np.array(ids, dtype=np.int64)
    rng = np.array(rows, dtype=np.int64).reshape(len(rows), 2 * m)
    fl = np.array(fl, dtype=np.float64)
    order = canonical_order(ids, rng)
    ids, rng, fl = _dedupe(ids[order], rng[order], fl[order])
    return JoinResult(InstanceSet(matches, ids, rng, fl), counts)

