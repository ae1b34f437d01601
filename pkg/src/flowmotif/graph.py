"""Interaction records and the time-series graph built from them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed or inconsistent interaction input."""


class Interaction(NamedTuple):
    t: int | float
    f: float


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TimeSeriesGraph:
    """Nodes plus one time-ordered interaction series per connected ordered pair.

    Storage is CSR-like: pair ``p`` owns ``times[offsets[p]:offsets[p+1]]`` and
    the matching slice of ``flows``. Pairs are sorted by (source, target) node
    index and node indices follow sorted node-id order, so the out-pairs of a
    node form a contiguous block ``out_offsets[u]:out_offsets[u+1]``.
    """

    nodes: tuple
    pairs: np.ndarray  # (P, 2) int64 node indices
    offsets: np.ndarray  # (P + 1,) int64
    times: np.ndarray  # int64, or float64 when any timestamp is fractional
    flows: np.ndarray  # float64
    out_offsets: np.ndarray = field(repr=False)
    node_index: dict = field(repr=False)
    pair_index: dict = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    @property
    def n_interactions(self) -> int:
        return len(self.times)

    def pair_id(self, u: Hashable, v: Hashable) -> int | None:
        ui = self.node_index.get(u)
        vi = self.node_index.get(v)
        if ui is None or vi is None:
            return None
        return self.pair_index.get((ui, vi))

    def pair_nodes(self, p: int) -> tuple:
        a, b = self.pairs[p]
        return self.nodes[a], self.nodes[b]

    def pair_arrays(self, p: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.offsets[p], self.offsets[p + 1]
        return self.times[lo:hi], self.flows[lo:hi]

    def pair_series(self, p: int) -> tuple[Interaction, ...]:
        ts, fs = self.pair_arrays(p)
        return tuple(Interaction(t, f) for t, f in zip(ts.tolist(), fs.tolist()))

    def iter_pairs(self):
        for p in range(self.n_pairs):
            u, v = self.pair_nodes(p)
            yield u, v, self.pair_series(p)

    def records(self) -> list[tuple]:
        """Interactions as (src, dst, t, f) in canonical (pair, time) order."""
        out = []
        for u, v, ser in self.iter_pairs():
            out.extend((u, v, t, f) for t, f in ser)
        return out

    def with_flows(self, flows: np.ndarray) -> "TimeSeriesGraph":
        """Same structure and timestamps, new flow values in canonical order."""
        flows = np.asarray(flows, dtype=np.float64).copy()
        if flows.shape != self.flows.shape:
            raise GraphError("flow vector does not match interaction count")
        return TimeSeriesGraph(
            nodes=self.nodes,
            pairs=self.pairs,
            offsets=self.offsets,
            times=self.times,
            flows=_readonly(flows),
            out_offsets=self.out_offsets,
            node_index=self.node_index,
            pair_index=self.pair_index,
        )

    def __eq__(self, other):
        if not isinstance(other, TimeSeriesGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and np.array_equal(self.pairs, other.pairs)
            and np.array_equal(self.offsets, other.offsets)
            and self.times.dtype == other.times.dtype
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.flows, other.flows)
        )

    __hash__ = None


def _check_number(x, what: str, line: int | None):
    where = f" (line {line})" if line is not None else ""
    if isinstance(x, bool) or not isinstance(x, (int, float, np.integer, np.floating)):
        raise GraphError(f"{what} must be numeric{where}: {x!r}")
    if not math.isfinite(x):
        raise GraphError(f"{what} must be finite{where}: {x!r}")


def ingest(records: Iterable[Sequence], lines: Sequence[int] | None = None) -> TimeSeriesGraph:
    """Group (src, dst, t, f) records by ordered pair and sort each series by time.

    ``lines`` optionally gives the source line number of each record so errors
    can point back into a file.
    """
    records = list(records)
    if lines is None:
        lines = [None] * len(records)
    groups: dict[tuple, list[tuple]] = {}
    node_set = set()
    all_int = True
    for rec, line in zip(records, lines):
        try:
            src, dst, t, f = rec
        except (TypeError, ValueError):
            raise GraphError(f"record must be (src, dst, t, f): {rec!r}") from None
        _check_number(t, "timestamp", line)
        _check_number(f, "flow", line)
        if f <= 0:
            where = f" at line {line}" if line is not None else ""
            raise GraphError(f"non-positive flow {f!r}{where}")
        if not isinstance(t, (int, np.integer)):
            all_int = False
        node_set.add(src)
        node_set.add(dst)
        groups.setdefault((src, dst), []).append((t, float(f), line))

    try:
        nodes = tuple(sorted(node_set))
    except TypeError:
        raise GraphError("node identifiers must be mutually comparable") from None
    node_index = {n: i for i, n in enumerate(nodes)}
    keyed = sorted(groups.items(), key=lambda kv: (node_index[kv[0][0]], node_index[kv[0][1]]))

    n_pairs = len(keyed)
    pairs = np.empty((n_pairs, 2), dtype=np.int64)
    offsets = np.zeros(n_pairs + 1, dtype=np.int64)
    t_list: list = []
    f_list: list = []
    for p, ((u, v), items) in enumerate(keyed):
        items.sort(key=lambda it: it[0])
        for a, b in zip(items, items[1:]):
            if a[0] == b[0]:
                where = f" (line {b[2]})" if b[2] is not None else ""
                raise GraphError(f"duplicate timestamp {b[0]!r} on pair ({u}, {v}){where}")
        pairs[p] = node_index[u], node_index[v]
        offsets[p + 1] = offsets[p] + len(items)
        t_list.extend(it[0] for it in items)
        f_list.extend(it[1] for it in items)

    times = np.array(t_list, dtype=np.int64 if all_int else np.float64)
    flows = np.array(f_list, dtype=np.float64)
    out_offsets = np.searchsorted(pairs[:, 0], np.arange(len(nodes) + 1), side="left").astype(np.int64)
    pair_index = {(int(a), int(b)): p for p, (a, b) in enumerate(pairs)}
    return TimeSeriesGraph(
        nodes=nodes,
        pairs=_readonly(pairs),
        offsets=_readonly(offsets),
        times=_readonly(times),
        flows=_readonly(flows),
        out_offsets=_readonly(out_offsets),
        node_index=node_index,
        pair_index=pair_index,
    )


def parse_number(tok: str) -> int | float:
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def parse_graph(text: str) -> TimeSeriesGraph:
    records, lines = [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise GraphError(f"line {no}: expected 'src dst t f', got {raw!r}")
        src, dst, t, f = parts
        try:
            records.append((src, dst, parse_number(t), parse_number(f)))
        except ValueError:
            raise GraphError(f"line {no}: bad number in {raw!r}") from None
        lines.append(no)
    return ingest(records, lines)


def read_graph(path) -> TimeSeriesGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def series(g: TimeSeriesGraph, u: Hashable, v: Hashable) -> tuple[Interaction, ...] | None:
    p = g.pair_id(u, v)
    if p is None:
        return None
    return g.pair_series(p)


def window_flow(ser, lo, hi) -> float:
    """Total flow of interactions with ``lo <= t <= hi``."""
    if lo > hi:
        raise ValueError(f"invalid interval [{lo}, {hi}]")
    if isinstance(ser, tuple) and len(ser) == 2 and isinstance(ser[0], np.ndarray):
        ts, fs = ser
    else:
        ts = np.array([x[0] for x in ser])
        fs = np.array([x[1] for x in ser], dtype=np.float64)
    a = np.searchsorted(ts, lo, side="left")
    b = np.searchsorted(ts, hi, side="right")
    total = 0.0
    for x in fs[a:b].tolist():
        total += x
    return total
