"""Phase one: flow- and time-agnostic matches of the motif's spanning path."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .graph import TimeSeriesGraph
from .motif import Motif, check


@dataclass(frozen=True)
class StructuralMatch:
    vertex_map: dict
    edge_seq: tuple[tuple, ...]
    walk: tuple
    pair_ids: tuple[int, ...]

    def __hash__(self):
        return hash(self.pair_ids + (self.walk[0],))

    def __eq__(self, other):
        return isinstance(other, StructuralMatch) and self.walk == other.walk and self.edge_seq == other.edge_seq


class MatchSet(Sequence):
    """Structural matches kept as integer tables; items materialise on access."""

    def __init__(self, g: TimeSeriesGraph, motif: Motif, walks: np.ndarray, pair_ids: np.ndarray):
        self.g = g
        self.motif = motif
        self.walks = walks
        self.pair_ids = pair_ids

    def __len__(self):
        return len(self.walks)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        nodes = self.g.nodes
        walk = tuple(nodes[x] for x in self.walks[i].tolist())
        vmap = {}
        for v, node in zip(self.motif.walk, walk):
            vmap.setdefault(v, node)
        edge_seq = tuple(zip(walk, walk[1:]))
        return StructuralMatch(vmap, edge_seq, walk, tuple(self.pair_ids[i].tolist()))

    def subset(self, idx) -> "MatchSet":
        return MatchSet(self.g, self.motif, self.walks[idx], self.pair_ids[idx])


def find_structural_matches(g: TimeSeriesGraph, motif: Motif) -> MatchSet:
    check(motif)
    slots = np.array(motif.slots(), dtype=np.int64)
    if g.n_pairs == 0:
        m = motif.m
        return MatchSet(g, motif, np.empty((0, m + 1), np.int64), np.empty((0, m), np.int64))
    walks, pids = kernels.match_kernel(g.out_offsets, np.ascontiguousarray(g.pairs[:, 1]), slots)
    return MatchSet(g, motif, walks, pids)
