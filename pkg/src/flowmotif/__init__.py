"""Maximal flow-motif search in temporal interaction networks."""
from .baseline import build_tuples, join_level, run_join
from .graph import Interaction, TimeSeriesGraph, ingest, parse_graph, read_graph, series, window_flow
from .instances import (
    InstanceSet,
    MotifInstance,
    Window,
    candidate_windows,
    count_instances,
    enumerate_instances,
    find_instances,
    is_maximal,
)
from .matcher import StructuralMatch, find_structural_matches
from .motif import Motif, builtin, parse_motif_file, validate
from .significance import NullModelReport, permute_flows, significance_run
from .topk import dp_maxflow, dp_table, top1, top1_grouped, topk

__version__ = "0.1.0"
