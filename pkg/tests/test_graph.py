import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowmotif.graph import GraphError, Interaction, ingest, parse_graph, series, window_flow

from conftest import TRIAD


def test_triad_ingest():
    g = ingest(TRIAD)
    assert g.n_nodes == 3
    assert g.n_pairs == 3
    assert series(g, "u1", "u2") == (Interaction(13, 5.0), Interaction(15, 7.0))
    assert series(g, "u3", "u1") == (Interaction(10, 10.0),)
    assert series(g, "u2", "u1") is None


def test_empty():
    g = ingest([])
    assert g.n_nodes == 0 and g.n_pairs == 0 and g.n_interactions == 0


def test_duplicate_timestamp_rejected():
    with pytest.raises(GraphError, match="duplicate timestamp"):
        ingest([("a", "b", 5, 1.5), ("a", "b", 5, 2.0)])


def test_same_timestamp_on_different_pairs_ok():
    g = ingest([("a", "b", 5, 1), ("b", "c", 5, 1)])
    assert g.n_interactions == 2


@pytest.mark.parametrize("f", [0, -3])
def test_non_positive_flow_names_line(f):
    with pytest.raises(GraphError, match="line 3"):
        parse_graph(f"# header\na b 1 2\na b 2 {f}\n")


def test_self_loops_kept():
    g = ingest([("a", "a", 1, 1), ("a", "b", 2, 1)])
    assert series(g, "a", "a") == (Interaction(1, 1.0),)


def test_parse_graph_file_format():
    g = parse_graph("# c\n\nu3 u1 10 10\nu1 u2 13 5\nu1 u2 15 7\nu2 u3 18 20\n")
    assert g == ingest(TRIAD)
    assert g.times.dtype == np.int64


def test_fractional_timestamps_stored_as_parsed():
    g = parse_graph("a b 1.5 2\na b 3 1\n")
    assert series(g, "a", "b") == (Interaction(1.5, 2.0), Interaction(3.0, 1.0))


@pytest.mark.parametrize("line", ["a b 1", "a b x 1", "a b 1 2 3"])
def test_malformed_lines(line):
    with pytest.raises(GraphError, match="line 1"):
        parse_graph(line)


def test_window_flow_table3():
    ser = [(10, 5), (13, 2), (18, 3)]
    assert window_flow(ser, 10, 13) == 7
    assert window_flow(ser, 10, 19) == 10
    assert window_flow(ser, 11, 11) == 0


def test_window_flow_bad_interval():
    with pytest.raises(ValueError):
        window_flow([(1, 1)], 5, 4)


records = st.lists(
    st.tuples(st.sampled_from("abcd"), st.sampled_from("abcd"), st.integers(0, 50), st.integers(1, 9)),
    max_size=30,
    unique_by=lambda r: (r[0], r[1], r[2]),
)


@given(records, st.randoms())
def test_ingest_order_insensitive(recs, rnd):
    shuffled = list(recs)
    rnd.shuffle(shuffled)
    assert ingest(recs) == ingest(shuffled)


@given(records)
def test_invariants_and_count(recs):
    g = ingest(recs)
    assert g.n_interactions == len(recs)
    for u, v, ser in g.iter_pairs():
        assert ser
        assert all(a.t < b.t for a, b in zip(ser, ser[1:]))
        assert u in g.nodes and v in g.nodes


@settings(max_examples=50)
@given(records, st.lists(st.integers(0, 50), max_size=5))
def test_window_flow_additive(recs, cuts):
    g = ingest(recs)
    for _, _, ser in g.iter_pairs():
        lo, hi = ser[0].t, ser[-1].t
        pts = sorted({c for c in cuts if lo < c <= hi})
        bounds = [lo] + pts + [hi + 1]
        parts = [window_flow(ser, a, b - 1) for a, b in zip(bounds, bounds[1:])]
        assert sum(parts) == pytest.approx(sum(x.f for x in ser))
