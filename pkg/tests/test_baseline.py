import pytest

from flowmotif.baseline import IntervalTuple, PartialChain, build_tuples, join_level, run_join
from flowmotif.graph import ingest
from flowmotif.instances import enumerate_instances
from flowmotif.motif import builtin

import oracle
from conftest import as_set, oracle_set, random_records


def _plain(ts):
    return [(t.u, t.v, t.t_s, t.t_e, t.f) for t in ts]


def test_tuples_all_runs(triad):
    got = sorted(_plain(build_tuples(triad, 10, 0)[("u1", "u2")]))
    assert got == [("u1", "u2", 13, 13, 5.0), ("u1", "u2", 13, 15, 12.0), ("u1", "u2", 15, 15, 7.0)]


def test_tuples_phi_filter(triad):
    got = sorted(_plain(build_tuples(triad, 10, 6)[("u1", "u2")]))
    assert got == [("u1", "u2", 13, 15, 12.0), ("u1", "u2", 15, 15, 7.0)]


def test_tuples_respect_delta(triad):
    assert sorted(_plain(build_tuples(triad, 1, 0)[("u1", "u2")])) == [("u1", "u2", 13, 13, 5.0), ("u1", "u2", 15, 15, 7.0)]


def test_no_tuples_for_empty_graph():
    assert build_tuples(ingest([]), 10, 0) == {}


def _chain():
    return [PartialChain((IntervalTuple("a", "b", 10, 10, 5),), ("a", "b"))]


def test_join_extends():
    out = join_level(_chain(), [IntervalTuple("b", "c", 12, 14, 6)], 10)
    assert len(out) == 1
    assert out[0].span == 4
    assert out[0].nodes == ("a", "b", "c")


@pytest.mark.parametrize(
    "right",
    [
        IntervalTuple("b", "c", 10, 14, 6),  # not strictly after
        IntervalTuple("b", "c", 12, 25, 6),  # span 15 > 10
        IntervalTuple("c", "d", 12, 14, 6),  # does not chain on vertices
    ],
)
def test_join_rejects(right):
    assert join_level(_chain(), [right], 10) == []


def test_triad_equals_enumerator(triad):
    motif = builtin("cycle", 3, delta=10, phi=7)
    res = run_join(triad, motif)
    found = enumerate_instances(triad, motif)
    assert as_set(res.instances) == as_set(found)
    assert res.instances.flows.tolist() == [10.0]


def test_no_two_hop_paths():
    g = ingest([("a", "b", 1, 1), ("c", "d", 2, 1)])
    assert len(run_join(g, builtin("chain", 3, delta=10)).instances) == 0


GRID = [builtin("chain", n) for n in (2, 3, 4, 5)] + [builtin("cycle", n) for n in (2, 3, 4)]


@pytest.mark.parametrize("seed", range(20))
def test_join_matches_enumerator_and_oracle(seed):
    recs = random_records(seed)
    g = ingest(recs)
    ts = [r[2] for r in recs]
    span = max(ts) - min(ts)
    for motif in GRID:
        for d in (2, span):
            v0 = oracle.valid_instances(recs, motif.edges, d, 0)
            for phi in (0, 5):
                mm = motif.with_bounds(d, phi)
                res = run_join(g, mm)
                found = enumerate_instances(g, mm)
                assert res.instances.ranges.tolist() == found.ranges.tolist()
                assert res.instances.flows.tolist() == found.flows.tolist()
                assert as_set(res.instances) == oracle_set(oracle.maximal_instances(recs, motif.edges, d, phi, v0))
                # intermediate results dominate the final output
                assert max(res.level_counts) >= len(found)
                assert len(res.level_counts) == motif.m + 1


@pytest.mark.parametrize("seed", range(5))
def test_chains_keep_their_invariants(seed):
    recs = random_records(seed)
    g = ingest(recs)
    tables = build_tuples(g, 6, 0)
    chains = [PartialChain((t,), (t.u, t.v)) for ts in tables.values() for t in ts]
    flat = [t for ts in tables.values() for t in ts]
    for _ in range(3):
        chains = join_level(chains, flat, 6)
        for c in chains:
            for a, b in zip(c.tuples, c.tuples[1:]):
                assert a.v == b.u and b.t_s > a.t_e
            assert all(t.t_s <= t.t_e for t in c.tuples)
            assert c.span <= 6
