import random
from pathlib import Path

import pytest

from flowmotif.graph import ingest, read_graph

FIXTURES = Path(__file__).parent / "fixtures"

TRIAD = [("u3", "u1", 10, 10), ("u1", "u2", 13, 5), ("u1", "u2", 15, 7), ("u2", "u3", 18, 20)]
WINDOW3 = [
    ("u2", "u1", 10, 5),
    ("u2", "u1", 13, 2),
    ("u2", "u1", 18, 3),
    ("u1", "u3", 9, 4),
    ("u1", "u3", 11, 3),
    ("u1", "u3", 16, 3),
    ("u3", "u2", 14, 4),
    ("u3", "u2", 19, 6),
]


@pytest.fixture
def triad():
    return read_graph(FIXTURES / "triad.txt")


@pytest.fixture
def dpgrid():
    return read_graph(FIXTURES / "dpgrid.txt")


@pytest.fixture
def window3():
    return read_graph(FIXTURES / "window3.txt")


def random_records(seed, max_nodes=6, max_interactions=24, horizon=30, max_per_pair=6, fractional=False):
    """Small random interaction sets with unique timestamps per pair."""
    rnd = random.Random(seed)
    n = rnd.randint(2, max_nodes)
    nodes = [f"n{i}" for i in range(n)]
    all_pairs = [(a, b) for a in nodes for b in nodes if a != b]
    pairs = rnd.sample(all_pairs, rnd.randint(1, min(len(all_pairs), 12)))
    total = rnd.randint(len(pairs), max(len(pairs), max_interactions))
    recs = []
    counts = {p: 1 for p in pairs}
    for _ in range(min(total, max_interactions) - len(pairs)):
        p = rnd.choice(pairs)
        if counts[p] < max_per_pair:
            counts[p] += 1
    for p, c in counts.items():
        for t in rnd.sample(range(horizon), c):
            f = rnd.randint(1, 9)
            if fractional:
                f = f + rnd.choice([0.1, 0.25, 0.3, 0.7])
            recs.append((p[0], p[1], t, f))
    rnd.shuffle(recs)
    return recs


def as_set(instances):
    """Comparable form: {(walk, ((t, f), ...) per edge)}."""
    return {(i.walk, tuple(tuple((x.t, x.f) for x in s) for s in i.assignment)) for i in instances}


def oracle_set(found):
    return {(w, tuple(tuple((t, float(f)) for t, f in s) for s in a)) for w, a in found}


def graph_of(records):
    return ingest(records)
