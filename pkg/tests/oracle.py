"""Brute-force reference implementations.

Works from raw (src, dst, t, f) records only and follows the definitions
literally: injective vertex maps for structure, arbitrary non-empty subsets
for edge-sets, and single-interaction additions for maximality. Nothing here
assumes contiguous edge-sets or reuses package code.
"""
from collections import defaultdict
from itertools import combinations, permutations


def series_of(records):
    R = defaultdict(list)
    for u, v, t, f in records:
        R[(u, v)].append((t, f))
    for k in R:
        R[k].sort()
    return dict(R)


def motif_vertices(edges):
    out = []
    for a, b in edges:
        for x in (a, b):
            if x not in out:
                out.append(x)
    return out


def structural_matches(records, edges):
    """Walks (tuple of nodes along the edge order) of every injective map whose edges all exist."""
    R = series_of(records)
    nodes = sorted({x for u, v, _, _ in records for x in (u, v)})
    verts = motif_vertices(edges)
    found = set()
    for perm in permutations(nodes, len(verts)):
        mu = dict(zip(verts, perm))
        pairs = [(mu[a], mu[b]) for a, b in edges]
        if all(p in R for p in pairs):
            found.add((mu[edges[0][0]],) + tuple(mu[b] for _, b in edges))
    return found


def _subsets(items):
    for r in range(1, len(items) + 1):
        yield from combinations(items, r)


def is_valid(assign, edges, delta, phi):
    if any(len(s) == 0 for s in assign):
        return False
    m = len(edges)
    for i in range(m):
        for j in range(m):
            if i < j and edges[i][1] == edges[j][0]:
                if not max(t for t, _ in assign[i]) < min(t for t, _ in assign[j]):
                    return False
    ts = [t for s in assign for t, _ in s]
    if max(ts) - min(ts) > delta:
        return False
    return all(sum(f for _, f in s) >= phi for s in assign)


def valid_instances(records, edges, delta, phi=0):
    """Every valid instance as (walk, assignment) with assignment a tuple of sorted tuples."""
    R = series_of(records)
    out = []
    for walk in sorted(structural_matches(records, edges)):
        pairs = list(zip(walk, walk[1:]))

        def rec(i, acc, lo):
            if i == len(pairs):
                if is_valid(acc, edges, delta, phi):
                    out.append((walk, tuple(acc)))
                return
            prev_max = max(t for t, _ in acc[-1]) if acc else None
            cand = [x for x in R[pairs[i]] if (prev_max is None or x[0] > prev_max) and (lo is None or x[0] - lo <= delta)]
            for sub in _subsets(cand):
                if sub[-1][0] - (lo if lo is not None else sub[0][0]) > delta:
                    continue
                rec(i + 1, acc + [tuple(sub)], sub[0][0] if lo is None else lo)

        rec(0, [], None)
    return out


def is_maximal(walk, assign, records, edges, delta, phi):
    R = series_of(records)
    pairs = list(zip(walk, walk[1:]))
    for i, p in enumerate(pairs):
        for x in R[p]:
            if x in assign[i]:
                continue
            grown = list(assign)
            grown[i] = tuple(sorted(assign[i] + (x,)))
            if is_valid(grown, edges, delta, phi):
                return False
    return True


def flow(assign):
    return min(sum(f for _, f in s) for s in assign)


def maximal_instances(records, edges, delta, phi, valid0=None):
    """Maximal instances at (delta, phi); ``valid0`` may pass the phi=0 valid set to reuse."""
    if valid0 is None:
        valid0 = valid_instances(records, edges, delta, 0)
    keep = [(w, a) for w, a in valid0 if all(sum(f for _, f in s) >= phi for s in a)]
    return {(w, a) for w, a in keep if is_maximal(w, a, records, edges, delta, phi)}


def max_flow(records, edges, delta, valid0=None, walk=None, window=None):
    """Largest instance flow, optionally restricted to one match and one [start, end] window."""
    if valid0 is None:
        valid0 = valid_instances(records, edges, delta, 0)
    best = 0
    for w, a in valid0:
        if walk is not None and w != walk:
            continue
        if window is not None:
            ts = [t for s in a for t, _ in s]
            if min(ts) < window[0] or max(ts) > window[1]:
                continue
        best = max(best, flow(a))
    return best
