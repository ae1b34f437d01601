"""Seeded synthetic interaction files for smoke and significance tests."""
from __future__ import annotations

import numpy as np


def _law(spec: str):
    name, *args = spec.split(":")
    try:
        vals = [float(a) for a in args]
    except ValueError:
        raise ValueError(f"bad flow law {spec!r}") from None
    if name == "constant" and len(vals) == 1 and vals[0] > 0:
        return lambda rng, n: np.full(n, vals[0])
    if name == "uniform" and len(vals) == 2 and 0 < vals[0] <= vals[1]:
        lo, hi = int(vals[0]), int(vals[1])
        return lambda rng, n: rng.integers(lo, hi + 1, size=n).astype(np.float64)
    if name == "exp" and len(vals) == 1 and vals[0] > 0:
        return lambda rng, n: np.round(rng.exponential(vals[0], size=n), 4) + 1e-4
    if name == "lognormal" and len(vals) == 2:
        return lambda rng, n: np.round(rng.lognormal(vals[0], vals[1], size=n), 4) + 1e-4
    raise ValueError(f"unknown flow law {spec!r} (constant:c, uniform:a:b, exp:scale, lognormal:mu:sigma)")


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def synth_records(
    nodes: int,
    pairs: int,
    interactions: int,
    time_horizon: int,
    flow_law: str = "uniform:1:9",
    seed: int = 0,
    planted_cycles: int = 0,
    planted_flow: float = 50.0,
    cycle_len: int = 3,
) -> list[tuple]:
    """Random interaction records; optionally plant flow-conserving cycles.

    Background: ``pairs`` distinct ordered node pairs (no self-loops), each
    with at least one interaction, timestamps unique per pair in
    ``[0, time_horizon)``. Each planted cycle visits ``cycle_len`` distinct
    nodes at consecutive timestamps and carries one shared high flow drawn from
    ``[planted_flow, 1.5 * planted_flow]``.
    """
    if min(nodes, pairs, interactions, time_horizon) <= 0:
        raise ValueError("nodes, pairs, interactions and time_horizon must be positive")
    if pairs > nodes * (nodes - 1):
        raise ValueError(f"cannot place {pairs} pairs on {nodes} nodes without self-loops")
    if interactions < pairs:
        raise ValueError("need at least one interaction per pair")
    law = _law(flow_law)
    rng = np.random.default_rng(seed)

    codes = rng.choice(nodes * (nodes - 1), size=pairs, replace=False)
    src = codes // (nodes - 1)
    dst = codes % (nodes - 1)
    dst = dst + (dst >= src)
    per_pair = 1 + rng.multinomial(interactions - pairs, np.full(pairs, 1.0 / pairs))
    if per_pair.max() > time_horizon:
        raise ValueError("time_horizon too small for unique timestamps per pair")

    used: dict[tuple[int, int], set] = {}
    out = []
    for u, v, c in zip(src.tolist(), dst.tolist(), per_pair.tolist()):
        ts = np.sort(rng.choice(time_horizon, size=c, replace=False))
        fs = law(rng, c)
        used[(u, v)] = set(ts.tolist())
        out.extend((u, v, t, f) for t, f in zip(ts.tolist(), fs.tolist()))

    for _ in range(planted_cycles):
        ring = rng.choice(nodes, size=cycle_len, replace=False).tolist()
        t = int(rng.integers(0, time_horizon))
        flow = float(np.round(rng.uniform(planted_flow, 1.5 * planted_flow), 2))
        for i in range(cycle_len):
            u, v = ring[i], ring[(i + 1) % cycle_len]
            taken = used.setdefault((u, v), set())
            while t in taken:
                t += 1
            taken.add(t)
            out.append((u, v, t, flow))
            t += 1

    out.sort(key=lambda r: (r[2], r[0], r[1]))
    return [(f"n{u}", f"n{v}", t, f) for u, v, t, f in out]


def synth(path=None, **kwargs) -> str:
    """Write (or return) a graph file built by ``synth_records``."""
    lines = [f"{u} {v} {t} {_fmt(f)}\n" for u, v, t, f in synth_records(**kwargs)]
    text = "".join(lines)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
