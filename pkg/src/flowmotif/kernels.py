"""Hot loops: structural DFS, windowed instance search, max-min DP.

Everything here works on the CSR arrays of a TimeSeriesGraph (``times``,
``flows``, ``offsets``) and on integer match tables, so the same source runs
under numba or as plain Python (see ``_accel``). An edge-set of an instance is
always a contiguous index range ``[lo, hi]`` of its pair's series.
"""
import numpy as np

from ._accel import USE_NUMBA, jit


@jit
def _grow(buf, n):
    out = np.empty((max(2 * buf.shape[0], 16), buf.shape[1]), dtype=buf.dtype)
    out[:n] = buf[:n]
    return out


@jit
def _grow1(buf, n):
    out = np.empty(max(2 * buf.shape[0], 16), dtype=buf.dtype)
    out[:n] = buf[:n]
    return out


@jit
def first_after(times, lo, hi, x):
    """First index in times[lo:hi] with value > x (hi if none)."""
    while lo < hi:
        mid = (lo + hi) // 2
        if times[mid] > x:
            hi = mid
        else:
            lo = mid + 1
    return lo


@jit
def first_at_least(times, lo, hi, x):
    while lo < hi:
        mid = (lo + hi) // 2
        if times[mid] >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


# -- structural matching -------------------------------------------------------


@jit
def match_kernel(out_offsets, pair_dst, slots):
    """All walks following the motif's slot pattern under an injective vertex map.

    Returns (walks, pair_ids) with walks of shape (n, m + 1) in node indices.
    Output is lexicographic in the walk because starts and neighbours are
    scanned in ascending node order.
    """
    m = slots.shape[0] - 1
    n_nodes = out_offsets.shape[0] - 1
    n_slots = 0
    for i in range(m + 1):
        if slots[i] + 1 > n_slots:
            n_slots = slots[i] + 1
    first_pos = np.full(n_slots, -1, dtype=np.int64)
    for i in range(m + 1):
        if first_pos[slots[i]] < 0:
            first_pos[slots[i]] = i
    is_new = np.zeros(m, dtype=np.bool_)
    for d in range(m):
        is_new[d] = first_pos[slots[d + 1]] == d + 1

    used = np.zeros(n_nodes, dtype=np.bool_)
    walk = np.empty(m + 1, dtype=np.int64)
    pidx = np.empty(m, dtype=np.int64)
    cursor = np.empty(m, dtype=np.int64)
    chosen = np.zeros(m, dtype=np.bool_)
    out_w = np.empty((16, m + 1), dtype=np.int64)
    out_p = np.empty((16, m), dtype=np.int64)
    n = 0

    for s in range(n_nodes):
        if out_offsets[s + 1] == out_offsets[s]:
            continue
        walk[0] = s
        used[s] = True
        d = 0
        cursor[0] = out_offsets[s] - 1 if is_new[0] else -1
        chosen[0] = False
        while d >= 0:
            cur = walk[d]
            if chosen[d]:
                if is_new[d]:
                    used[walk[d + 1]] = False
                chosen[d] = False
            found = False
            p = -1
            if is_new[d]:
                c = cursor[d] + 1
                end = out_offsets[cur + 1]
                while c < end and used[pair_dst[c]]:
                    c += 1
                cursor[d] = c
                if c < end:
                    p = c
                    found = True
                    used[pair_dst[c]] = True
            elif cursor[d] == -1:
                cursor[d] = 0
                target = walk[first_pos[slots[d + 1]]]
                lo = out_offsets[cur]
                hi = out_offsets[cur + 1]
                c = first_at_least(pair_dst, lo, hi, target)
                if c < hi and pair_dst[c] == target:
                    p = c
                    found = True
            if not found:
                d -= 1
                continue
            chosen[d] = True
            walk[d + 1] = pair_dst[p]
            pidx[d] = p
            if d + 1 == m:
                if n == out_w.shape[0]:
                    out_w = _grow(out_w, n)
                    out_p = _grow(out_p, n)
                out_w[n] = walk
                out_p[n] = pidx
                n += 1
                continue
            d += 1
            cursor[d] = out_offsets[walk[d]] - 1 if is_new[d] else -1
            chosen[d] = False
        used[s] = False
    return out_w[:n].copy(), out_p[:n].copy()


# -- windows -------------------------------------------------------------------


@jit
def window_keep(times, offsets, p_first, p_last, delta):
    """For each anchor on the first edge, whether its window [t, t + delta] is searched.

    A window is skipped when the last edge's in-window index range equals the
    range of the previously kept window; every instance it could produce is
    then extendable by the earlier anchor, hence not maximal.
    """
    a0 = offsets[p_first]
    a1 = offsets[p_first + 1]
    b0 = offsets[p_last]
    b1 = offsets[p_last + 1]
    keep = np.zeros(a1 - a0, dtype=np.bool_)
    prev_lo = -1
    prev_hi = -1
    have = False
    for a in range(a0, a1):
        s = times[a]
        lo = first_at_least(times, b0, b1, s)
        hi = first_after(times, b0, b1, s + delta)
        if have and lo == prev_lo and hi == prev_hi and p_first != p_last:
            continue
        keep[a - a0] = True
        prev_lo = lo
        prev_hi = hi
        have = True
    return keep


# -- instance enumeration ------------------------------------------------------


@jit
def ranges_maximal(times, offsets, pr, lo, hi, delta):
    """True iff no interaction can be added to any edge-set of the range instance."""
    m = pr.shape[0]
    gmin = times[lo[0]]
    gmax = times[hi[m - 1]]
    for i in range(m):
        base = offsets[pr[i]]
        stop = offsets[pr[i] + 1]
        for j in (lo[i] - 1, hi[i] + 1):
            if j < base or j >= stop:
                continue
            t = times[j]
            if i > 0 and not t > times[hi[i - 1]]:
                continue
            if i < m - 1 and not t < times[lo[i + 1]]:
                continue
            a = gmin if gmin < t else t
            b = gmax if gmax > t else t
            if b - a <= delta:
                return False
    return True


@jit
def _topk_push(state, count, k, value):
    # state[:count] ascending; keeps the k largest values seen
    if count < k:
        j = count
        while j > 0 and state[j - 1] > value:
            state[j] = state[j - 1]
            j -= 1
        state[j] = value
        return count + 1
    if value <= state[0]:
        return count
    j = 0
    while j + 1 < k and state[j + 1] < value:
        state[j] = state[j + 1]
        j += 1
    state[j] = value
    return count


@jit
def enumerate_kernel(times, flows, offsets, match_pairs, delta, phi, k, prune, skip):
    """Maximal flow-motif instances for every structural match.

    ``k > 0`` turns on the floating threshold: instances whose flow falls below
    the k-th best flow seen so far are pruned (ties are kept, so callers can
    sort and truncate deterministically). With ``prune`` off, flow bounds are
    only applied to complete instances.

    Returns (match_ids, ranges, inst_flows); ``ranges[r, 2*i:2*i+2]`` is the
    inclusive index range of edge ``i``.
    """
    n_match = match_pairs.shape[0]
    m = match_pairs.shape[1]
    lo = np.empty(m, dtype=np.int64)
    hi = np.empty(m, dtype=np.int64)
    stop = np.empty(m, dtype=np.int64)
    sums = np.empty(m, dtype=np.float64)
    state = np.zeros(max(k, 1), dtype=np.float64)
    count = 0
    out_id = np.empty(16, dtype=np.int64)
    out_rng = np.empty((16, 2 * m), dtype=np.int64)
    out_f = np.empty(16, dtype=np.float64)
    n = 0

    for mi in range(n_match):
        pr = match_pairs[mi]
        a0 = offsets[pr[0]]
        a1 = offsets[pr[0] + 1]
        if skip:
            keep = window_keep(times, offsets, pr[0], pr[m - 1], delta)
        else:
            keep = np.ones(a1 - a0, dtype=np.bool_)
        for a in range(a0, a1):
            if not keep[a - a0]:
                continue
            end = times[a] + delta
            lo[0] = a
            hi[0] = a - 1
            sums[0] = 0.0
            stop[0] = first_after(times, a, a1, end)
            d = 0
            while d >= 0:
                thr = phi
                if k > 0 and count == k and state[0] > thr:
                    thr = state[0]
                if d == m - 1:
                    # last edge takes every in-window interaction after the previous edge
                    if hi[d] >= lo[d]:
                        d -= 1
                        continue
                    hi[d] = stop[d] - 1
                    if hi[d] < lo[d]:
                        d -= 1
                        continue
                    total = 0.0
                    for j in range(lo[d], hi[d] + 1):
                        total += flows[j]
                    sums[d] = total
                    fl = sums[0]
                    for i in range(1, m):
                        if sums[i] < fl:
                            fl = sums[i]
                    if fl < thr:
                        continue
                    if not ranges_maximal(times, offsets, pr, lo, hi, delta):
                        continue
                    if n == out_id.shape[0]:
                        out_id = _grow1(out_id, n)
                        out_f = _grow1(out_f, n)
                        out_rng = _grow(out_rng, n)
                    out_id[n] = mi
                    for i in range(m):
                        out_rng[n, 2 * i] = lo[i]
                        out_rng[n, 2 * i + 1] = hi[i]
                    out_f[n] = fl
                    n += 1
                    if k > 0:
                        count = _topk_push(state, count, k, fl)
                    continue
                hi[d] += 1
                if hi[d] >= stop[d]:
                    d -= 1
                    continue
                sums[d] += flows[hi[d]]
                if prune and sums[d] < thr:
                    continue
                nd = d + 1
                p = pr[nd]
                b0 = offsets[p]
                b1 = offsets[p + 1]
                start = first_after(times, b0, b1, times[hi[d]])
                lo[nd] = start
                hi[nd] = start - 1
                sums[nd] = 0.0
                stop[nd] = first_after(times, start, b1, end)
                if start >= stop[nd]:
                    # later prefixes only push the start further right
                    d -= 1
                    continue
                d = nd
            # m == 1 falls through the loop above with d == 0 == m - 1
    return out_id[:n].copy(), out_rng[:n].copy(), out_f[:n].copy()


# -- DP for the top-1 flow -----------------------------------------------------


@jit
def window_grid(times, flows, offsets, pr, s, end):
    """Sorted distinct timestamps of the match inside [s, end] and per-edge flow at each."""
    m = pr.shape[0]
    total = 0
    for i in range(m):
        b0 = offsets[pr[i]]
        b1 = offsets[pr[i] + 1]
        total += first_after(times, b0, b1, end) - first_at_least(times, b0, b1, s)
    buf = np.empty(total, dtype=times.dtype)
    c = 0
    for i in range(m):
        b0 = offsets[pr[i]]
        b1 = offsets[pr[i] + 1]
        for j in range(first_at_least(times, b0, b1, s), first_after(times, b0, b1, end)):
            buf[c] = times[j]
            c += 1
    grid = np.unique(buf)
    tau = grid.shape[0]
    w = np.zeros((m, tau), dtype=np.float64)
    for i in range(m):
        b0 = offsets[pr[i]]
        b1 = offsets[pr[i] + 1]
        g = 0
        for j in range(first_at_least(times, b0, b1, s), first_after(times, b0, b1, end)):
            while grid[g] < times[j]:
                g += 1
            w[i, g] = flows[j]
    return grid, w


@jit
def dp_table_loops(w):
    """Full max-min table and first-maximising split index per cell.

    ``rows[k, i]`` is the best min edge-set flow of the first k+1 motif edges
    using timestamps grid[0..i]; ``args[k, i]`` is the split j (edge k takes
    grid[j..i]) or -1 when the cell is infeasible.
    """
    m, tau = w.shape
    rows = np.zeros((m, tau), dtype=np.float64)
    args = np.full((m, tau), -1, dtype=np.int64)
    acc = 0.0
    for i in range(tau):
        acc += w[0, i]
        rows[0, i] = acc
        if acc > 0:
            args[0, i] = 0
    for k in range(1, m):
        for i in range(tau):
            best = 0.0
            barg = -1
            run = 0.0
            for j in range(i, 0, -1):
                run += w[k, j]
                prev = rows[k - 1, j - 1]
                v = prev if prev < run else run
                if v > 0 and v >= best:
                    best = v
                    barg = j
            rows[k, i] = best
            args[k, i] = barg
    return rows, args


@jit
def dp_max_loops(w):
    """Last cell of the DP keeping only two rows."""
    m, tau = w.shape
    if tau == 0:
        return 0.0
    prev = np.empty(tau, dtype=np.float64)
    cur = np.empty(tau, dtype=np.float64)
    acc = 0.0
    for i in range(tau):
        acc += w[0, i]
        prev[i] = acc
    for k in range(1, m):
        for i in range(tau):
            best = 0.0
            run = 0.0
            for j in range(i, 0, -1):
                run += w[k, j]
                v = prev[j - 1] if prev[j - 1] < run else run
                if v > best:
                    best = v
            cur[i] = best
        prev, cur = cur, prev
    return prev[tau - 1]


def dp_table_numpy(w):
    """Vectorised twin of ``dp_table_loops`` (O(tau^2) memory per row)."""
    m, tau = w.shape
    rows = np.zeros((m, tau))
    args = np.full((m, tau), -1, dtype=np.int64)
    if tau == 0:
        return rows, args
    rows[0] = np.cumsum(w[0])
    args[0, rows[0] > 0] = 0
    j_idx = np.arange(tau)[:, None]
    i_idx = np.arange(tau)[None, :]
    valid = (j_idx >= 1) & (j_idx <= i_idx)
    for k in range(1, m):
        c = np.concatenate(([0.0], np.cumsum(w[k])))
        seg = c[1:][None, :] - c[:-1][:, None]  # seg[j, i] = sum w[k, j..i]
        prev = np.concatenate(([0.0], rows[k - 1][:-1]))[:, None]  # rows[k-1, j-1]
        val = np.where(valid, np.minimum(prev, seg), 0.0)
        best = val.max(axis=0)
        # first maximising j; only meaningful where best > 0
        arg = np.argmax(val == best[None, :], axis=0)
        rows[k] = best
        args[k] = np.where(best > 0, arg, -1)
    return rows, args


def dp_max_numpy(w):
    if w.shape[1] == 0:
        return 0.0
    return float(dp_table_numpy(w)[0][-1, -1])


@jit
def scan_dp_kernel(times, flows, offsets, match_pairs, delta, skip):
    """dp max-flow for every (match, kept window). Returns (match_ids, anchor_idx, flows)."""
    n_match = match_pairs.shape[0]
    m = match_pairs.shape[1]
    out_id = np.empty(16, dtype=np.int64)
    out_a = np.empty(16, dtype=np.int64)
    out_f = np.empty(16, dtype=np.float64)
    n = 0
    for mi in range(n_match):
        pr = match_pairs[mi]
        a0 = offsets[pr[0]]
        a1 = offsets[pr[0] + 1]
        if skip:
            keep = window_keep(times, offsets, pr[0], pr[m - 1], delta)
        else:
            keep = np.ones(a1 - a0, dtype=np.bool_)
        for a in range(a0, a1):
            if not keep[a - a0]:
                continue
            grid, w = window_grid(times, flows, offsets, pr, times[a], times[a] + delta)
            v = dp_max_loops(w)
            if n == out_id.shape[0]:
                out_id = _grow1(out_id, n)
                out_a = _grow1(out_a, n)
                out_f = _grow1(out_f, n)
            out_id[n] = mi
            out_a[n] = a
            out_f[n] = v
            n += 1
    return out_id[:n].copy(), out_a[:n].copy(), out_f[:n].copy()


def scan_dp_numpy(times, flows, offsets, match_pairs, delta, skip):
    wg = getattr(window_grid, "py_func", window_grid)
    wk = getattr(window_keep, "py_func", window_keep)
    ids, anchors, vals = [], [], []
    m = match_pairs.shape[1]
    for mi in range(match_pairs.shape[0]):
        pr = match_pairs[mi]
        a0, a1 = offsets[pr[0]], offsets[pr[0] + 1]
        keep = wk(times, offsets, pr[0], pr[m - 1], delta) if skip else np.ones(a1 - a0, bool)
        for a in range(a0, a1):
            if keep[a - a0]:
                _, w = wg(times, flows, offsets, pr, times[a], times[a] + delta)
                ids.append(mi)
                anchors.append(a)
                vals.append(dp_max_numpy(w))
    return (
        np.array(ids, dtype=np.int64),
        np.array(anchors, dtype=np.int64),
        np.array(vals, dtype=np.float64),
    )


if USE_NUMBA:
    dp_table = dp_table_loops
    scan_dp = scan_dp_kernel
else:
    dp_table = dp_table_numpy
    scan_dp = scan_dp_numpy
