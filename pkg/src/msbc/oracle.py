"""Independent solvers used to check the fast ones.

oracle_optimal
    Exact optimum for small n.  Some optimal solution keeps the sensor order,
    and then only one run of consecutive sensors i..j moves: y_i <= z,
    y_j >= beta - z and consecutive gaps y_{t+1} - y_t <= 2z.  Each such
    window problem is a linear program whose vertices put every y_t on a
    chain of tight constraints anchored at some x_s or at a barrier end:

        y_t in {x_s + 2z(t - s)} u {z + 2z(t - i)} u {beta - z - 2z(j - t)}

    A DP over t on these candidate grids (with suffix minima for the chain
    constraint) solves each window exactly; the answer is the best window.

reference_quadratic_containing
    The plain greedy for the containing case with arrays instead of trees:
    every step rescans positions for the first gap and for all overlaps, so
    each step costs O(n).  Decisions (including ties) match the tree solver.
"""
from bisect import bisect_left

from ._jit import choose_mode, kernel
from .core import (CaseKind, Instance, NotContaining, intersects, make_report, scale,
                   validate)


def _window_dp(X, Z, B, i, j):
    """Cheapest feasible placement of sensors i..j; returns (cost, positions)."""
    grids = []
    for t in range(i, j + 1):
        pts = {X[s] + 2 * Z * (t - s) for s in range(i, j + 1)}
        pts.add(Z + 2 * Z * (t - i))
        pts.add(B - Z - 2 * Z * (j - t))
        grids.append(sorted(pts))
    INF = None
    # f[c_index] for the current t; back pointers per layer
    first = grids[0]
    f = [abs(c - X[i]) if c <= Z else INF for c in first]
    backs = []
    for t in range(i + 1, j + 1):
        prev = grids[t - i - 1]
        # suffix minima of f over prev (value, index)
        suf = [None] * (len(prev) + 1)
        for q in range(len(prev) - 1, -1, -1):
            cand = suf[q + 1]
            if f[q] is not INF and (cand is None or f[q] < cand[0]):
                cand = (f[q], q)
            suf[q] = cand
        cur = grids[t - i]
        g = []
        bp = []
        for c in cur:
            q = bisect_left(prev, c - 2 * Z)
            best = suf[q]
            if best is None:
                g.append(INF)
                bp.append(-1)
            else:
                g.append(best[0] + abs(c - X[t]))
                bp.append(best[1])
        backs.append(bp)
        f = g
    last = grids[-1]
    best = None
    for q, c in enumerate(last):
        if c >= B - Z and f[q] is not INF and (best is None or f[q] < best[0]):
            best = (f[q], q)
    if best is None:
        return None
    cost, q = best
    ys = [0] * (j - i + 1)
    for t in range(j, i - 1, -1):
        ys[t - i] = grids[t - i][q]
        if t > i:
            q = backs[t - i - 1][q]
    return cost, ys


def oracle_optimal(instance: Instance, max_n: int = 10):
    """Exact optimal (cost, positions) by window enumeration; small n only."""
    validate(instance)
    if instance.n > max_n:
        raise ValueError(f"oracle limited to n <= {max_n}")
    sc = scale(instance)
    X, Z, B, n = sc.x, sc.z, sc.beta, sc.n
    best = None
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if (j - i + 1) * 2 * Z < B:
                continue
            res = _window_dp(X, Z, B, i, j)
            if res is not None and (best is None or res[0] < best[0]):
                best = (res[0], i, j, res[1])
    cost, i, j, ys = best
    y = list(X[1:])
    y[i - 1:j] = ys
    return sc.back(cost), [sc.back(v) for v in y]


@kernel
def _reference_kernel(x, y, n, z, beta, olen, stats):
    steps = 0
    pdrs = 0
    while True:
        # first uncovered piece of the barrier, scanning coverage from 0
        reach = 0 * z
        between = -1
        glen = 0 * z
        done = False
        for i in range(1, n + 1):
            left = y[i] - z
            if left > reach:
                hi = left if left < beta else beta
                between = i - 1
                glen = hi - reach
                break
            if y[i] + z > reach:
                reach = y[i] + z
            if reach >= beta:
                done = True
                break
        if between < 0 and not done:
            between = n
            glen = beta - reach
        if between < 0:
            break
        # all overlaps from scratch
        for s in range(3 * n):
            olen[s] = 0
        for i in range(1, n + 1):
            a = y[i] - z
            b = y[i] + z
            if a < 0:
                prev_straddles = i > 1 and y[i - 1] + z > 0
                if not prev_straddles:
                    olen[3 * (i - 1)] = (b if b < 0 else 0 * z) - a
            if i < n:
                c = y[i + 1] - z
                lo = c if c > 0 else 0 * z
                hi = b if b < beta else beta
                if lo < hi or (c < 0 < b) or (c < beta < b):
                    if c < b:
                        olen[3 * (i - 1) + 1] = b - c
            if b > beta:
                next_straddles = i < n and y[i + 1] - z < beta
                if not next_straddles:
                    olen[3 * (i - 1) + 2] = b - (a if a > beta else beta)
        sl = -1
        for s in range(3 * between - 1, -1, -1):
            if olen[s] > 0:
                sl = s
                break
        sr = -1
        for s in range(3 * between, 3 * n):
            if olen[s] > 0:
                sr = s
                break
        if sl < 0 and sr < 0:
            stats[2] = 1
            return
        cr = 0
        if sr >= 0:
            cr = sr // 3 + 1 - between
        cl = 0
        jj = 0
        if sl >= 0:
            jj = sl // 3 + 1 + (1 if sl % 3 == 1 else 0)
            pos = 0
            for t in range(jj, between + 1):
                if x[t] - y[t] > 0:
                    pos += 1
            cl = (between - jj + 1) - 2 * pos
        if sr >= 0 and (sl < 0 or cr < cl):
            d = glen if glen < olen[sr] else olen[sr]
            for t in range(between + 1, sr // 3 + 2):
                y[t] -= d
        else:
            d = glen if glen < olen[sl] else olen[sl]
            has_alpha = False
            alpha = 0 * z
            for t in range(jj, between + 1):
                disp = x[t] - y[t]
                if disp > 0 and (not has_alpha or disp < alpha):
                    alpha = disp
                    has_alpha = True
            if has_alpha and alpha <= d:
                d = alpha
                pdrs += 1
            for t in range(jj, between + 1):
                y[t] += d
        steps += 1
    stats[0] = steps
    stats[1] = pdrs


def reference_quadratic_containing(instance: Instance, fast=None):
    """O(n^2) greedy with naive arrays; same output as solve_containing."""
    validate(instance)
    if not all(intersects(v, instance.z, instance.beta) for v in instance.x):
        raise NotContaining("some sensor interval misses the barrier")
    sc = scale(instance)
    mode = choose_mode(sc.magnitude, sc.n, fast)
    x = mode.array(sc.x)
    y = mode.array(sc.x)
    olen = mode.zeros(3 * sc.n + 3)
    stats = mode.zeros(3)
    mode.k(_reference_kernel)(x, y, sc.n, sc.z, sc.beta, olen, stats)
    stats = mode.to_list(stats)
    if stats[2]:
        raise RuntimeError("reference greedy found a gap with no overlap")
    ys = [sc.back(v) for v in mode.to_list(y)[1:]]
    return make_report(instance, ys, CaseKind.Containing,
                       {"shift_processes": stats[0], "pdr_processes": stats[1]})
