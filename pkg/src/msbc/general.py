"""General case (sensors miss the barrier on both sides) and the top-level solver.

Notation: l and r are the first and last sensors meeting the barrier, S_L
the sensors before l, S_R those after r, lam the fewest sensors able to
cover the barrier.  Bringing in S(i, l-1) and S(r+1, j) first moves them
to -z and beta + z (cost D_s), then the containing solver runs on S(i, j)
(cost D_c).

Candidate 1 runs the one-sided solver with all of S_L parked at -z.  That
fixes the right end r*.  A mirrored one-sided solve on S(1, r*) then fixes
the left end.

Candidate 2 looks at windows of exactly lam sensors containing S_I =
S(l, r).  The first window is solved from scratch.  Each later window takes
the next sensor on the right (reverse operations) and drops the first on
the left, whose coverage is made up by spending overlaps from left to right.
Once the last sensor of a window sticks out past beta, every later window is
the abutting pattern starting at z, evaluated by an event sweep.  When lam
sensors cover beta exactly, all windows are of that form.

The answer is the cheaper candidate, so the code never has to decide which
of the two cases it is in.
"""
from bisect import bisect_left, bisect_right
from fractions import Fraction

import numpy as np

from ._jit import choose_mode, kernel
from .containing import diagnostics_of, run_containing
from .core import (CaseKind, Instance, InstanceError, classify, report_from_scaled, scale,
                   scan_gaps_overlaps, validate)
from .one_sided import ceil_div, one_sided_scaled
from .trees import (ls_add, ls_find_min, ls_find_num, ls_set_invalid, ls_set_valid,
                    ot_succ, ot_toggle, pt_add, pt_offset, tree_size)


# --------------------------------------------------------------------------
# event sweep over abutting windows

@kernel
def sweep_kernel(u, order, n_order, s_lo, s_hi, width, z, flag, out):
    """Costs of abutting windows S(s, s + width - 1) with sensor s at z.

    Sensor t then sits at z + 2z(t - s), which is u[t] - 2zs away from its
    reference position (u[t] = z + 2zt - reference).  As s grows the offset
    a = 2zs grows, and the term |u[t] - a| switches from falling to rising
    once a passes u[t]; ``order`` lists sensors by that event value.  Only
    the counts on each side change at events, so each window costs O(1)
    amortised after sorting.
    """
    nhi = 0
    nlo = 0
    shi = 0 * z
    slo = 0 * z
    ptr = 0
    for s in range(s_lo, s_hi + 1):
        a = 2 * z * s
        if s == s_lo:
            first = s
        else:
            t = s - 1
            if flag[t] == 2:
                nhi -= 1
                shi -= u[t]
            elif flag[t] == 1:
                nlo -= 1
                slo -= u[t]
            flag[t] = 0
            first = s + width - 1
        while ptr < n_order and u[order[ptr]] < a:
            t = order[ptr]
            if flag[t] == 2:
                flag[t] = 1
                nhi -= 1
                shi -= u[t]
                nlo += 1
                slo += u[t]
            ptr += 1
        for t in range(first, s + width):
            if u[t] < a:
                flag[t] = 1
                nlo += 1
                slo += u[t]
            else:
                flag[t] = 2
                nhi += 1
                shi += u[t]
        out[s - s_lo] = (shi - a * nhi) + (a * nlo - slo)


def sweep_scaled(ref, Z, s_lo, s_hi, width, mode):
    """Window costs relative to ``ref`` (1-based ints) for s in [s_lo, s_hi]."""
    if s_hi < s_lo:
        return []
    n = len(ref) - 1
    hi_t = s_hi + width - 1
    u = [0] * (n + 1)
    for t in range(s_lo, hi_t + 1):
        u[t] = Z + 2 * Z * t - ref[t]
    if mode.fast:
        ua = np.asarray(u, dtype=np.int64)
        order = (np.argsort(ua[s_lo:hi_t + 1], kind="stable") + s_lo).astype(np.int64)
        u_buf = ua
    else:
        order = sorted(range(s_lo, hi_t + 1), key=lambda t: u[t])
        u_buf = u
    out = mode.zeros(s_hi - s_lo + 1)
    flag = mode.zeros(n + 1)
    mode.k(sweep_kernel)(u_buf, order, hi_t - s_lo + 1, s_lo, s_hi, width, Z, flag, out)
    return mode.to_list(out)


def sweep_attached_windows(instance: Instance, anchor="left", window_index_range=None,
                           reference=None, width=None, fast=None):
    """Movement of each abutting window relative to ``reference`` positions.

    Window s holds sensors s..s+width-1 (width defaults to lam).  With
    anchor "left" its first sensor sits at z, with "right" its last sensor
    sits at beta - z.  Sensors outside the window count as unmoved.  Returns
    one Fraction per window in ``window_index_range`` (inclusive pair).
    """
    n = instance.n
    width = instance.lam if width is None else width
    ref = list(instance.x if reference is None else reference)
    lo, hi = window_index_range or (1, n - width + 1)
    if anchor == "right":
        b = instance.beta
        mirrored = Instance(instance.z, b, tuple(b - v for v in reversed(instance.x)))
        mref = [b - Fraction(v) for v in reversed(ref)]
        vals = sweep_attached_windows(mirrored, "left", (n - hi - width + 2, n - lo - width + 2),
                                      mref, width, fast)
        return vals[::-1]
    if anchor != "left":
        raise ValueError("anchor must be 'left' or 'right'")
    sc = scale(instance.with_x(ref))
    mode = choose_mode(sc.magnitude + 2 * sc.z * n, n, fast)
    return [sc.back(v) for v in sweep_scaled(sc.x, sc.z, lo, hi, width, mode)]


# --------------------------------------------------------------------------
# lambda-window loop

ST_TRIVIAL, ST_REV, ST_ELIM, ST_CROSS, ST_ERR, ST_LAST = range(6)


@kernel
def shift_left_counted(p, q, amt, M, pts, size, lss, lsm, lsi, lsn, inf, stats, ctr):
    """Move S(p, q) left by amt and return the updated total movement M.

    The left-shift tree holds, for sensors right of their reference spot,
    how far right they are.  Those sensors get closer as the block moves,
    the others get farther, so the rate changes only when one of them
    reaches its reference spot.
    """
    while amt > 0:
        mn, w = ls_find_min(lss, lsm, lsi, lsn, size, p, q, inf, ctr)
        step = amt
        if w != 0 and mn < step:
            step = mn
        nv = ls_find_num(lsn, size, p, q, ctr)
        M += step * ((q - p + 1) - 2 * nv)
        pt_add(pts, size, p, q, -step, ctr)
        ls_add(lss, lsm, lsi, lsn, size, p, q, -step, inf, ctr)
        amt -= step
        if w != 0 and step == mn:
            mn = 0 * mn
            while w != 0 and mn == 0:
                ls_set_invalid(lss, lsm, lsi, lsn, size, w, inf, ctr)
                stats[ST_CROSS] += 1
                mn, w = ls_find_min(lss, lsm, lsi, lsn, size, p, q, inf, ctr)
    return M


@kernel
def lambda_window_kernel(ref, base, z, beta, inf, s_a, e_a, s_b, m0,
                         pts, size, lss, lsm, lsi, lsn, ocnt, usize, olen,
                         g_rg, g_a, g_cost, g_len, g_slot, n_g, dc_out, stats, ctr):
    M = m0
    head = 0
    s = s_a
    e = e_a
    while True:
        dc_out[s] = M
        stats[ST_LAST] = s
        if base[e] + pt_offset(pts, size, e, ctr) + z > beta:
            stats[ST_TRIVIAL] = s
            return
        if s == s_b:
            return
        # the next sensor on the right joins at beta + z
        j = e + 1
        rem = 2 * z
        while rem > 0 and head < n_g:
            rate = g_cost[head] - (j - g_rg[head] + 1)
            if rate <= 0:
                break
            amt = rem if rem < g_len[head] else g_len[head]
            M = shift_left_counted(g_a[head], j, amt, M, pts, size, lss, lsm, lsi, lsn,
                                   inf, stats, ctr)
            slot = g_slot[head]
            if olen[slot] == 0:
                ot_toggle(ocnt, usize, slot, 1, ctr)
            olen[slot] += amt
            rem -= amt
            g_len[head] -= amt
            if g_len[head] == 0:
                head += 1
            stats[ST_REV] += 1
        if rem > 0:
            slot = 3 * (j - 1) + 2
            if olen[slot] == 0:
                ot_toggle(ocnt, usize, slot, 1, ctr)
            olen[slot] += rem
        # the first sensor leaves and goes back to its reference spot
        ys = base[s] + pt_offset(pts, size, s, ctr)
        lo = ys - z
        if lo < 0:
            lo = 0 * z
        hi = ys + z
        glen = hi - lo if hi > lo else 0 * z
        diff = ys - ref[s]
        M -= diff if diff > 0 else -diff
        if diff != 0:
            pt_add(pts, size, s, s, -diff, ctr)
        if lsn[size + s - 1] == 1:
            ls_set_invalid(lss, lsm, lsi, lsn, size, s, inf, ctr)
        while True:
            sl = ot_succ(ocnt, usize, 0, ctr)
            if sl < 0 or sl // 3 + 1 > s:
                break
            olen[sl] = 0
            ot_toggle(ocnt, usize, sl, -1, ctr)
        while glen > 0:
            sl = ot_succ(ocnt, usize, 0, ctr)
            if sl < 0:
                stats[ST_ERR] = 1
                return
            if sl % 3 == 0:
                stats[ST_ERR] = 2
                return
            g = sl // 3 + 1
            amt = glen if glen < olen[sl] else olen[sl]
            M = shift_left_counted(s + 1, g, amt, M, pts, size, lss, lsm, lsi, lsn,
                                   inf, stats, ctr)
            olen[sl] -= amt
            glen -= amt
            if olen[sl] == 0:
                ot_toggle(ocnt, usize, sl, -1, ctr)
            stats[ST_ELIM] += 1
        s += 1
        e += 1


def _window_ds(X, Z, B, l, r):
    """D_s(i, j) via prefix sums: cost of parking S(i, l-1) at -z and S(r+1, j) at beta+z."""
    n = len(X) - 1
    left = [0] * (n + 2)      # left[i] = sum_{t=i}^{l-1} (-Z - X_t)
    for t in range(l - 1, 0, -1):
        left[t] = left[t + 1] + (-Z - X[t])
    right = [0] * (n + 1)     # right[j] = sum_{t=r+1}^{j} (X_t - Z - B)
    for t in range(r + 1, n + 1):
        right[t] = right[t - 1] + (X[t] - Z - B)

    def ds(i, j):
        return (left[i] if i < l else 0) + (right[j] if j > r else 0)

    return ds


def lambda_windows_scaled(X, n, Z, B, l, r, mode, check_loop=True):
    """Best window of exactly lam sensors containing S(l, r).

    Returns (cost, positions, info) or None when no such window exists.
    ``info['dc']`` maps window start -> D_c value.
    """
    lam = ceil_div(B, 2 * Z)
    s_a = max(1, r - lam + 1)
    s_b = min(l, n - lam + 1)
    if s_a > s_b:
        return None
    ds = _window_ds(X, Z, B, l, r)
    ref = [0] + [-Z if t < l else (B + Z if t > r else X[t]) for t in range(1, n + 1)]
    info = {"windows": (s_a, s_b), "reverse_operations": 0, "eliminations": 0,
            "crossings": 0, "loop_windows": 0, "tail_from": None, "fallback": 0}
    dc = {}
    attached_from = s_a
    run0 = None
    if 2 * Z * lam != B:
        e_a = s_a + lam - 1
        sub = [0] + ref[s_a:e_a + 1]
        run0 = run_containing(sub, lam, Z, B, mode)
        info["diag"] = diagnostics_of(run0)
        off = s_a - 1
        base_l = list(ref)
        for t in range(1, lam + 1):
            base_l[off + t] = run0.y[t]
        m0 = sum(abs(base_l[t] - ref[t]) for t in range(s_a, e_a + 1))
        size = tree_size(n)
        usize = tree_size(3 * n + 3)
        inf = mode.inf
        pts = mode.zeros(2 * size)
        lss = mode.zeros(2 * size)
        lsm = mode.array([inf] * (2 * size))
        lsi = mode.zeros(2 * size)
        lsn = mode.zeros(2 * size)
        ctr = mode.zeros(1)
        K = mode.k
        for t in range(s_a, e_a + 1):
            v = base_l[t] - ref[t]
            if v > 0:
                K(ls_set_valid)(lss, lsm, lsi, lsn, size, t, v, inf, ctr)
        # overlaps of the first window's solution, in global slots
        sub_pos = mode.array([0] + run0.y[1:lam + 1])
        sub_olen = mode.zeros(3 * lam + 3)
        scratch = [mode.zeros(lam + 2) for _ in range(3)]
        K(scan_gaps_overlaps)(sub_pos, lam, Z, B, *scratch, sub_olen)
        sub_olen = mode.to_list(sub_olen)
        olen = mode.zeros(3 * n + 3)
        ocnt = mode.zeros(2 * usize)
        for sslot in range(3 * lam):
            if sub_olen[sslot] > 0:
                olen[sslot + 3 * off] = sub_olen[sslot]
                K(ot_toggle)(ocnt, usize, sslot + 3 * off, 1, ctr)
        trailing = run0.trailing()
        g_rg = mode.array([e.gap_right + off for e in trailing] or [0])
        g_a = mode.array([e.restore_from + off for e in trailing] or [0])
        g_cost = mode.array([e.cost for e in trailing] or [0])
        g_len = mode.array([e.length for e in trailing] or [0])
        g_slot = mode.array([e.slot + 3 * off for e in trailing] or [0])
        dc_out = mode.zeros(n + 1)
        stats = mode.zeros(6)
        K(lambda_window_kernel)(mode.array(ref), mode.array(base_l), Z, B, inf, s_a, e_a, s_b,
                                m0, pts, size, lss, lsm, lsi, lsn, ocnt, usize, olen,
                                g_rg, g_a, g_cost, g_len, g_slot, len(trailing), dc_out,
                                stats, ctr)
        stats = mode.to_list(stats)
        dc_out = mode.to_list(dc_out)
        last = stats[ST_LAST]
        info.update(reverse_operations=stats[ST_REV], eliminations=stats[ST_ELIM],
                    crossings=stats[ST_CROSS], g_size=len(trailing))
        if stats[ST_ERR]:
            # never expected; recompute the remaining windows from scratch
            info["fallback"] = stats[ST_ERR]
            for s in range(s_a, s_b + 1):
                sub = [0] + ref[s:s + lam]
                rr = run_containing(sub, lam, Z, B, mode)
                dc[s] = sum(abs(rr.y[t] - sub[t]) for t in range(1, lam + 1))
            attached_from = s_b + 1
        else:
            for s in range(s_a, last + 1):
                dc[s] = dc_out[s]
            info["loop_windows"] = last - s_a + 1
            attached_from = last + 1 if stats[ST_TRIVIAL] else s_b + 1
            if stats[ST_TRIVIAL]:
                info["tail_from"] = last + 1
    if attached_from <= s_b:
        vals = sweep_scaled(ref, Z, attached_from, s_b, lam, mode)
        for s, v in zip(range(attached_from, s_b + 1), vals):
            dc[s] = v
    info["dc"] = dc
    best = None
    for s in range(s_a, s_b + 1):
        v = ds(s, s + lam - 1) + dc[s]
        if best is None or v < best[1]:
            best = (s, v)
    s_star, cost = best
    y = list(X)
    if s_star >= attached_from:
        for t in range(s_star, s_star + lam):
            y[t] = Z + 2 * Z * (t - s_star)
    else:
        sub = [0] + ref[s_star:s_star + lam]
        rr = run0 if s_star == s_a else run_containing(sub, lam, Z, B, mode)
        for t in range(1, lam + 1):
            y[s_star + t - 1] = rr.y[t]
    info["best_window"] = (s_star, s_star + lam - 1)
    return cost, y, info


# --------------------------------------------------------------------------
# candidate 1 and the orchestration

def _first_candidate(X, n, Z, B, l, r, mode):
    F1 = [0] + [-Z if t < l else X[t] for t in range(1, n + 1)]
    out1 = one_sided_scaled(F1, n, Z, B, mode)
    r_star = out1.m_star
    P = [0] + [X[t] if t <= r else B + Z for t in range(1, r_star + 1)]
    ds_r = sum(X[t] - Z - B for t in range(r + 1, r_star + 1))
    Pm = [0] + [B - P[r_star + 1 - t] for t in range(1, r_star + 1)]
    out2 = one_sided_scaled(Pm, r_star, Z, B, mode)
    y = [0] + [B - out2.y[r_star + 1 - t] for t in range(1, r_star + 1)] + list(X[r_star + 1:])
    l_star = r_star + 1 - out2.m_star
    info = {"r_star": r_star, "l_star": l_star,
            "reverse_operations": out1.reverse_ops + out2.reverse_ops,
            "shift_processes": out1.diag.get("shift_processes", 0)
            + out2.diag.get("shift_processes", 0)}
    return ds_r + out2.cost, y, info


def boundary_indices(X, n, Z, B):
    inside = [t for t in range(1, n + 1) if X[t] + Z >= 0 and X[t] - Z <= B]
    if not inside:
        return None, None
    return inside[0], inside[-1]


def _general_scaled(X, n, Z, B, mode):
    l, r = boundary_indices(X, n, Z, B)
    lam = ceil_div(B, 2 * Z)
    c1, y1, info1 = _first_candidate(X, n, Z, B, l, r, mode)
    diag = {"l": l, "r": r, "lam": lam, "sol1": c1, "sol1_info": info1,
            "reverse_operations": info1["reverse_operations"],
            "shift_processes": info1["shift_processes"]}
    if r - l + 1 >= lam:
        diag["branch"] = "sol1"
        return c1, y1, diag
    res = lambda_windows_scaled(X, n, Z, B, l, r, mode)
    if res is None:
        diag["branch"] = "sol1"
        return c1, y1, diag
    c2, y2, info2 = res
    diag["sol2"] = c2
    diag["sol2_info"] = {k: v for k, v in info2.items() if k != "dc"}
    diag["reverse_operations"] += info2["reverse_operations"]
    if c2 < c1:
        diag["branch"] = "sol2"
        return c2, y2, diag
    diag["branch"] = "sol1"
    return c1, y1, diag


def _all_outside_scaled(X, n, Z, B, mode):
    lam = ceil_div(B, 2 * Z)
    hi = n - lam + 1
    left = sweep_scaled(X, Z, 1, hi, lam, mode)
    Xm = [0] + [B - X[n + 1 - t] for t in range(1, n + 1)]
    right_m = sweep_scaled(Xm, Z, 1, hi, lam, mode)
    best = None
    for s in range(1, hi + 1):
        if best is None or left[s - 1] < best[0]:
            best = (left[s - 1], "left", s)
    for sm in range(1, hi + 1):
        s = n - sm - lam + 2
        v = right_m[sm - 1]
        if v < best[0] or (v == best[0] and best[1] == "right" and s < best[2]):
            best = (v, "right", s)
    cost, anchor, s = best
    y = list(X)
    for t in range(s, s + lam):
        if anchor == "left":
            y[t] = Z + 2 * Z * (t - s)
        else:
            y[t] = B - Z - 2 * Z * (s + lam - 1 - t)
    return cost, y, {"branch": "all_outside", "anchor": anchor, "window": (s, s + lam - 1)}


def _wide_scaled(X, n, Z, B):
    """2z >= beta: one sensor in [beta - z, z], or two sensors chaining across."""
    lo, hi = B - Z, Z
    best = None
    for t in range(1, n + 1):
        c = lo - X[t] if X[t] < lo else (X[t] - hi if X[t] > hi else 0)
        # among equal costs a sensor moving right should be the last of its
        # duplicates so the order survives
        if best is None or c < best[0] or (c == best[0] and X[t] < lo and X[t] == X[best[1][0]]):
            best = (c, (t,))
    xs = X[1:]
    q1 = bisect_right(xs, Z)          # sensors with x <= z
    q2 = bisect_left(xs, B - Z)       # sensors with x < beta - z
    cands = sorted({t for q in (q1, q2) for t in range(q - 1, q + 3) if 1 <= t <= n})
    for a in cands:
        for b in cands:
            if a >= b:
                continue
            pa = min(X[a], Z)
            pb = max(X[b], B - Z)
            c = max(0, X[a] - Z) + max(0, B - Z - X[b]) + max(0, pb - pa - 2 * Z)
            if c < best[0]:
                best = (c, (a, b))
    cost, who = best
    y = list(X)
    if len(who) == 1:
        t = who[0]
        y[t] = min(max(X[t], lo), hi)
    else:
        a, b = who
        pa = min(X[a], Z)
        pb = max(X[b], B - Z)
        extra = max(0, pb - pa - 2 * Z)
        move_a = min(extra, Z - pa)
        y[a] = pa + move_a
        y[b] = pb - (extra - move_a)
    return cost, y, {"branch": "wide", "sensors": who}


def _finish(instance, sc, y, case, diag):
    ys = y[1:]
    if any(ys[i] < ys[i - 1] for i in range(1, len(ys))):
        # equal-cost reordering; sorting never raises total movement
        ys = sorted(ys)
        diag["order_repairs"] = diag.get("order_repairs", 0) + 1
    return report_from_scaled(sc, [0] + ys, case, diag)


def solve_general(instance: Instance, fast=None):
    validate(instance)
    sc = scale(instance)
    mode = choose_mode(sc.magnitude + 2 * sc.z * sc.n, sc.n, fast)
    l, r = boundary_indices(sc.x, sc.n, sc.z, sc.beta)
    if l is None:
        return solve_all_outside(instance, fast)
    if l == 1 or r == sc.n:
        raise InstanceError("not a general instance: one side has no outside sensor")
    cost, y, diag = _general_scaled(sc.x, sc.n, sc.z, sc.beta, mode)
    for key in ("sol1", "sol2"):
        if key in diag:
            diag[key] = sc.back(diag[key])
    return _finish(instance, sc, y, CaseKind.General, diag)


def solve_all_outside(instance: Instance, fast=None):
    validate(instance)
    sc = scale(instance)
    if boundary_indices(sc.x, sc.n, sc.z, sc.beta)[0] is not None:
        raise InstanceError("some sensor meets the barrier")
    mode = choose_mode(sc.magnitude + 2 * sc.z * sc.n, sc.n, fast)
    cost, y, diag = _all_outside_scaled(sc.x, sc.n, sc.z, sc.beta, mode)
    return _finish(instance, sc, y, CaseKind.AllOutside, diag)


def solve_lambda_windows(instance: Instance, fast=None):
    """Best window of exactly lam sensors containing every sensor meeting the barrier.

    Returns (cost, positions, info) in instance units, or None if no such
    window exists.  ``info['dc']`` maps each window start to its D_c value.
    """
    validate(instance)
    sc = scale(instance)
    mode = choose_mode(sc.magnitude + 2 * sc.z * sc.n, sc.n, fast)
    l, r = boundary_indices(sc.x, sc.n, sc.z, sc.beta)
    if l is None:
        raise InstanceError("no sensor meets the barrier")
    res = lambda_windows_scaled(sc.x, sc.n, sc.z, sc.beta, l, r, mode)
    if res is None:
        return None
    cost, y, info = res
    info = dict(info)
    info["dc"] = {s: sc.back(v) for s, v in info["dc"].items()}
    return sc.back(cost), [sc.back(v) for v in y[1:]], info


def solve(instance: Instance, fast=None):
    """Optimal barrier cover for any feasible instance."""
    from .containing import solve_containing
    from .one_sided import solve_one_sided

    validate(instance)
    case = classify(instance)
    if case is CaseKind.TrivialWideSensor:
        sc = scale(instance)
        cost, y, diag = _wide_scaled(sc.x, sc.n, sc.z, sc.beta)
        diag.update(shift_processes=0, reverse_operations=0, pdr_processes=0)
        return _finish(instance, sc, y, case, diag)
    if case is CaseKind.Containing:
        report, _ = solve_containing(instance, fast)
        report.diagnostics["branch"] = "containing"
        return report
    if case in (CaseKind.OneSidedRight, CaseKind.OneSidedLeft):
        return solve_one_sided(instance, fast)
    if case is CaseKind.AllOutside:
        return solve_all_outside(instance, fast)
    return solve_general(instance, fast)
