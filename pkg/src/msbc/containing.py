"""Containing case: every sensor interval meets the barrier.

Gaps are closed from left to right.  For the current gap g the nearest
overlap on each side is found in the overlap tree.  Using the right overlap
moves S_r (the sensors between g and that overlap) left and costs one unit
per sensor.  Using the left overlap moves S_l right; sensors of S_l that sit
left of their start get closer to it, so the cost is |S_l| - 2 * (number of
those).  The cheaper side wins and ties go left.  A right shift is also
capped by the smallest positive displacement in S_l.  When that cap binds
the process is a "PDR" step and the sensors reaching displacement zero leave
the left-shift tree.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from ._jit import choose_mode, kernel
from .core import (BothSidesEmpty, CaseKind, GapRecord, Instance, NotContaining,
                   OverlapRecord, report_from_scaled, scale, scan_gaps_overlaps,
                   validate)
from .trees import (ls_add, ls_find_min, ls_find_num, ls_set_invalid, ls_set_valid,
                    ot_pred, ot_succ, ot_toggle, pt_add, pt_flush, tree_size)

# stats buffer layout
ST_PROC, ST_LEFT, ST_RIGHT, ST_PDR, ST_VALID, ST_INVALID, ST_LASTLEFT, ST_ERR, ST_GAMMA = range(9)
N_STATS = 9
ERR_BOTH_EMPTY = 1
ERR_LOG_FULL = 2


def missing_side_cost():
    """Cost assigned to a side that has no overlap at all."""
    return float("inf")


@kernel
def containing_kernel(y, n, z, beta, inf,
                      pts, size, lss, lsm, lsi, lsn, ocnt, usize, olen,
                      gi, glen, gflag,
                      lkind, lgap, lrem, lslot, lolen, lcost, ldist, lpdr,
                      cap, stats, ctr, acc, out):
    ng = scan_gaps_overlaps(y, n, z, beta, gi, glen, gflag, olen)
    for s in range(3 * n):
        if olen[s] > 0:
            ot_toggle(ocnt, usize, s, 1, ctr)
    gamma = 0
    nproc = 0
    stats[ST_LASTLEFT] = -1
    for t in range(ng):
        i = gi[t]
        rem = glen[t]
        while rem > 0:
            sl = ot_pred(ocnt, usize, 3 * i - 1, ctr)
            sr = ot_succ(ocnt, usize, 3 * i, ctr)
            cl = inf
            cr = inf
            jj = 0
            k = 0
            if sr >= 0:
                k = sr // 3 + 1
                cr = k - i
            if sl >= 0:
                jj = sl // 3 + 1
                if sl % 3 == 1:
                    jj += 1
                nv = ls_find_num(lsn, size, jj, i, ctr)
                cl = (i - jj + 1) - 2 * nv
            if sl < 0 and sr < 0:
                stats[ST_ERR] = ERR_BOTH_EMPTY
                return
            if nproc >= cap:
                stats[ST_ERR] = ERR_LOG_FULL
                return
            lgap[nproc] = t
            lrem[nproc] = rem
            if sr >= 0 and (sl < 0 or cr < cl):
                d = rem if rem < olen[sr] else olen[sr]
                pt_add(pts, size, i + 1, k, -d, ctr)
                start = gamma + 1
                if start < i + 1:
                    start = i + 1
                for u in range(start, k + 1):
                    ls_set_valid(lss, lsm, lsi, lsn, size, u, 0, inf, ctr)
                    stats[ST_VALID] += 1
                ls_add(lss, lsm, lsi, lsn, size, i + 1, k, d, inf, ctr)
                if k > gamma:
                    gamma = k
                lkind[nproc] = 0
                lslot[nproc] = sr
                lolen[nproc] = olen[sr]
                lcost[nproc] = cr
                ldist[nproc] = d
                lpdr[nproc] = 0
                olen[sr] -= d
                if olen[sr] == 0:
                    ot_toggle(ocnt, usize, sr, -1, ctr)
                stats[ST_LEFT] += 1
                stats[ST_LASTLEFT] = nproc
            else:
                alpha, w = ls_find_min(lss, lsm, lsi, lsn, size, jj, i, inf, ctr)
                d = rem if rem < olen[sl] else olen[sl]
                if w != 0 and alpha < d:
                    d = alpha
                pt_add(pts, size, jj, i, d, ctr)
                ls_add(lss, lsm, lsi, lsn, size, jj, i, -d, inf, ctr)
                pdr = 0
                if w != 0 and d == alpha:
                    pdr = 1
                    alpha = 0 * alpha
                    while w != 0 and alpha == 0:
                        ls_set_invalid(lss, lsm, lsi, lsn, size, w, inf, ctr)
                        stats[ST_INVALID] += 1
                        alpha, w = ls_find_min(lss, lsm, lsi, lsn, size, jj, i, inf, ctr)
                    stats[ST_PDR] += 1
                lkind[nproc] = 1
                lslot[nproc] = sl
                lolen[nproc] = olen[sl]
                lcost[nproc] = cl
                ldist[nproc] = d
                lpdr[nproc] = pdr
                olen[sl] -= d
                if olen[sl] == 0:
                    ot_toggle(ocnt, usize, sl, -1, ctr)
                stats[ST_RIGHT] += 1
            rem -= d
            nproc += 1
    stats[ST_PROC] = nproc
    stats[ST_GAMMA] = gamma
    pt_flush(y, pts, size, n, acc, out)


@dataclass
class ShiftProcess:
    kind: str
    gap: GapRecord
    overlap: OverlapRecord
    cost: int
    distance: Fraction
    pdr: bool


@dataclass
class TrailingEntry:
    """A right shift after the last left shift, as reverse operations see it."""

    gap_right: int    # sensor just right of the gap
    length: int       # distance the shift moved (scaled units)
    cost: int         # C(o) when it ran
    restore_from: int  # first sensor to move back left when the overlap is restored
    slot: int         # overlap slot


class ContainingRun:
    """Raw result of one kernel run in scaled integer units."""

    def __init__(self, n, y, stats, logs, gaps):
        self.n = n
        self.y = y                  # 1-based final positions
        self.stats = stats
        self.kind, self.gap, self.rem, self.slot, self.olen, self.cost, self.dist, self.pdr = logs
        self.gi, self.glen, self.gflag = gaps

    @property
    def nproc(self):
        return self.stats[ST_PROC]

    def trailing(self) -> List[TrailingEntry]:
        """Right shifts after the last left shift, most recent first."""
        out = []
        for p in range(self.nproc - 1, self.stats[ST_LASTLEFT], -1):
            slot = self.slot[p]
            g, sub = divmod(slot, 3)
            out.append(TrailingEntry(self.gi[self.gap[p]] + 1, self.dist[p], self.cost[p],
                                     g + 1 + (1 if sub == 1 else 0), slot))
        return out


def run_containing(X, n, Z, B, mode):
    """Run the kernel on scaled positions X[1..n]; returns a ContainingRun."""
    K = mode.k
    size = tree_size(max(1, n))
    usize = tree_size(3 * max(1, n))
    cap = 4 * n + 8
    inf = mode.inf
    y = mode.array(X)
    pts = mode.zeros(2 * size)
    lss = mode.zeros(2 * size)
    lsm = mode.array([inf] * (2 * size))
    lsi = mode.zeros(2 * size)
    lsn = mode.zeros(2 * size)
    ocnt = mode.zeros(2 * usize)
    olen = mode.zeros(3 * n + 3)
    gi, glen, gflag = mode.zeros(n + 2), mode.zeros(n + 2), mode.zeros(n + 2)
    logs = [mode.zeros(cap) for _ in range(8)]
    stats = mode.zeros(N_STATS)
    ctr = mode.zeros(1)
    acc = mode.zeros(2 * size)
    out = mode.zeros(n + 1)
    K(containing_kernel)(y, n, Z, B, inf, pts, size, lss, lsm, lsi, lsn, ocnt, usize, olen,
                         gi, glen, gflag, *logs, cap, stats, ctr, acc, out)
    stats = mode.to_list(stats)
    if stats[ST_ERR] == ERR_BOTH_EMPTY:
        raise BothSidesEmpty("a gap has no overlap on either side")
    if stats[ST_ERR] == ERR_LOG_FULL:
        raise RuntimeError("shift process bound 4n exceeded")
    m = stats[ST_PROC]
    logs = [mode.to_list(b[:m]) for b in logs]
    gaps = [mode.to_list(b) for b in (gi, glen, gflag)]
    return ContainingRun(n, [0] + mode.to_list(out[1:]), stats, logs, gaps)


class ProcessLog:
    """Chronological shift processes of one containing solve.

    ``processes`` may be a callable; it is then evaluated on first use.
    """

    def __init__(self, processes, last_left, entries=()):
        self._processes = processes
        self.last_left = last_left
        self._entries = entries

    @property
    def processes(self):
        if callable(self._processes):
            self._processes = self._processes()
        return self._processes

    def __len__(self):
        return len(self.processes)

    def __iter__(self):
        return iter(self.processes)

    def trailing_entries(self) -> List[TrailingEntry]:
        """Fresh copies of the reverse-operation list G, lengths in instance units."""
        ents = self._entries() if callable(self._entries) else self._entries
        return [TrailingEntry(e.gap_right, e.length, e.cost, e.restore_from, e.slot)
                for e in ents]

    @property
    def trailing_right(self):
        """Right shifts after the last left shift, most recent first."""
        return self.processes[self.last_left + 1:][::-1]

    @property
    def G(self):
        return [p.gap for p in self.trailing_right]

    @property
    def O(self):
        return [p.overlap for p in self.trailing_right]

    def costs_monotone(self, per_gap=False) -> bool:
        """Are the costs of the trailing right shifts non-increasing (most recent first)?

        The full chain needs every trailing gap to have no overlap on its
        right, which is the situation reverse operations work in; with
        ``per_gap`` only processes on the same gap are compared, which holds
        for every run.
        """
        tail = self.trailing_right
        if not per_gap:
            costs = [p.cost for p in tail]
            return all(a >= b for a, b in zip(costs, costs[1:]))
        return all(a.cost >= b.cost for a, b in zip(tail, tail[1:])
                   if (a.gap.left_gen, a.gap.right_gen) == (b.gap.left_gen, b.gap.right_gen))


def build_log(run: ContainingRun, back) -> ProcessLog:
    kinds = ("outside_left", "pair", "outside_right")

    def processes():
        procs = []
        for p in range(run.nproc):
            t = run.gap[p]
            i, flag = run.gi[t], run.gflag[t]
            gap = GapRecord(i if flag & 1 else None, i + 1 if flag & 2 else None,
                            back(run.rem[p]))
            g, sub = divmod(run.slot[p], 3)
            ov = OverlapRecord(g + 1, g + 2 if sub == 1 else g + 1, back(run.olen[p]),
                               kinds[sub])
            procs.append(ShiftProcess("left" if run.kind[p] == 0 else "right", gap, ov,
                                      run.cost[p], back(run.dist[p]), bool(run.pdr[p])))
        return procs

    def entries():
        return [TrailingEntry(e.gap_right, back(e.length), e.cost, e.restore_from, e.slot)
                for e in run.trailing()]

    return ProcessLog(processes, run.stats[ST_LASTLEFT], entries)


def diagnostics_of(run: ContainingRun) -> dict:
    s = run.stats
    return {"shift_processes": s[ST_PROC], "left_shifts": s[ST_LEFT], "right_shifts": s[ST_RIGHT],
            "pdr_processes": s[ST_PDR], "set_valid": s[ST_VALID], "set_invalid": s[ST_INVALID],
            "gamma": s[ST_GAMMA]}


def solve_containing(instance: Instance, fast=None):
    """Optimal configuration for a containing instance, plus its process log."""
    validate(instance)
    sc = scale(instance)
    if not sc.all_intersect():
        raise NotContaining("some sensor interval misses the barrier")
    mode = choose_mode(sc.magnitude, sc.n, fast, sums=False)
    run = run_containing(sc.x, sc.n, sc.z, sc.beta, mode)
    diag = diagnostics_of(run)
    diag["reverse_operations"] = 0
    return (report_from_scaled(sc, run.y, CaseKind.Containing, diag),
            build_log(run, sc.back))
