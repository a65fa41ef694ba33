"""One-sided case: every sensor that misses the barrier lies to its right.

Let m be the last sensor meeting the barrier.  For j >= m, D(j) is the best
cost when exactly the sensors m+1..j are brought in: they are first moved
to beta + z (cost D_s(j)), then the containing solver is run on sensors
1..j (cost D_c(j)).  The optimum is min_j D(j), reached at the smallest
minimiser m*.

D_c(j) is obtained from D_c(j-1) without re-solving.  The right shifts
after the last left shift of the first containing solve are kept as a list
G, most recent first.  The new sensor s_j adds the spare piece [beta,
beta + 2z].  Reverse operations spend that piece on G's gaps instead of the
overlaps those right shifts used: S(a, j) moves left and the old overlap
comes back.  Each unit saves C(o) - C(s_j, g), where C(s_j, g) is the number
of sensors from the gap to s_j, and the loop stops as soon as that saving is
not positive.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ._jit import choose_mode, kernel
from .containing import TrailingEntry, diagnostics_of, run_containing
from .core import (CaseKind, Instance, InstanceError, mirror, report_from_scaled, scale,
                   validate)
from .trees import PositionTree, pt_add, pt_offset, tree_size

STOP_EXHAUSTED, STOP_BEYOND, STOP_EMPTY, STOP_COST = 0, 1, 2, 3
STOP_NAMES = {STOP_EXHAUSTED: "piece used up", STOP_BEYOND: "previous sensor sticks out",
              STOP_EMPTY: "no gaps left", STOP_COST: "no saving"}


@kernel
def reverse_ops_step(j, base, pts, size, z, beta, g_rg, g_a, g_cost, g_len,
                     head, n_g, stats, ctr):
    """Reverse operations for new sensor j sitting at beta + z.

    Returns (saving, new head of G, stop reason).  stats[0] counts
    operations, stats[2] counts rate increases within one sensor.
    """
    saving = 0 * z
    end = base[j - 1] + pt_offset(pts, size, j - 1, ctr) + z
    if end > beta:
        return saving, head, 1
    rem = 2 * z
    last = -1
    while rem > 0:
        if head >= n_g:
            return saving, head, 2
        rate = g_cost[head] - (j - g_rg[head] + 1)
        if rate <= 0:
            return saving, head, 3
        if last >= 0 and rate > last:
            stats[2] += 1
        last = rate
        amt = rem if rem < g_len[head] else g_len[head]
        pt_add(pts, size, g_a[head], j, -amt, ctr)
        saving += rate * amt
        rem -= amt
        g_len[head] -= amt
        if g_len[head] == 0:
            head += 1
        stats[0] += 1
    return saving, head, 0


@kernel
def one_sided_kernel(base, n, z, beta, j0, dc0, pts, size, g_rg, g_a, g_cost, g_len,
                     n_g, dc_out, reasons, stats, ctr):
    head = 0
    dc = dc0
    dc_out[j0] = dc0
    for j in range(j0 + 1, n + 1):
        saving, head, reason = reverse_ops_step(j, base, pts, size, z, beta, g_rg, g_a,
                                                g_cost, g_len, head, n_g, stats, ctr)
        dc -= saving
        dc_out[j] = dc
        reasons[j] = reason
    stats[1] = head


def reverse_operations(tree: PositionTree, G: List[TrailingEntry], j: int, z, beta):
    """Apply the reverse operations for new sensor j to ``tree`` in place.

    ``G`` is consumed from the front (entries are shortened or removed).
    Returns (saving, stop reason name, operation count); D_c drops by saving.
    """
    from ._jit import twin
    g_rg = [e.gap_right for e in G]
    g_a = [e.restore_from for e in G]
    g_cost = [e.cost for e in G]
    g_len = [Fraction(e.length) for e in G]
    stats = [0, 0, 0]
    saving, head, reason = twin(reverse_ops_step)(
        j, tree.base, tree.shift, tree.size, Fraction(z), Fraction(beta),
        g_rg, g_a, g_cost, g_len, 0, len(G), stats, tree.ctr)
    for q in range(len(G)):
        G[q].length = g_len[q]
    del G[:head]
    return Fraction(saving), STOP_NAMES[reason], stats[0]


@dataclass
class OneSidedOutcome:
    """Scaled-integer result of the one-sided algorithm."""

    m: int
    lam: int
    j0: int
    Ds: dict
    Dc: dict
    m_star: int
    cost: int
    y: list                      # 1-based final positions
    reverse_ops: int = 0
    g_size: int = 0
    rate_increases: int = 0
    reasons: dict = field(default_factory=dict)
    diag: dict = field(default_factory=dict)

    @property
    def D(self):
        return {j: self.Ds[j] + self.Dc[j] for j in self.Dc}


def ceil_div(a, b):
    return -((-a) // b)


def far_right_positions(X, n, Z, B):
    """Every sensor right of the barrier: the first lam sensors abut from z."""
    lam = ceil_div(B, 2 * Z)
    y = list(X)
    for t in range(1, lam + 1):
        y[t] = Z + 2 * Z * (t - 1)
    return y


def one_sided_scaled(X, n, Z, B, mode) -> OneSidedOutcome:
    """Solve a one-sided instance given as scaled ints X[1..n].

    No sensor may lie strictly left of the barrier.  Sensors touching it
    (x + z = 0, x - z = beta) count as meeting it.
    """
    lam = ceil_div(B, 2 * Z)
    m = 0
    for t in range(1, n + 1):
        if X[t] - Z <= B:
            m = t
    if m == 0:
        y = far_right_positions(X, n, Z, B)
        cost = sum(abs(y[t] - X[t]) for t in range(1, n + 1))
        return OneSidedOutcome(0, lam, lam, {lam: cost}, {lam: 0}, lam, cost, y,
                               diag={"far_right": True})
    j0 = max(m, lam)
    Ds = {}
    acc = 0
    for j in range(m, n + 1):
        if j > m:
            acc += X[j] - Z - B
        if j >= j0:
            Ds[j] = acc
    far = B + Z

    def prepared(j):
        return [0] + [X[t] if t <= m else far for t in range(1, j + 1)]

    F0 = prepared(j0)
    run = run_containing(F0, j0, Z, B, mode)
    dc0 = sum(abs(run.y[t] - F0[t]) for t in range(1, j0 + 1))
    trailing = run.trailing()
    n_g = len(trailing)
    size = tree_size(n)
    base = mode.array(run.y[:j0 + 1] + [far] * (n - j0))
    pts = mode.zeros(2 * size)
    g_rg = mode.array([e.gap_right for e in trailing] or [0])
    g_a = mode.array([e.restore_from for e in trailing] or [0])
    g_cost = mode.array([e.cost for e in trailing] or [0])
    g_len = mode.array([e.length for e in trailing] or [0])
    dc_out = mode.zeros(n + 1)
    reasons = mode.zeros(n + 1)
    stats = mode.zeros(3)
    ctr = mode.zeros(1)
    mode.k(one_sided_kernel)(base, n, Z, B, j0, dc0, pts, size, g_rg, g_a, g_cost, g_len,
                             n_g, dc_out, reasons, stats, ctr)
    dc_out = mode.to_list(dc_out)
    reasons = mode.to_list(reasons)
    stats = mode.to_list(stats)
    Dc = {j: dc_out[j] for j in range(j0, n + 1)}
    best = None
    for j in range(j0, n + 1):
        v = Ds[j] + Dc[j]
        if best is None or v < best[1]:
            best = (j, v)
    m_star, cost = best
    diag = diagnostics_of(run)
    if m_star == j0:
        final = run
    else:
        final = run_containing(prepared(m_star), m_star, Z, B, mode)
        d2 = diagnostics_of(final)
        diag = {k: diag[k] + d2[k] for k in diag if k != "gamma"}
    y = final.y[:m_star + 1] + list(X[m_star + 1:])
    return OneSidedOutcome(m, lam, j0, Ds, Dc, m_star, cost, y, stats[0], n_g, stats[2],
                           {j: reasons[j] for j in range(j0 + 1, n + 1)}, diag)


def check_unimodal(series, strict=True) -> bool:
    """Decreasing to the first minimum, at most one tie right after, then increasing.

    ``series`` may contain None or inf for undefined leading entries; they are
    skipped.  With ``strict=False`` only weak unimodality is required.
    """
    vals = [v for v in series if v is not None and v != float("inf")]
    if len(vals) <= 1:
        return True
    k = min(range(len(vals)), key=lambda i: (vals[i], i))
    if strict:
        if any(vals[i] <= vals[i + 1] for i in range(k)):
            return False
        rest = vals[k:]
        if len(rest) >= 2 and rest[1] == rest[0]:
            rest = rest[1:]
        return all(rest[i] < rest[i + 1] for i in range(len(rest) - 1))
    return (all(vals[i] >= vals[i + 1] for i in range(k))
            and all(vals[i] <= vals[i + 1] for i in range(k, len(vals) - 1)))


@dataclass
class OneSidedSeries:
    m: int
    lam: int
    m_star: int
    D: List[Optional[Fraction]]     # index j - 1 holds D(j); None where undefined
    Dc: List[Optional[Fraction]]
    Ds: List[Optional[Fraction]]
    reverse_ops: int
    g_size: int

    def csv(self) -> str:
        lines = ["j,D,Dc,Ds"]
        for j in range(1, len(self.D) + 1):
            cells = [self.D[j - 1], self.Dc[j - 1], self.Ds[j - 1]]
            lines.append(f"{j}," + ",".join("inf" if c is None else str(c) for c in cells))
        return "\n".join(lines) + "\n"


def _right_sided(instance):
    z, b = instance.z, instance.beta
    if any(v + z < 0 for v in instance.x):
        if any(v - z > b for v in instance.x):
            raise InstanceError("sensors miss the barrier on both sides")
        return mirror(instance), True
    return instance, False


def one_sided_series(instance: Instance, fast=None) -> OneSidedSeries:
    """The full D(j) series of the one-sided algorithm (mirrored if left-sided)."""
    validate(instance)
    inst, _ = _right_sided(instance)
    sc = scale(inst)
    mode = choose_mode(sc.magnitude, sc.n, fast)
    out = one_sided_scaled(sc.x, sc.n, sc.z, sc.beta, mode)
    D, Dc, Ds = [], [], []
    for j in range(1, sc.n + 1):
        if j in out.Dc:
            D.append(sc.back(out.Ds[j] + out.Dc[j]))
            Dc.append(sc.back(out.Dc[j]))
            Ds.append(sc.back(out.Ds[j]))
        else:
            D.append(None)
            Dc.append(None)
            Ds.append(None)
    return OneSidedSeries(out.m, out.lam, out.m_star, D, Dc, Ds, out.reverse_ops, out.g_size)


def solve_far_right_special(instance: Instance):
    """All sensors right of the barrier: sensors 1..lam abut starting at z."""
    validate(instance)
    if not all(v - instance.z > instance.beta for v in instance.x):
        raise InstanceError("some sensor is not strictly right of the barrier")
    sc = scale(instance)
    y = far_right_positions(sc.x, sc.n, sc.z, sc.beta)
    return report_from_scaled(sc, y, CaseKind.OneSidedRight,
                       {"branch": "far_right", "shift_processes": 0, "reverse_operations": 0,
                        "pdr_processes": 0})


def solve_one_sided(instance: Instance, fast=None):
    """Optimal solution when all off-barrier sensors are on one side."""
    validate(instance)
    inst, flipped = _right_sided(instance)
    sc = scale(inst)
    mode = choose_mode(sc.magnitude, sc.n, fast)
    out = one_sided_scaled(sc.x, sc.n, sc.z, sc.beta, mode)
    y = out.y
    if flipped:
        n = sc.n
        y = [0] + [sc.beta - y[n + 1 - t] for t in range(1, n + 1)]
        sc = scale(instance)
    diag = dict(out.diag)
    diag.update({"branch": "far_right" if out.m == 0 else "one_sided", "m": out.m,
                 "m_star": out.m_star, "reverse_operations": out.reverse_ops,
                 "g_size": out.g_size, "rate_increases": out.rate_increases,
                 "mirrored": flipped})
    if out.m:
        # strict unimodality can fail with coincident sensors; reported, not raised
        D = out.D
        diag["unimodal"] = check_unimodal([D[j] for j in sorted(D)])
    case = CaseKind.OneSidedLeft if flipped else CaseKind.OneSidedRight
    return report_from_scaled(sc, y, case, diag)
