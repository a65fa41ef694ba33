"""Sensors missing the barrier on both sides.

The solver builds two candidates and keeps the cheaper one: a pair of
one-sided solves (right end first, then the left end), and the best window
of exactly lam consecutive sensors.  The diagnostics say which one won.
"""
from fractions import Fraction

from msbc import Instance, oracle_optimal, solve, sweep_attached_windows


def explain(inst):
    rep = solve(inst)
    d = rep.diagnostics
    print(f"sensors {[str(v) for v in inst.x]}, z = {inst.z}, beta = {inst.beta}")
    print(f"  case {rep.case.value}, sensors {d.get('l')}..{d.get('r')} meet the barrier")
    print(f"  one-sided candidate {d.get('sol1')}, window candidate {d.get('sol2', 'n/a')}")
    print(f"  chosen: {d.get('branch')}, positions {[str(v) for v in rep.y]}, cost {rep.cost}")
    print(f"  brute force agrees: {oracle_optimal(inst)[0] == rep.cost}\n")


if __name__ == "__main__":
    explain(Instance(1, 4, (-4, 2, 7)))
    explain(Instance(1, 4, (-3, Fraction(3, 2), 6, 7)))
    explain(Instance(1, 4, (-10, -9, 5, 6)))
    inst = Instance(1, 4, (-3, Fraction(3, 2), 6, 7))
    costs = sweep_attached_windows(inst, "left", width=2)
    print("cost of packing each pair of neighbours against the left end:",
          [str(c) for c in costs])
