"""How many far-away sensors should be pulled in?

All sensors that miss the barrier sit to its right.  Bringing in j of them
costs a fixed march to the barrier end plus a containing solve.  The total
D(j) goes down and then up, so the solver stops at the first minimum.
"""
import random
from fractions import Fraction

from msbc import Instance, check_unimodal, one_sided_series, solve_one_sided


def table(inst):
    s = one_sided_series(inst)
    print(f"sensors {[str(v) for v in inst.x]}, z = {inst.z}, beta = {inst.beta}")
    print(f"  last sensor on the barrier: {s.m}, fewest sensors that can cover it: {s.lam}")
    print(s.csv().rstrip().replace("\n", "\n  ").join(["  ", ""]))
    print(f"  best j = {s.m_star}; unimodal: {check_unimodal(s.D)}")
    rep = solve_one_sided(inst)
    print(f"  positions {[str(v) for v in rep.y]}, cost {rep.cost}\n")


if __name__ == "__main__":
    table(Instance(1, 4, (1, 6, 8)))
    rng = random.Random(3)
    xs = sorted([Fraction(rng.randint(0, 40), 4) for _ in range(4)]
                + [Fraction(rng.randint(60, 160), 4) for _ in range(6)])
    table(Instance(1, 16, tuple(xs)))
