"""Watch the greedy close gaps when every sensor already touches the barrier.

Each step takes the leftmost gap and picks the cheaper of the nearest spare
overlap on its left or on its right.  The cost of a choice is the number of
sensors that must move to use it.
"""
from fractions import Fraction

from msbc import Instance, enumerate_gaps_overlaps, solve_containing


def show(inst):
    print(f"z = {inst.z}, barrier [0, {inst.beta}], sensors at {[str(v) for v in inst.x]}")
    gaps, overlaps = enumerate_gaps_overlaps(inst)
    print("  gaps:    ", [(g.left_gen, g.right_gen, str(g.length)) for g in gaps])
    print("  overlaps:", [(o.kind, o.left_gen, str(o.length)) for o in overlaps])
    rep, log = solve_containing(inst)
    for step, p in enumerate(log, 1):
        print(f"  step {step}: {p.kind}-shift by {p.distance} using the {p.overlap.kind} "
              f"overlap at sensor {p.overlap.left_gen}, {p.cost} sensor(s) move"
              + (", stopped early by a sensor back at its start" if p.pdr else ""))
    print(f"  final positions {[str(v) for v in rep.y]}, total movement {rep.cost}\n")


if __name__ == "__main__":
    # five sensors, one gap in the middle; 2zn equals the barrier so the
    # answer is the evenly spaced chain
    show(Instance(1, 10, (1, 2, 3, 8, 9)))
    # the only spare coverage hangs off the left end
    show(Instance(1, 4, (Fraction(-1, 2), 3)))
    # several gaps, some closed from the left and some from the right
    show(Instance(Fraction(1, 2), 5, tuple(Fraction(v, 4) for v in (-2, -2, 7, 11, 13, 15))))
