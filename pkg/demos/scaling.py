"""Time the solver as n doubles; ratios near 2 mean n log n growth."""
import statistics
import sys
import time

from msbc import solve
from msbc.cli import generate, pick_case

if __name__ == "__main__":
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 17
    sizes = [2 ** k for k in range(top - 3, top + 1)]
    solve(generate("containing", 8, 0))
    totals = []
    for n in sizes:
        t = 0.0
        for seed in range(6):
            inst = generate(pick_case(seed, n), n, seed)
            t0 = time.perf_counter()
            solve(inst)
            t += time.perf_counter() - t0
        totals.append(t)
        print(f"n = {n:>8}: {t:6.2f} s for six mixed instances")
    ratios = [b / a for a, b in zip(totals, totals[1:])]
    print("doubling ratios:", [round(r, 2) for r in ratios],
          "median", round(statistics.median(ratios), 2))
