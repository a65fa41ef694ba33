"""Sorting through a barrier instance.

Put n sensors at the given values on a barrier exactly 2zn long.  The only
cover is the evenly spaced chain, so reading the sensors by final position
lists the values in order.  This shows why the problem cannot beat sorting.
"""
import random
import time

from msbc.cli import sort_demo

if __name__ == "__main__":
    print(sort_demo(["3", "1/2", "-7", "2.25", "0"]))
    rng = random.Random(1)
    values = [rng.uniform(-1000, 1000) for _ in range(100_000)]
    t0 = time.perf_counter()
    out = sort_demo(values)
    print(f"100000 floats: matches sorted() = {out == sorted(values)}, "
          f"{time.perf_counter() - t0:.1f} s")
