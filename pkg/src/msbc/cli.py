"""Command line front end.

    msbc solve --input inst.json [--verify] [--dump-d-series [PATH]]
    msbc verify --input inst.json [--solution sol.json]
    msbc oracle --input inst.json
    msbc gen --n 1000 --seed 7 --case general [--output inst.json]
    msbc bench --n 65536,131072 --seed 1 --case mixed [--repeat 5]
    msbc sort-demo 3 1 2          (or --input numbers.txt)

Exit codes: 0 success, 1 unreadable or invalid input, 2 infeasible
instance, 3 a verification check failed.
"""
import argparse
import json
import os
import sys
import time
from fractions import Fraction
from math import lcm
from typing import List, Sequence

import numpy as np

from .containing import solve_containing
from .core import (CaseKind, DegenerateInput, Infeasible, Instance, InstanceError, covers,
                   parse_rational, total_cost, validate)
from .general import solve
from .one_sided import one_sided_series
from .oracle import oracle_optimal

CASES = ("containing", "one_sided", "general", "all_outside")
BENCH_HEADER = "n,wall_ns,shift_processes,reverse_ops"


class ParseError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); exit 2 is kept for infeasible
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


# --------------------------------------------------------------------------
# instance generation

def _min_n(case):
    return {"containing": 2, "one_sided": 2, "general": 3, "all_outside": 2}[case]


def pick_case(seed: int, n: int) -> str:
    """Case used by ``mixed``; depends on the seed only (and n when n is tiny)."""
    allowed = [c for c in CASES if n >= _min_n(c)]
    if not allowed:
        raise ValueError("mixed instances need n >= 2")
    return allowed[int(np.random.default_rng([seed, 99]).integers(len(allowed)))]


def generate(case: str, n: int, seed: int) -> Instance:
    """Seeded random instance of the requested case, built by construction.

    Coordinates are integers.  z is drawn from 1..4 and beta from
    (2z, 2zn], so the barrier is never covered by one sensor.  Outside
    sensors lie up to beta beyond the barrier ends.  The same
    (case, n, seed) always gives the same instance.
    """
    if case == "mixed":
        case = pick_case(seed, n)
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    if n < _min_n(case):
        raise ValueError(f"case {case} needs n >= {_min_n(case)}")
    # shape parameters depend on (seed, case) only, so a size series keeps
    # its proportions; coordinates also depend on n
    shape = np.random.default_rng([seed, CASES.index(case)])
    z = int(shape.integers(1, 5))
    beta = max(2 * z + 1, int(2 * z * n * shape.uniform(0.25, 0.9)))
    p1, p2 = shape.uniform(0.05, 0.95, size=2)
    flip = bool(shape.integers(2))
    rng = np.random.default_rng([seed, n, CASES.index(case)])

    def count(p, lo, hi):
        return min(max(int(round(p * n)), lo), hi)

    def inside(k):
        return rng.integers(-z + 1, beta + z, size=k)

    def left(k):
        return -z - rng.integers(1, beta + 1, size=k)

    def right(k):
        return beta + z + rng.integers(1, beta + 1, size=k)

    if case == "containing":
        parts = [inside(n)]
    elif case == "one_sided":
        k = count(p1, 1, n - 1)
        parts = [left(k), inside(n - k)] if flip else [inside(n - k), right(k)]
    elif case == "general":
        c = count(p1, 1, n - 2)
        a = count(p2 * (n - c) / n, 1, n - c - 1)
        parts = [left(a), inside(c), right(n - c - a)]
    else:
        a = count(p1, 1, n - 1)
        parts = [left(a), right(n - a)]
    x = np.sort(np.concatenate(parts))
    return Instance(z, beta, tuple(int(v) for v in x))


# --------------------------------------------------------------------------
# sorting through a forced barrier instance

def sort_demo(values: Sequence) -> list:
    """Order ``values`` by the final sensor order of a barrier instance.

    The values become sensor coordinates on the barrier [min, max] and the
    radius is chosen so that 2zn equals the barrier length: the only cover
    is then the attached chain, and reading sensors left to right by final
    position gives the values in sorted order.  The radius is rounded up on
    the values' common grid, which keeps every number an integer and leaves
    the chain forced.  The solver itself needs its coordinates in order, so
    this is a demonstration of the reduction, not a sorting algorithm.
    """
    vals = [parse_rational(v) for v in values]
    n = len(vals)
    if n == 0:
        return []
    lo, hi = min(vals), max(vals)
    if lo == hi:
        raise DegenerateInput("all values are equal")
    den = lcm(*(v.denominator for v in vals))
    coords = [int((v - lo) * den) for v in vals]
    span = max(coords)
    z = -((-span) // (2 * n))
    labels = sorted(range(n), key=lambda i: coords[i])
    inst = Instance(z, 2 * n * z, tuple(coords[i] for i in labels))
    report, _ = solve_containing(inst)
    order = sorted(range(n), key=lambda t: report.y[t])
    return [values[labels[t]] for t in order]


# --------------------------------------------------------------------------
# I/O helpers

def read_instance(path) -> Instance:
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path).read()
        data = json.loads(text)
        inst = Instance.from_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError,
            ZeroDivisionError) as e:
        raise ParseError(f"cannot read instance: {e}") from e
    validate(inst)
    return inst


def read_solution(path) -> List[Fraction]:
    try:
        data = json.loads(open(path).read())
        ys = data["y"] if isinstance(data, dict) else data
        return [parse_rational(v) for v in ys]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError,
            ZeroDivisionError) as e:
        raise ParseError(f"cannot read solution: {e}") from e


def write_out(text: str, path=None):
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def check_solution(inst: Instance, y, claimed=None) -> dict:
    ys = [Fraction(v) for v in y]
    out = {
        "positions": len(ys) == inst.n,
        "covers": len(ys) == inst.n and covers(ys, inst.z, inst.beta),
        "ordered": all(ys[i - 1] <= ys[i] for i in range(1, len(ys))),
    }
    cost = total_cost(inst, ys) if out["positions"] else None
    out["cost"] = str(cost)
    if claimed is not None:
        out["cost_matches"] = cost == Fraction(claimed)
    out["ok"] = all(v for k, v in out.items() if k != "cost")
    return out


# --------------------------------------------------------------------------
# subcommands

def cmd_solve(args) -> int:
    inst = read_instance(args.input)
    report = solve(inst)
    if args.verify:
        check = check_solution(inst, report.y, report.cost)
        if not check["ok"]:
            print(f"verification failed: {check}", file=sys.stderr)
            return 3
    out = report.to_dict()
    if args.dump_d_series is not None:
        if report.case in (CaseKind.OneSidedLeft, CaseKind.OneSidedRight):
            text = one_sided_series(inst).csv()
            if args.dump_d_series == "":
                out["d_series"] = text
            else:
                with open(args.dump_d_series, "w") as fh:
                    fh.write(text)
        else:
            print(f"no D(j) series for case {report.case.value}", file=sys.stderr)
    write_out(json.dumps(out, indent=1), args.output)
    return 0


def cmd_verify(args) -> int:
    inst = read_instance(args.input)
    if args.solution:
        y = read_solution(args.solution)
        data = json.loads(open(args.solution).read())
        claimed = data.get("cost") if isinstance(data, dict) else None
    else:
        report = solve(inst)
        y, claimed = report.y, report.cost
    check = check_solution(inst, y, claimed)
    if check["ok"] and inst.n <= 8:
        best, _ = oracle_optimal(inst)
        check["optimal"] = total_cost(inst, y) == best
        check["ok"] = check["optimal"]
    write_out(json.dumps(check, indent=1), args.output)
    return 0 if check["ok"] else 3


def cmd_oracle(args) -> int:
    inst = read_instance(args.input)
    if inst.n > 10:
        raise ParseError("the oracle handles at most 10 sensors")
    cost, y = oracle_optimal(inst)
    write_out(json.dumps({"cost": str(cost), "y": [str(v) for v in y]}, indent=1), args.output)
    return 0


def cmd_gen(args) -> int:
    if args.n is None:
        raise ParseError("gen needs --n")
    try:
        inst = generate(args.case, int(args.n), args.seed)
    except ValueError as e:
        raise ParseError(str(e)) from e
    write_out(inst.to_json(), args.output)
    return 0


def bench_rows(sizes, seed, case, repeat):
    """Yield (n, wall_ns, shift_processes, reverse_ops) for each size and run."""
    for r in range(repeat):
        for n in sizes:
            inst = generate(case, n, seed + r)
            t0 = time.perf_counter_ns()
            report = solve(inst)
            wall = time.perf_counter_ns() - t0
            d = report.diagnostics
            yield n, wall, d.get("shift_processes", 0), d.get("reverse_operations", 0)


def cmd_bench(args) -> int:
    sizes = [int(v) for v in str(args.n or "1024,2048,4096").split(",")]
    solve(generate("containing", 4, 0))       # compile outside the timings
    lines = [",".join(str(v) for v in row)
             for row in bench_rows(sizes, args.seed, args.case, args.repeat)]
    if args.output in (None, "-"):
        print(BENCH_HEADER)
        print("\n".join(lines))
    else:
        fresh = not os.path.exists(args.output) or os.path.getsize(args.output) == 0
        with open(args.output, "a") as fh:
            if fresh:
                fh.write(BENCH_HEADER + "\n")
            fh.write("\n".join(lines) + "\n")
    return 0


def cmd_sort_demo(args) -> int:
    tokens = list(args.numbers)
    if args.input:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        tokens += text.replace(",", " ").split()
    try:
        for t in tokens:
            parse_rational(t)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a number: {e}") from e
    try:
        result = sort_demo(tokens)
    except DegenerateInput:
        result = tokens
    write_out("\n".join(result), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="msbc", description="Min-sum barrier coverage solver")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, inp=True):
        if inp:
            q.add_argument("--input", default="-", help="instance JSON (default stdin)")
        q.add_argument("--output", default=None, help="write here instead of stdout")

    q = sub.add_parser("solve", help="solve an instance")
    common(q)
    q.add_argument("--verify", action="store_true", help="recheck coverage and cost")
    q.add_argument("--dump-d-series", nargs="?", const="", default=None, metavar="PATH",
                   help="one-sided D(j) series as CSV (embedded unless PATH is given)")
    q.set_defaults(func=cmd_solve)

    q = sub.add_parser("verify", help="check a solution (or a fresh solve)")
    common(q)
    q.add_argument("--solution", help="solution JSON with a 'y' list")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("oracle", help="exact brute-force optimum, n <= 10")
    common(q)
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("gen", help="seeded random instance")
    common(q, inp=False)
    q.add_argument("--n", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--case", default="mixed", choices=CASES + ("mixed",))
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("bench", help="timings and counters as CSV")
    common(q, inp=False)
    q.add_argument("--n", help="comma-separated sizes")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--case", default="mixed", choices=CASES + ("mixed",))
    q.add_argument("--repeat", type=int, default=1)
    q.set_defaults(func=cmd_bench)

    q = sub.add_parser("sort-demo", help="sort numbers through a forced barrier instance")
    common(q, inp=False)
    q.add_argument("--input", default=None, help="file of numbers ('-' for stdin)")
    q.add_argument("numbers", nargs="*")
    q.set_defaults(func=cmd_sort_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return 2
    except (ParseError, InstanceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
