import random
from fractions import Fraction as F

import pytest

from msbc import (BothSidesEmpty, Instance, NotContaining, enumerate_gaps_overlaps, mirror,
                  reference_quadratic_containing, solve_containing)
from msbc.containing import missing_side_cost
from msbc.oracle import oracle_optimal

from conftest import random_containing

E1 = Instance(1, 10, (1, 2, 3, 8, 9))
E2 = Instance(1, 4, (F(-1, 2), 3))


def test_e1_forced():
    rep, log = solve_containing(E1)
    assert rep.y == (1, 3, 5, 7, 9)
    assert rep.cost == 4


def test_e2_uses_left_overlap():
    rep, log = solve_containing(E2)
    assert rep.y == (1, 3)
    assert rep.cost == F(3, 2)
    # no overlap right of the gap, so the left (outside) piece is used
    assert [p.kind for p in log] == ["right"]
    assert log.processes[0].overlap.kind == "outside_left"


def test_mirrored_e2_uses_right_overlap():
    rep, log = solve_containing(mirror(E2))
    assert rep.y == (1, 3)
    assert [p.kind for p in log] == ["left"]
    assert log.processes[0].overlap.kind == "outside_right"


def test_gap_free_input():
    rep, log = solve_containing(Instance(1, 2, (0, 2)))
    assert rep.y == (0, 2) and rep.cost == 0
    assert len(log) == 0


def test_not_containing():
    with pytest.raises(NotContaining):
        solve_containing(Instance(1, 4, (1, 6, 8)))


def test_missing_side_is_infinite():
    assert missing_side_cost() == float("inf")
    assert missing_side_cost() > 10 ** 30


def test_tie_goes_left():
    # the gap between sensors 1 and 2 can use sensor 1's outside piece (one
    # sensor moves) or the pair (2, 3) (one sensor moves): equal costs
    # must pick the left overlap
    inst = Instance(1, 8, (0, 5, 6, 7))
    rep, log = solve_containing(inst)
    first = log.processes[0]
    assert first.cost == 1 and first.kind == "right"
    assert rep.cost == oracle_optimal(inst)[0]


def test_agrees_with_reference_and_oracle():
    rng = random.Random(5)
    for it in range(400):
        inst = random_containing(rng)
        rep, log = solve_containing(inst, fast=it % 2 == 0)
        ref = reference_quadratic_containing(inst)
        assert rep.y == ref.y
        assert rep.cost == oracle_optimal(inst)[0]
        gaps, _ = enumerate_gaps_overlaps(inst.with_x(rep.y))
        assert gaps == []
        d = rep.diagnostics
        assert d["shift_processes"] <= 4 * inst.n
        assert d["set_valid"] <= inst.n
        assert d["pdr_processes"] <= inst.n


def test_fast_and_python_paths_agree():
    rng = random.Random(8)
    for _ in range(100):
        inst = random_containing(rng, n_max=40)
        a, _ = solve_containing(inst, fast=True)
        b, _ = solve_containing(inst, fast=False)
        assert a.y == b.y and a.diagnostics == b.diagnostics


def test_process_log_views():
    rng = random.Random(2)
    seen_trailing = 0
    for _ in range(300):
        inst = random_containing(rng, n_max=12)
        rep, log = solve_containing(inst)
        assert log.costs_monotone(per_gap=True)
        tail = log.trailing_right
        seen_trailing += len(tail)
        assert all(p.kind == "right" for p in tail)
        assert all(p.distance > 0 for p in log)
        assert all(p.kind == "right" for p in log if p.pdr)
        if log.last_left >= 0:
            assert log.processes[log.last_left].kind == "left"
        # G lies right to left along the barrier
        right_ends = [g.right_gen for g in log.G if g.right_gen is not None]
        assert right_ends == sorted(right_ends, reverse=True)
        assert len(log.O) == len(log.G)
    assert seen_trailing > 0


def test_large_random_against_reference():
    rng = random.Random(17)
    for _ in range(20):
        inst = random_containing(rng, n_max=300)
        rep, _ = solve_containing(inst)
        assert rep.y == reference_quadratic_containing(inst).y


def test_global_cost_chain_needs_no_overlap_right_of_the_gaps():
    # two separate gaps, each closed from the left: the first one (between
    # sensors 2 and 3) still has pair overlaps on its right, so the chain over
    # the whole trailing list breaks while each gap on its own is monotone
    inst = Instance(F(1, 2), 5, (F(-1, 2), F(-1, 2), F(7, 4), F(11, 4), F(13, 4), F(15, 4)))
    rep, log = solve_containing(inst)
    assert [p.cost for p in log] == [1, 2, 1, 2]
    assert not log.costs_monotone()
    assert log.costs_monotone(per_gap=True)
    assert rep.cost == oracle_optimal(inst)[0]


def test_both_sides_empty_is_an_internal_error():
    assert issubclass(BothSidesEmpty, RuntimeError)
