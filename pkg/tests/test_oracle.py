import itertools
import random
from fractions import Fraction as F

import pytest

from msbc import Instance, NotContaining, covers, mirror, total_cost
from msbc.oracle import oracle_optimal, reference_quadratic_containing

from conftest import random_instance


def grid_search(inst):
    """Every sensor stays put or moves to an integer point of [-z, beta + z].

    With integer data the constraints are differences of two variables, so
    an integral optimum exists; this needs no assumption about which
    sensors move or in what order.
    """
    z, b = int(inst.z), int(inst.beta)
    spots = range(-z, b + z + 1)
    best = None
    options = [[v] + [F(p) for p in spots if p != v] for v in inst.x]
    for ys in itertools.product(*options):
        if covers(sorted(ys), inst.z, inst.beta):
            c = total_cost(inst, ys)
            if best is None or c < best:
                best = c
    return best


@pytest.mark.parametrize("inst, cost", [
    (Instance(1, 10, (1, 2, 3, 8, 9)), 4),
    (Instance(1, 4, (1, 6, 8)), 3),
    (Instance(1, 4, (-4, 2, 7)), 5),
    (Instance(1, 4, (F(-1, 2), 3)), F(3, 2)),
])
def test_known_values(inst, cost):
    c, y = oracle_optimal(inst)
    assert c == cost
    assert covers(y, inst.z, inst.beta) and total_cost(inst, y) == c


def test_oracle_matches_grid_search():
    rng = random.Random(1)
    done = 0
    while done < 250:
        n = rng.randint(1, 3)
        z = rng.randint(1, 2)
        beta = rng.randint(1, 2 * z * n)
        x = sorted(rng.randint(-z - 6, beta + z + 6) for _ in range(n))
        inst = Instance(z, beta, x)
        assert oracle_optimal(inst)[0] == grid_search(inst)
        done += 1


def test_no_random_cover_beats_the_oracle():
    rng = random.Random(2)
    for _ in range(200):
        inst = random_instance(rng, n_max=6)
        best = oracle_optimal(inst)[0]
        for _ in range(30):
            y = list(inst.x)
            for t in rng.sample(range(inst.n), rng.randint(1, inst.n)):
                y[t] = F(rng.randint(int(-inst.z * 4), int((inst.beta + inst.z) * 4)), 4)
            if covers(sorted(y), inst.z, inst.beta):
                assert total_cost(inst, y) >= best


def test_oracle_mirror_invariance():
    rng = random.Random(3)
    for _ in range(200):
        inst = random_instance(rng)
        assert oracle_optimal(inst)[0] == oracle_optimal(mirror(inst))[0]


def test_oracle_size_limit():
    with pytest.raises(ValueError):
        oracle_optimal(Instance(1, 2, tuple(range(12))))


def test_reference_rejects_non_containing():
    with pytest.raises(NotContaining):
        reference_quadratic_containing(Instance(1, 4, (1, 6, 8)))
