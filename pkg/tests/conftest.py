import random
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from msbc import CaseKind, Instance, classify

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_instance(rng: random.Random, n_max=8, spread=None) -> Instance:
    """Random feasible instance with quarter-grid coordinates, any case."""
    n = rng.randint(1, n_max)
    z = F(rng.randint(1, 4), rng.randint(1, 2))
    beta = min(F(rng.randint(1, int(4 * z * n)), 2), 2 * z * n)
    spread = spread if spread is not None else rng.choice([1, 5, 20])
    lo, hi = int((-z - spread) * 4), int((beta + z + spread) * 4)
    x = sorted(F(rng.randint(lo, hi), 4) for _ in range(n))
    return Instance(z, beta, x)


def random_containing(rng: random.Random, n_max=8, distinct=False) -> Instance:
    n = rng.randint(1, n_max)
    z = F(rng.randint(1, 4), rng.randint(1, 2))
    beta = min(F(rng.randint(1, int(4 * z * n)), 2), 2 * z * n)
    lo, hi = int(-z * 4), int((beta + z) * 4)
    while True:
        x = sorted(F(rng.randint(lo, hi), 4) for _ in range(n))
        if not distinct or len(set(x)) == n:
            return Instance(z, beta, x)


def random_one_sided(rng: random.Random, n_max=8, distinct=False) -> Instance:
    """Right-sided instance with at least one sensor meeting the barrier."""
    while True:
        n = rng.randint(2, n_max)
        z = F(rng.randint(1, 3), rng.randint(1, 2))
        beta = min(F(rng.randint(int(4 * z) + 1, int(4 * z * n)), 2), 2 * z * n)
        if beta <= 2 * z:
            continue
        k = rng.randint(1, n - 1)
        inside = [F(rng.randint(int(-z * 4), int((beta + z) * 4)), 4) for _ in range(n - k)]
        outside = [beta + z + F(rng.randint(1, 40), 4) for _ in range(k)]
        x = sorted(inside + outside)
        if distinct and len(set(x)) < n:
            continue
        return Instance(z, beta, x)


def random_general(rng: random.Random, n_lo=4, n_hi=40, spread=80) -> Instance:
    """Sensors missing the barrier on both sides, at least one meeting it."""
    while True:
        n = rng.randint(n_lo, n_hi)
        z = F(rng.randint(1, 3), rng.randint(1, 2))
        beta = F(rng.randint(3, max(3, int(4 * z * n // 2))), 2)
        if 2 * z >= beta or beta > 2 * z * n:
            continue
        lo, hi = int(-z * 4 - spread), int((beta + z) * 4 + spread)
        inst = Instance(z, beta, sorted(F(rng.randint(lo, hi), 4) for _ in range(n)))
        if classify(inst) is CaseKind.General:
            return inst


def random_all_outside(rng: random.Random, n_max=8) -> Instance:
    while True:
        n = rng.randint(2, n_max)
        z = F(rng.randint(1, 3), rng.randint(1, 2))
        beta = F(rng.randint(int(4 * z) + 1, int(4 * z * n)), 2)
        x = sorted(rng.choice([-z - F(rng.randint(1, 60), 4), beta + z + F(rng.randint(1, 60), 4)])
                   for _ in range(n))
        inst = Instance(z, beta, x)
        if classify(inst) is CaseKind.AllOutside:
            return inst


def random_wide(rng: random.Random, n_max=8) -> Instance:
    n = rng.randint(1, n_max)
    z = F(rng.randint(1, 4), rng.randint(1, 2))
    beta = F(rng.randint(1, int(4 * z)), 2)
    x = sorted(F(rng.randint(-40, 40), 4) + rng.choice([0, -20, 20]) for _ in range(n))
    return Instance(z, beta, x)


@st.composite
def instances(draw, max_n=8):
    """Feasible or not, on a grid of quarters."""
    n = draw(st.integers(1, max_n))
    z4 = draw(st.integers(1, 12))
    beta4 = draw(st.integers(1, 2 * z4 * n + 4))
    x4 = sorted(draw(st.lists(st.integers(-z4 - 32, beta4 + z4 + 32), min_size=n, max_size=n)))
    return Instance(F(z4, 4), F(beta4, 4), [F(v, 4) for v in x4])


@pytest.fixture
def report(request, pytestconfig):
    """Print one uncaptured PASS/FAIL line for an acceptance criterion."""
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")
    lines = []
    yield lines.append
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    with capman.global_and_fixture_disabled():
        print(f"\n{status} {'; '.join(lines) or request.node.name}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    if call.when == "call":
        item.rep_call = outcome.get_result()
