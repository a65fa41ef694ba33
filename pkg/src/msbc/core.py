"""Problem model: instances, exact arithmetic, gaps, overlaps, verification."""
import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from ._jit import kernel, twin


# --------------------------------------------------------------------------
# errors

class InstanceError(ValueError):
    """Base class for rejected instances."""


class UnsortedInput(InstanceError):
    pass


class NonPositiveRadius(InstanceError):
    pass


class NonPositiveBarrier(InstanceError):
    pass


class Infeasible(InstanceError):
    pass


class NotContaining(InstanceError):
    pass


class DegenerateInput(InstanceError):
    pass


class MissingKey(KeyError):
    pass


class IndexOutOfRange(IndexError):
    pass


class BothSidesEmpty(RuntimeError):
    """A gap had no overlap on either side; impossible for feasible input."""


# --------------------------------------------------------------------------
# model

def parse_rational(value) -> Fraction:
    """Exact rational from an int, Fraction, float or a decimal / "p/q" string."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class CaseKind(enum.Enum):
    Containing = "Containing"
    OneSidedRight = "OneSidedRight"
    OneSidedLeft = "OneSidedLeft"
    General = "General"
    AllOutside = "AllOutside"
    TrivialWideSensor = "TrivialWideSensor"
    InfeasibleCase = "InfeasibleCase"


@dataclass(frozen=True)
class Instance:
    """n sensors of radius z at sorted coordinates x, barrier [0, beta]."""

    z: Fraction
    beta: Fraction
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "z", parse_rational(self.z))
        object.__setattr__(self, "beta", parse_rational(self.beta))
        object.__setattr__(self, "x", tuple(parse_rational(v) for v in self.x))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def lam(self) -> int:
        """Fewest sensors whose intervals can cover the barrier."""
        q = self.beta / (2 * self.z)
        return -((-q.numerator) // q.denominator)

    def with_x(self, x) -> "Instance":
        return Instance(self.z, self.beta, tuple(x))

    def to_dict(self) -> dict:
        return {"z": str(self.z), "beta": str(self.beta), "x": [str(v) for v in self.x]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d) -> "Instance":
        return cls(d["z"], d["beta"], tuple(d["x"]))

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class GapRecord:
    """Uncovered piece of the barrier; a missing generator means a barrier end."""

    left_gen: Optional[int]
    right_gen: Optional[int]
    length: Fraction


@dataclass(frozen=True)
class OverlapRecord:
    """Spare coverage: a pair intersection on the barrier or an off-barrier piece.

    ``kind`` is "outside_left", "pair" or "outside_right".  Pair overlaps
    have right_gen = left_gen + 1, the other kinds a single generator.
    """

    left_gen: int
    right_gen: int
    length: Fraction
    kind: str = "pair"

    @property
    def key(self):
        return (self.left_gen, ("outside_left", "pair", "outside_right").index(self.kind))


@dataclass
class Configuration:
    """Current sensor positions for an instance."""

    instance: Instance
    y: list

    @classmethod
    def initial(cls, instance):
        return cls(instance, list(instance.x))

    def displacement(self, j):
        return self.instance.x[j - 1] - self.y[j - 1]


@dataclass
class SolutionReport:
    y: tuple
    cost: Fraction
    case: CaseKind
    movements: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        def plain(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, enum.Enum):
                return v.value
            if isinstance(v, dict):
                return {k: plain(u) for k, u in v.items()}
            if isinstance(v, (list, tuple)):
                return [plain(u) for u in v]
            return v

        return {
            "cost": str(self.cost),
            "y": [str(v) for v in self.y],
            "case": self.case.value,
            "movements": [str(v) for v in self.movements],
            "diagnostics": plain(self.diagnostics),
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def make_report(instance, y, case, diagnostics=None) -> SolutionReport:
    y = tuple(Fraction(v) for v in y)
    moves = tuple(b - a for a, b in zip(instance.x, y))
    return SolutionReport(y, sum((abs(m) for m in moves), Fraction(0)), case, moves,
                          dict(diagnostics or {}))


def report_from_scaled(sc, y, case, diagnostics=None) -> SolutionReport:
    """Like make_report, but from scaled integer positions y[1..n]."""
    back = sc.back
    x = sc.x
    moves = [y[t] - x[t] for t in range(1, sc.n + 1)]
    return SolutionReport(tuple(back(v) for v in y[1:]), back(sum(abs(m) for m in moves)),
                          case, tuple(back(m) for m in moves), dict(diagnostics or {}))


# --------------------------------------------------------------------------
# checks

def validate(instance: Instance) -> None:
    if instance.n < 1:
        raise InstanceError("at least one sensor is required")
    if instance.z <= 0:
        raise NonPositiveRadius(f"radius must be positive, got {instance.z}")
    if instance.beta <= 0:
        raise NonPositiveBarrier(f"barrier length must be positive, got {instance.beta}")
    sc = scale(instance)
    x = sc.x
    for i in range(2, sc.n + 1):
        if x[i] < x[i - 1]:
            raise UnsortedInput(f"x[{i}] = {instance.x[i - 1]} < x[{i - 1}] = {instance.x[i - 2]}")
    if 2 * sc.z * sc.n < sc.beta:
        raise Infeasible(f"2zn = {2 * instance.z * instance.n} < beta = {instance.beta}")


def intersects(xi, z, beta) -> bool:
    return xi + z >= 0 and xi - z <= beta


def classify(instance: Instance) -> CaseKind:
    sc = scale(instance)
    z, beta = sc.z, sc.beta
    if 2 * z * sc.n < beta:
        return CaseKind.InfeasibleCase
    if 2 * z >= beta:
        return CaseKind.TrivialWideSensor
    left = sum(1 for v in sc.x[1:] if v + z < 0)
    right = sum(1 for v in sc.x[1:] if v - z > beta)
    if left == 0 and right == 0:
        return CaseKind.Containing
    if left + right == instance.n and left and right:
        return CaseKind.AllOutside
    if left == 0:
        return CaseKind.OneSidedRight
    if right == 0:
        return CaseKind.OneSidedLeft
    return CaseKind.General


def mirror(instance: Instance) -> Instance:
    """Reflect about the barrier midpoint; sensor order is reversed."""
    b = instance.beta
    return Instance(instance.z, b, tuple(b - v for v in reversed(instance.x)))


def total_cost(instance: Instance, y: Sequence) -> Fraction:
    if len(y) != instance.n:
        raise ValueError("position count differs from sensor count")
    return sum((abs(Fraction(a) - b) for a, b in zip(y, instance.x)), Fraction(0))


def covers(y: Sequence, z, beta) -> bool:
    """Closed-set test: do the intervals [y-z, y+z] cover [0, beta]?"""
    reach = Fraction(0)
    for v in sorted(Fraction(u) for u in y):
        if v - z > reach:
            return False
        reach = max(reach, v + z)
        if reach >= beta:
            return True
    return reach >= beta


def verify_coverage(config) -> bool:
    return covers(config.y, config.instance.z, config.instance.beta)


# --------------------------------------------------------------------------
# gaps and overlaps
#
# Overlap slots: 3*(g-1) + 0 outside-left piece of sensor g, + 1 the pair
# (g, g+1), + 2 outside-right piece of sensor g.  A pair intersection that
# straddles 0 or beta is one overlap of its full length, and the straddling
# sensor's outside piece is absorbed into it.

@kernel
def scan_gaps_overlaps(y, n, z, beta, gi, glen, gflag, olen):
    """Fill gap and overlap buffers from positions y[1..n] (non-decreasing).

    Gap number t lies between sensor gi[t] and gi[t] + 1 (0 and n + 1 stand
    for nothing); gflag[t] has bit 1 when the left end is a sensor endpoint
    and bit 2 when the right end is.  olen[slot] receives overlap lengths.
    Returns the gap count.
    """
    ng = 0
    for i in range(0, n + 1):
        lo = 0 * z
        hi = beta
        flag = 0
        if i >= 1:
            a = y[i] + z
            if a >= lo:
                lo = a
                flag |= 1
        if i < n:
            b = y[i + 1] - z
            if b <= hi:
                hi = b
                flag |= 2
        if lo < hi:
            gi[ng] = i
            glen[ng] = hi - lo
            gflag[ng] = flag
            ng += 1
    for i in range(1, n + 1):
        lft = y[i] - z
        rgt = y[i] + z
        base = 3 * (i - 1)
        if lft < 0:
            absorbed = False
            if i > 1 and y[i - 1] + z > 0:
                absorbed = True
            if not absorbed:
                top = rgt if rgt < 0 else 0 * z
                olen[base] = top - lft
        if i < n:
            c = y[i + 1] - z
            if c < rgt and rgt > 0 and c < beta:
                olen[base + 1] = rgt - c
        if rgt > beta:
            absorbed = False
            if i < n and y[i + 1] - z < beta:
                absorbed = True
            if not absorbed:
                bot = lft if lft > beta else beta
                olen[base + 2] = rgt - bot
    return ng


def gaps_overlaps(y: Sequence, z, beta):
    """Gaps and overlaps, both left to right, for sorted positions y."""
    n = len(y)
    z = Fraction(z)
    beta = Fraction(beta)
    yy = [None] + [Fraction(v) for v in y]
    gi = [0] * (n + 1)
    glen = [0] * (n + 1)
    gflag = [0] * (n + 1)
    olen = [0] * (3 * n)
    ng = twin(scan_gaps_overlaps)(yy, n, z, beta, gi, glen, gflag, olen)
    gaps = []
    for t in range(ng):
        i = gi[t]
        gaps.append(GapRecord(i if gflag[t] & 1 else None,
                              i + 1 if gflag[t] & 2 else None,
                              Fraction(glen[t])))
    overlaps = []
    kinds = ("outside_left", "pair", "outside_right")
    for slot in range(3 * n):
        if olen[slot] > 0:
            g, sub = divmod(slot, 3)
            overlaps.append(OverlapRecord(g + 1, g + 2 if sub == 1 else g + 1,
                                          Fraction(olen[slot]), kinds[sub]))
    return gaps, overlaps


def enumerate_gaps_overlaps(config):
    """Gaps and overlaps of a Configuration (or an Instance at its start)."""
    if isinstance(config, Instance):
        config = Configuration.initial(config)
    inst = config.instance
    ys = list(config.y)
    if any(ys[i] < ys[i - 1] for i in range(1, len(ys))):
        raise UnsortedInput("positions must be non-decreasing")
    return gaps_overlaps(ys, inst.z, inst.beta)


# --------------------------------------------------------------------------
# integer scaling

@dataclass
class Scaled:
    """Instance multiplied by the common denominator of all its numbers."""

    den: int
    z: int
    beta: int
    x: list  # 1-based: x[0] is a placeholder

    @property
    def n(self):
        return len(self.x) - 1

    def all_intersect(self) -> bool:
        z, b = self.z, self.beta
        return all(v + z >= 0 and v - z <= b for v in self.x[1:])

    @property
    def magnitude(self):
        return max(abs(v) for v in self.x[1:]) + self.beta + 4 * self.z

    def back(self, v) -> Fraction:
        if self.den == 1:
            return Fraction(v)
        return Fraction(v, self.den)


def scale(instance: Instance) -> Scaled:
    """Scaled copy of ``instance``, computed once per instance and cached.

    Callers must treat the result as read-only.
    """
    cached = instance.__dict__.get("_scaled")
    if cached is not None:
        return cached
    sc = _scale(instance)
    instance.__dict__["_scaled"] = sc
    return sc


def _scale(instance: Instance) -> Scaled:
    den = lcm(instance.z.denominator, instance.beta.denominator,
              *(v.denominator for v in instance.x))
    def up(v):
        return v.numerator * (den // v.denominator)

    return Scaled(den, up(instance.z), up(instance.beta), [0] + [up(v) for v in instance.x])
