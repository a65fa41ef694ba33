"""Augmented complete binary trees used by the containing-case solver.

PositionTree   range shifts and point queries on sensor coordinates.
OverlapTree    ordered set of overlaps with predecessor/successor queries.
LeftShiftTree  displacement tracking for sensors that moved left, with
               range shift, range minimum (plus witness) and range count.

The module-level ``pt_*``, ``ot_*`` and ``ls_*`` functions are the kernels:
they operate on flat buffers so the solvers can run them compiled.  Sensor
indices are 1-based everywhere; leaf ``j`` lives at slot ``size + j - 1``.
Every kernel adds the number of tree nodes it touched to ``ctr[0]``.
"""
from fractions import Fraction

from ._jit import Mode, kernel, twin
from .core import IndexOutOfRange, MissingKey, OverlapRecord


def tree_size(n):
    size = 1
    while size < n:
        size *= 2
    return size


# --------------------------------------------------------------------------
# position tree kernels

@kernel
def pt_add(shift, size, j, k, d, ctr):
    lo = j - 1 + size
    hi = k + size
    while lo < hi:
        if lo & 1:
            shift[lo] += d
            lo += 1
            ctr[0] += 1
        if hi & 1:
            hi -= 1
            shift[hi] += d
            ctr[0] += 1
        lo >>= 1
        hi >>= 1


@kernel
def pt_offset(shift, size, j, ctr):
    v = j - 1 + size
    s = shift[v]
    v >>= 1
    ctr[0] += 1
    while v >= 1:
        s += shift[v]
        v >>= 1
        ctr[0] += 1
    return s


@kernel
def pt_flush(base, shift, size, n, acc, out):
    """Write every current position into ``out[1..n]`` in O(size) time."""
    acc[1] = shift[1]
    for v in range(2, 2 * size):
        acc[v] = acc[v >> 1] + shift[v]
    for j in range(1, n + 1):
        out[j] = base[j] + acc[size + j - 1]


# --------------------------------------------------------------------------
# overlap tree kernels (presence counts over a bounded slot universe)

@kernel
def ot_toggle(cnt, usize, slot, delta, ctr):
    v = usize + slot
    while v >= 1:
        cnt[v] += delta
        v >>= 1
        ctr[0] += 1


@kernel
def ot_pred(cnt, usize, p, ctr):
    """Largest present slot <= p, or -1."""
    if p < 0:
        return -1
    if p >= usize:
        p = usize - 1
    v = usize + p
    ctr[0] += 1
    if cnt[v] > 0:
        return p
    while v > 1:
        ctr[0] += 1
        if (v & 1) == 1 and cnt[v - 1] > 0:
            v = v - 1
            while v < usize:
                ctr[0] += 1
                if cnt[2 * v + 1] > 0:
                    v = 2 * v + 1
                else:
                    v = 2 * v
            return v - usize
        v >>= 1
    return -1


@kernel
def ot_succ(cnt, usize, p, ctr):
    """Smallest present slot >= p, or -1."""
    if p >= usize:
        return -1
    if p < 0:
        p = 0
    v = usize + p
    ctr[0] += 1
    if cnt[v] > 0:
        return p
    while v > 1:
        ctr[0] += 1
        if (v & 1) == 0 and cnt[v + 1] > 0:
            v = v + 1
            while v < usize:
                ctr[0] += 1
                if cnt[2 * v] > 0:
                    v = 2 * v
                else:
                    v = 2 * v + 1
            return v - usize
        v >>= 1
    return -1


# --------------------------------------------------------------------------
# left-shift tree kernels
#
# A node's ``mn`` excludes its own shift: the smallest displacement below v
# equals mn[v] + shift[v] + (shifts of all proper ancestors).  ``num`` counts
# valid leaves; a subtree without valid leaves has mn = inf and idx = 0.

@kernel
def ls_pull(v, shift, mn, idx, num, inf):
    a = 2 * v
    b = a + 1
    na = num[a]
    nb = num[b]
    num[v] = na + nb
    if na == 0 and nb == 0:
        mn[v] = inf
        idx[v] = 0
    elif nb == 0:
        mn[v] = mn[a] + shift[a]
        idx[v] = idx[a]
    elif na == 0:
        mn[v] = mn[b] + shift[b]
        idx[v] = idx[b]
    else:
        va = mn[a] + shift[a]
        vb = mn[b] + shift[b]
        if va <= vb:
            mn[v] = va
            idx[v] = idx[a]
        else:
            mn[v] = vb
            idx[v] = idx[b]


@kernel
def ls_fix(leaf, shift, mn, idx, num, inf, ctr):
    v = leaf >> 1
    while v >= 1:
        ls_pull(v, shift, mn, idx, num, inf)
        v >>= 1
        ctr[0] += 1


@kernel
def ls_set_valid(shift, mn, idx, num, size, j, value, inf, ctr):
    """Mark leaf j valid with current displacement ``value``."""
    leaf = size + j - 1
    acc = 0
    v = leaf
    while v >= 1:
        acc += shift[v]
        v >>= 1
    num[leaf] = 1
    mn[leaf] = value - acc
    idx[leaf] = j
    ctr[0] += 1
    ls_fix(leaf, shift, mn, idx, num, inf, ctr)


@kernel
def ls_set_invalid(shift, mn, idx, num, size, j, inf, ctr):
    leaf = size + j - 1
    num[leaf] = 0
    mn[leaf] = inf
    idx[leaf] = 0
    ctr[0] += 1
    ls_fix(leaf, shift, mn, idx, num, inf, ctr)


@kernel
def ls_add(shift, mn, idx, num, size, j, k, d, inf, ctr):
    """Add ``d`` to the displacement of every leaf in [j, k]."""
    lo = j - 1 + size
    hi = k + size
    while lo < hi:
        if lo & 1:
            shift[lo] += d
            lo += 1
            ctr[0] += 1
        if hi & 1:
            hi -= 1
            shift[hi] += d
            ctr[0] += 1
        lo >>= 1
        hi >>= 1
    ls_fix(j - 1 + size, shift, mn, idx, num, inf, ctr)
    if k != j:
        ls_fix(k - 1 + size, shift, mn, idx, num, inf, ctr)


@kernel
def ls_find_num(num, size, j, k, ctr):
    lo = j - 1 + size
    hi = k + size
    total = 0
    while lo < hi:
        if lo & 1:
            total += num[lo]
            lo += 1
            ctr[0] += 1
        if hi & 1:
            hi -= 1
            total += num[hi]
            ctr[0] += 1
        lo >>= 1
        hi >>= 1
    return total


@kernel
def _ls_take(v, acc, shift, mn, idx, num, best, bidx):
    if num[v] > 0:
        val = acc + shift[v] + mn[v]
        if bidx == 0 or val < best or (val == best and idx[v] < bidx):
            return val, idx[v]
    return best, bidx


@kernel
def ls_find_min(shift, mn, idx, num, size, j, k, inf, ctr):
    """Smallest displacement among valid leaves in [j, k] and its leaf.

    Returns (inf, 0) when the range holds no valid leaf.  Ties go to the
    smallest index.  The search walks down to the split node and then along
    the two boundary paths, so it touches O(log n) nodes.
    """
    a = j - 1
    b = k - 1
    best = inf
    bidx = 0
    v = 1
    lo = 0
    hi = size - 1
    acc = 0
    while True:
        ctr[0] += 1
        if a <= lo and hi <= b:
            best, bidx = _ls_take(v, acc, shift, mn, idx, num, best, bidx)
            return best, bidx
        mid = (lo + hi) >> 1
        acc += shift[v]
        if b <= mid:
            v = 2 * v
            hi = mid
        elif a > mid:
            v = 2 * v + 1
            lo = mid + 1
        else:
            break
    mid = (lo + hi) >> 1
    # left boundary path: range [a, mid] inside the left child
    u = 2 * v
    ulo = lo
    uhi = mid
    uacc = acc
    while True:
        ctr[0] += 1
        if a <= ulo:
            best, bidx = _ls_take(u, uacc, shift, mn, idx, num, best, bidx)
            break
        m2 = (ulo + uhi) >> 1
        uacc += shift[u]
        if a <= m2:
            best, bidx = _ls_take(2 * u + 1, uacc, shift, mn, idx, num, best, bidx)
            u = 2 * u
            uhi = m2
        else:
            u = 2 * u + 1
            ulo = m2 + 1
    # right boundary path: range [mid + 1, b] inside the right child
    u = 2 * v + 1
    ulo = mid + 1
    uhi = hi
    uacc = acc
    while True:
        ctr[0] += 1
        if uhi <= b:
            best, bidx = _ls_take(u, uacc, shift, mn, idx, num, best, bidx)
            break
        m2 = (ulo + uhi) >> 1
        uacc += shift[u]
        if b > m2:
            best, bidx = _ls_take(2 * u, uacc, shift, mn, idx, num, best, bidx)
            u = 2 * u + 1
            ulo = m2 + 1
        else:
            u = 2 * u
            uhi = m2
    return best, bidx


# --------------------------------------------------------------------------
# object wrappers (pure Python twins, exact for ints and Fractions)

_PY = Mode(False)


class _Instrumented:
    def __init__(self):
        self.ctr = [0]
        self.last_touched = 0
        self.max_touched = 0

    def _begin(self):
        self.ctr[0] = 0

    def _end(self):
        self.last_touched = self.ctr[0]
        self.max_touched = max(self.max_touched, self.last_touched)

    def _check(self, j, k=None):
        k = j if k is None else k
        if not (1 <= j <= k <= self.n):
            raise IndexOutOfRange(f"range [{j}, {k}] outside 1..{self.n}")


class PositionTree(_Instrumented):
    """Coordinates of n sensors under lazy range shifts.

    >>> t = PositionTree([1, 2, 3])
    >>> t.range_shift(2, 3, Fraction(1, 2), "right")
    >>> t.materialize()
    [Fraction(1, 1), Fraction(5, 2), Fraction(7, 2)]
    """

    def __init__(self, x):
        super().__init__()
        self.n = len(x)
        self.size = tree_size(max(1, self.n))
        self.base = [None] + [Fraction(v) for v in x]
        self.shift = [0] * (2 * self.size)

    def range_shift(self, j, k, delta, direction):
        self._check(j, k)
        delta = Fraction(delta)
        if delta < 0:
            raise ValueError("delta must be non-negative")
        if direction not in ("left", "right"):
            raise ValueError("direction must be 'left' or 'right'")
        d = delta if direction == "right" else -delta
        self._begin()
        twin(pt_add)(self.shift, self.size, j, k, d, self.ctr)
        self._end()

    def position(self, j):
        self._check(j)
        self._begin()
        off = twin(pt_offset)(self.shift, self.size, j, self.ctr)
        self._end()
        return self.base[j] + off

    def displacement(self, j):
        return self.base[j] - self.position(j)

    def materialize(self):
        acc = [0] * (2 * self.size)
        out = [0] * (self.n + 1)
        twin(pt_flush)(self.base, self.shift, self.size, self.n, acc, out)
        return [Fraction(v) for v in out[1:]]

    def dump(self):
        """Text rendering of the non-zero shift values, one node per line."""
        lines = [f"PositionTree n={self.n} size={self.size}"]
        for v in range(1, 2 * self.size):
            if self.shift[v]:
                lines.append(f"  node {v}: shift {self.shift[v]}")
        return "\n".join(lines)


_SUB = {"outside_left": 0, "pair": 1, "outside_right": 2}
_KIND = {v: k for k, v in _SUB.items()}


def overlap_slot(left_gen, kind):
    return 3 * (left_gen - 1) + _SUB[kind]


class OverlapTree(_Instrumented):
    """Ordered overlaps over sensors 1..n.

    Keys are ``(left_gen, sub)`` where ``sub`` orders the outside-left piece
    of a sensor before the pair overlap it opens, and that before its
    outside-right piece.  The tree is a complete binary tree of presence
    counts over the 3n possible keys, so every query costs O(log n).
    """

    def __init__(self, n):
        super().__init__()
        self.n = n
        self.usize = tree_size(3 * max(1, n))
        self.cnt = [0] * (2 * self.usize)
        self.records = {}

    def __len__(self):
        return len(self.records)

    def _slot(self, key):
        if isinstance(key, OverlapRecord):
            return overlap_slot(key.left_gen, key.kind)
        g, sub = key
        if not 1 <= g <= self.n:
            raise IndexOutOfRange(f"generator {g} outside 1..{self.n}")
        return 3 * (g - 1) + sub

    def insert(self, record):
        slot = self._slot(record)
        if slot in self.records:
            raise KeyError(f"overlap {record.key} already present")
        self.records[slot] = record
        self._begin()
        twin(ot_toggle)(self.cnt, self.usize, slot, 1, self.ctr)
        self._end()

    def delete(self, key):
        slot = self._slot(key)
        if slot not in self.records:
            raise MissingKey(f"no overlap with key {key}")
        del self.records[slot]
        self._begin()
        twin(ot_toggle)(self.cnt, self.usize, slot, -1, self.ctr)
        self._end()

    def get(self, key):
        slot = self._slot(key)
        if slot not in self.records:
            raise MissingKey(f"no overlap with key {key}")
        return self.records[slot]

    def update_length(self, key, length):
        slot = self._slot(key)
        if slot not in self.records:
            raise MissingKey(f"no overlap with key {key}")
        rec = self.records[slot]
        self.records[slot] = OverlapRecord(rec.left_gen, rec.right_gen, Fraction(length), rec.kind)
        return self.records[slot]

    def pred(self, probe):
        """Rightmost overlap strictly before sensor ``probe`` (its key (probe, 0))."""
        self._begin()
        slot = twin(ot_pred)(self.cnt, self.usize, 3 * (probe - 1) - 1, self.ctr)
        self._end()
        return None if slot < 0 else self.records[slot]

    def succ(self, probe):
        """Leftmost overlap whose key is at or after (probe, 0)."""
        self._begin()
        slot = twin(ot_succ)(self.cnt, self.usize, 3 * (probe - 1), self.ctr)
        self._end()
        return None if slot < 0 else self.records[slot]

    def items(self):
        return [self.records[s] for s in sorted(self.records)]


class LeftShiftTree(_Instrumented):
    """Displacements of the sensors currently flagged valid.

    >>> t = LeftShiftTree(3)
    >>> t.set_valid(2)
    >>> t.left_shift(2, 2, Fraction(7, 10))
    >>> t.find_min(1, 3)
    (Fraction(7, 10), 2)
    """

    INF = float("inf")

    def __init__(self, n):
        super().__init__()
        self.n = n
        self.size = tree_size(max(1, n))
        self._inf = _PY.inf
        m = 2 * self.size
        self.shift = [0] * m
        self.mn = [self._inf] * m
        self.idx = [0] * m
        self.num = [0] * m

    def _arrays(self):
        return self.shift, self.mn, self.idx, self.num

    def is_valid(self, j):
        self._check(j)
        return self.num[self.size + j - 1] == 1

    def set_valid(self, j, displacement=0):
        self._check(j)
        if self.is_valid(j):
            raise ValueError(f"leaf {j} already valid")
        self._begin()
        twin(ls_set_valid)(*self._arrays(), self.size, j, displacement, self._inf, self.ctr)
        self._end()

    def set_invalid(self, j):
        self._check(j)
        if not self.is_valid(j):
            raise ValueError(f"leaf {j} already invalid")
        self._begin()
        twin(ls_set_invalid)(*self._arrays(), self.size, j, self._inf, self.ctr)
        self._end()

    def _shift(self, j, k, d):
        self._check(j, k)
        if d < 0:
            raise ValueError("delta must be non-negative")
        self._begin()
        twin(ls_add)(*self._arrays(), self.size, j, k, d, self._inf, self.ctr)
        self._end()

    def left_shift(self, j, k, delta):
        """Moving S(j, k) left increases their displacement."""
        self._shift(j, k, Fraction(delta))

    def right_shift(self, j, k, delta):
        delta = Fraction(delta)
        self._check(j, k)
        if delta < 0:
            raise ValueError("delta must be non-negative")
        self._begin()
        twin(ls_add)(*self._arrays(), self.size, j, k, -delta, self._inf, self.ctr)
        self._end()

    def find_min(self, j, k):
        self._check(j, k)
        self._begin()
        val, w = twin(ls_find_min)(*self._arrays(), self.size, j, k, self._inf, self.ctr)
        self._end()
        if w == 0:
            return self.INF, None
        return Fraction(val), w

    def find_num(self, j, k):
        self._check(j, k)
        self._begin()
        c = twin(ls_find_num)(self.num, self.size, j, k, self.ctr)
        self._end()
        return c

    def displacement(self, j):
        """Current tracked displacement of leaf j (meaningful for valid leaves)."""
        v = self.size + j - 1
        acc = 0
        while v >= 1:
            acc += self.shift[v]
            v >>= 1
        return Fraction(self.mn[self.size + j - 1] + acc) if self.is_valid(j) else None

    def check(self):
        """Recompute every internal node from the leaves and compare."""
        for v in range(self.size - 1, 0, -1):
            a, b = 2 * v, 2 * v + 1
            if self.num[v] != self.num[a] + self.num[b]:
                return False
            cands = []
            for c in (a, b):
                if self.num[c]:
                    cands.append((self.mn[c] + self.shift[c], self.idx[c]))
            if cands:
                best = min(cands)
                if (self.mn[v], self.idx[v]) != best:
                    return False
            elif self.idx[v] != 0:
                return False
        return True
