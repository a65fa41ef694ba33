"""Kernels that run either compiled (numba, int64 arrays) or as plain Python.

Every kernel is written once against an indexable buffer interface.  The
compiled variant is used when all scaled quantities fit comfortably in int64;
otherwise a pure Python twin of the very same code runs on lists of ints (or
Fractions), so exactness never depends on the fast path.
"""
from types import FunctionType

import numpy as np

try:
    import numba
    from numba.core.registry import CPUDispatcher
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    CPUDispatcher = ()

# int64 safety margin: every intermediate value must stay below this bound
INT64_SAFE = 1 << 61
JIT_INF = 1 << 62

_kernels = {}
_twins = {}


def kernel(fn):
    """Register ``fn`` as a dual-mode kernel and return its compiled dispatcher."""
    if numba is None:  # pragma: no cover
        _kernels[id(fn)] = fn
        return fn
    d = numba.njit(cache=True)(fn)
    _kernels[id(d)] = d
    return d


def twin(d):
    """Pure Python copy of kernel ``d`` whose kernel calls also resolve to twins."""
    key = id(d)
    if key in _twins:
        return _twins[key]
    f = getattr(d, "py_func", d)
    g = dict(f.__globals__)
    t = FunctionType(f.__code__, g, f.__name__, f.__defaults__, f.__closure__)
    _twins[key] = t
    for name, value in list(g.items()):
        if id(value) in _kernels and value is not d:
            g[name] = twin(value)
        elif value is d:
            g[name] = t
    return t


class Mode:
    """Selects buffers and kernel variants for one solve."""

    def __init__(self, fast: bool):
        self.fast = bool(fast and numba is not None)
        self.inf = JIT_INF

    def __repr__(self):
        return f"Mode(fast={self.fast})"

    def k(self, d):
        return d if self.fast else twin(d)

    def zeros(self, size):
        if self.fast:
            return np.zeros(size, dtype=np.int64)
        return [0] * size

    def array(self, values):
        if self.fast:
            return np.asarray(values, dtype=np.int64)
        return list(values)

    def to_list(self, buf):
        if self.fast:
            return np.asarray(buf).tolist()
        return list(buf)


def choose_mode(magnitude: int, n: int, force=None, sums=True) -> Mode:
    """Pick the compiled path when no intermediate value can overflow int64.

    ``magnitude`` bounds every coordinate, length and displacement that a
    solve may produce.  Kernels that add up n such values (``sums``) need an
    extra factor of n; the containing kernel does not, since its shift
    distances add up to at most the total gap length.  ``force`` overrides
    the choice (True, False or None).
    """
    if force is not None:
        mode = Mode(force)
    else:
        factor = n + 2 if sums else 1
        mode = Mode(factor * (magnitude + 1) * 8 < INT64_SAFE)
    if not mode.fast:
        mode.inf = 1 << (max(64, (magnitude + 1).bit_length() + (n + 2).bit_length() + 8))
    return mode
