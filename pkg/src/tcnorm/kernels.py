"""Kernel selection: compiled Cython core when importable, else pure Python.

Set ``TCNORM_PURE_PYTHON=1`` to force the fallback.
"""
import os
from array import array

from . import _bellman_py

# int64 headroom: a path of n arcs must not overflow
_LIMIT = 2**62

try:
    if os.environ.get("TCNORM_PURE_PYTHON"):
        raise ImportError("compiled kernel disabled by TCNORM_PURE_PYTHON")
    from . import _bellman as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None
BACKEND = "cython" if HAVE_COMPILED else "python"


def negative_cycle(n, tails, heads, costs, backend=None):
    """Dispatch to a negative-cycle kernel; see ``_bellman_py.negative_cycle``.

    ``backend`` may be ``"cython"``, ``"python"`` or ``None`` (best available).
    Costs too large for int64 arithmetic always use the Python kernel.
    """
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        bound = max((abs(c) for c in costs), default=0) * max(n, 1)
        if bound < _LIMIT:
            return _compiled.negative_cycle(n, array("q", tails), array("q", heads), array("q", costs))
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return _bellman_py.negative_cycle(n, list(tails), list(heads), list(costs))
