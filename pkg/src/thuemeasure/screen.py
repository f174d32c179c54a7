"""Picks the compiled screening kernel when it is importable.

Set THUE_PURE_PYTHON=1 to force the pure-Python fallback.
"""

import math
import os

from . import _screen_py
from ._screen_py import DEGENERATE, REJECT_E, REJECT_KAPPA, SURVIVE, uz_coords  # noqa: F401
from .exactnum import factorint

BACKEND = "python"
_impl = _screen_py.screen_range
if os.environ.get("THUE_PURE_PYTHON") != "1":
    try:
        from . import _screen_c

        _impl = _screen_c.screen_range
        BACKEND = "gmp"
    except ImportError:
        pass

# the compiled kernel takes C longs
_C_LIMIT = 2**62


def log_script_n_max(n: int) -> float:
    """log of prod_{p | n} p^(v_p(n) + 1/(p-1)), an upper bound for N_{m,n} over all m."""
    return sum((e + 1 / (p - 1)) * math.log(p) for p, e in factorint(n).factors.items())


def screen_range(n, t, x_lo, x_hi, log_d, log_n_max, kappa_limit, backend=None):
    """Screening codes for x in [x_lo, x_hi] with U = -(x + sqrt t)^n."""
    use = backend or BACKEND
    fits = max(abs(t), abs(x_lo), abs(x_hi)) < _C_LIMIT
    if use == "gmp" and BACKEND == "gmp" and fits:
        return _impl(n, t, x_lo, x_hi, log_d, log_n_max, kappa_limit)
    return _screen_py.screen_range(n, t, x_lo, x_hi, log_d, log_n_max, kappa_limit)
