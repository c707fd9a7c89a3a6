"""Backend selection for the hot kernels.

The environment variable AREAFLOW_NUMBA picks the implementation:
unset or "auto" prefers the numba build when numba imports, "0"/"off"/
"false"/"numpy" forces the pure-numpy fallback, "1"/"on"/"true"/"numba"
requires numba and raises ImportError when it is unavailable.  Both
implementations share semantics; see benchmarks/bench_kernels.py for the
speed comparison.
"""

import os

import numpy as np

from . import numpy_impl

_flag = os.environ.get("AREAFLOW_NUMBA", "auto").strip().lower()
if _flag in ("0", "off", "false", "no", "numpy"):
    _impl = numpy_impl
elif _flag in ("1", "on", "true", "yes", "numba"):
    from . import numba_impl as _impl
elif _flag in ("", "auto"):
    try:
        from . import numba_impl as _impl
    except ImportError:
        _impl = numpy_impl
else:
    raise ValueError(f"AREAFLOW_NUMBA={_flag!r} not understood (use auto, 0 or 1)")

BACKEND = "numpy" if _impl is numpy_impl else "numba"

arakawa_jacobian = _impl.arakawa_jacobian
central_jacobian = _impl.central_jacobian
hermite_eval = _impl.hermite_eval
hermite_invert = _impl.hermite_invert


def areas_at_levels(values, h, levels):
    """Exact areas of {field >= c} for each requested level, in input order.

    The compiled kernel scans levels through sorted windows, so the levels
    are sorted here and the results permuted back; callers may pass any
    order.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    lv = np.atleast_1d(np.ascontiguousarray(levels, dtype=np.float64))
    order = np.argsort(lv, kind="stable")
    out = _impl.areas_at_levels(values, float(h), lv[order])
    result = np.empty_like(out)
    result[order] = out
    return result

__all__ = [
    "BACKEND",
    "arakawa_jacobian",
    "areas_at_levels",
    "central_jacobian",
    "hermite_eval",
    "hermite_invert",
    "numpy_impl",
]
