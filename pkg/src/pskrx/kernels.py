"""Kernel backend selection: compiled extension when available, NumPy otherwise.

Both backends implement the same decide_* contract and produce identical
outcomes from identical uniforms; the compiled one is just faster per
trajectory.  ``BACKEND`` names the active implementation.  Setting
``PSKRX_FORCE_NUMPY=1`` skips the extension (useful for exercising the
fallback on a machine where the extension builds).
"""

from __future__ import annotations

import os

from . import _mc_numpy

_impl = None
if os.environ.get("PSKRX_FORCE_NUMPY", "") not in ("", "0"):
    _impl = _mc_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _mc_kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built; fall back to vectorized NumPy
        _impl = _mc_numpy
        BACKEND = "numpy"

numpy_backend = _mc_numpy
active_backend = _impl

decide_static3 = _impl.decide_static3
decide_static4 = _impl.decide_static4
decide_ff_fixed = _impl.decide_ff_fixed
decide_ff_map = _impl.decide_ff_map
decide_ff_optdisp = _impl.decide_ff_optdisp
