"""Per-pixel kernels with a compiled backend and a numpy fallback.

The compiled extension (``_core``) is used when it imports; setting
``DMDSAL_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _fallback

PLANE_ORDER = _fallback.PLANE_ORDER

_compiled = None
if not os.environ.get("DMDSAL_PURE_PYTHON"):
    try:
        from . import _core as _compiled
    except ImportError:  # extension not built
        _compiled = None

_impl = _compiled if _compiled is not None else _fallback
BACKEND = "compiled" if _compiled is not None else "python"

rgb_planes = _impl.rgb_planes
mean_abs_sparse = _impl.mean_abs_sparse
threshold_counts = _impl.threshold_counts
resize_bilinear = _impl.resize_bilinear


def available_backends():
    """Map backend name -> kernel module, for comparison and benchmarking."""
    out = {"python": _fallback}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
