"""Index-shuffling kernels behind regrouping, partial trace and partial transpose.

The compiled ``_core`` extension is used when it was built; otherwise the
numpy versions in ``_fallback`` are used. Set ``MULTIENT_PURE_PYTHON=1`` to
force the fallback.
"""
import os

from . import _fallback

if os.environ.get("MULTIENT_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "python"

relabel_map = _impl.relabel_map
permute_vector = _impl.permute_vector
permute_square = _impl.permute_square
partial_transpose = _impl.partial_transpose
partial_trace = _impl.partial_trace

__all__ = [
    "BACKEND",
    "relabel_map",
    "permute_vector",
    "permute_square",
    "partial_transpose",
    "partial_trace",
]
