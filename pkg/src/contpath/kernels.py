"""Backend selection for the hot loops.

The compiled extension ``contpath._ckernels`` is preferred; if it is missing
(source checkout without a build) or ``CONTPATH_PURE_PYTHON`` is set to a
non-empty value other than ``0``, the numpy implementation is used instead.
Both backends expose the same four functions and round identically.
"""

import os

from . import _pykernels

_force_python = os.environ.get("CONTPATH_PURE_PYTHON", "") not in ("", "0")

if _force_python:
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

series = _impl.series
series_array = _impl.series_array
lambda_hits = _impl.lambda_hits
simplex_pair_hits = _impl.simplex_pair_hits


def backends():
    """Map of every importable backend name to its module."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
