"""Backend selection for the hot kernels.

The compiled Cython module is used when it imports; otherwise the numpy
reference in ``_pykernels`` is used. Setting ``GENINV_PURE=1`` forces the
reference backend.
"""

import os

from geninv import _pykernels

if os.environ.get("GENINV_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from geninv import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND

first_nonassociative = _impl.first_nonassociative
enumerate_tables = _impl.enumerate_tables
green_matrices = _impl.green_matrices
group_inverses = _impl.group_inverses
pair_sweep = _impl.pair_sweep


def compiled_available():
    try:
        from geninv import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True
