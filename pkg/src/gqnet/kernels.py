"""Kernel backend selection.

The compiled extension is used when it was built; set ``GQNET_PURE_PYTHON=1``
to force the numpy fallback.
"""
import os

import numpy as np

if os.environ.get("GQNET_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"


def chol_logdet(a):
    """ln det of a symmetric positive-definite matrix, NaN if factorization fails."""
    return _impl.chol_logdet(np.ascontiguousarray(a, dtype=np.float64))


def subset_logdets(v, owner, n_parties):
    return _impl.subset_logdets(
        np.ascontiguousarray(v, dtype=np.float64),
        np.ascontiguousarray(owner, dtype=np.int64),
        int(n_parties),
    )
