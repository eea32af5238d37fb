"""Pure numpy implementation of the log-determinant kernels."""
import numpy as np


def chol_logdet(a):
    try:
        L = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return float("nan")
    return 2.0 * float(np.sum(np.log(np.diag(L))))


def subset_logdets(v, owner, n_parties):
    """ln det of the principal submatrix for every party bitmask.

    ``owner[row]`` is the party index of matrix row ``row``. Entry 0 of the
    result (empty subset) is 0.
    """
    owner = np.asarray(owner)
    n_masks = 1 << n_parties
    out = np.zeros(n_masks)
    bits = (np.arange(n_masks)[:, None] >> owner[None, :]) & 1
    for mask in range(1, n_masks):
        idx = np.flatnonzero(bits[mask])
        out[mask] = chol_logdet(v[np.ix_(idx, idx)])
    return out
