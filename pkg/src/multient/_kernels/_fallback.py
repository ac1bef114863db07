"""Pure numpy implementations of the index-shuffling kernels.

These are the reference versions; ``_core.pyx`` mirrors them loop by loop.
"""
import numpy as np


def relabel_map(dims, order):
    """Flat-index map for reordering tensor factors.

    ``sigma[r]`` is the flat index, in the layout ``[dims[p] for p in order]``,
    of the basis state whose flat index in the original layout is ``r``.
    """
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    new_to_old = np.arange(total, dtype=np.intp).reshape(dims).transpose(order).ravel()
    sigma = np.empty(total, dtype=np.intp)
    sigma[new_to_old] = np.arange(total, dtype=np.intp)
    return sigma


def permute_vector(v, sigma):
    out = np.empty_like(v)
    out[sigma] = v
    return out


def permute_square(m, sigma):
    out = np.empty_like(m)
    out[np.ix_(sigma, sigma)] = m
    return out


def partial_transpose(m, n1, n2, side):
    t = m.reshape(n1, n2, n1, n2)
    axes = (2, 1, 0, 3) if side == 1 else (0, 3, 2, 1)
    return np.ascontiguousarray(t.transpose(axes)).reshape(n1 * n2, n1 * n2)


def partial_trace(m, n1, n2, keep):
    t = m.reshape(n1, n2, n1, n2)
    if keep == 1:
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)
