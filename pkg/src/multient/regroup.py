"""Bipartite groupings and the permutation operators that realize them.

Convention: ``pair_permutation(n1, n2)`` is ``sum_ij E_ij (x) E_ij^T`` with
``E_ij`` of shape ``n1 x n2``. It maps ``C^n2 (x) C^n1`` onto
``C^n1 (x) C^n2``, so its *transpose* swaps an ``n1``-dim factor followed by
an ``n2``-dim factor. The same holds one level up: the transpose of a
``move_permutation`` or grouping unitary is what carries a state vector into
the regrouped layout, and a density matrix regroups as ``U^T rho U``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels, numeric
from .states import Bipartition, DensityMatrix, PureState, StateError, SubsystemShape

# Above this dimension regroup_density skips the dense permutation product.
MATRIX_PATH_MAX = 256

CUT_MODES = ("literal", "distinct")


def cut_count(n, cut_mode="literal") -> int:
    count = sum(math.comb(n, q) for q in range(1, n // 2 + 1))
    if cut_mode == "distinct" and n % 2 == 0:
        count -= math.comb(n, n // 2) // 2
    return count


def enumerate_bipartitions(shape: SubsystemShape, cut_mode="literal") -> list[Bipartition]:
    """All groupings with side sizes ``1..floor(N/2)``, size-then-lexicographic.

    In ``"literal"`` mode a half-size subset and its complement both appear
    for even N. ``"distinct"`` keeps only the half-size subsets containing
    particle 0.
    """
    if cut_mode not in CUT_MODES:
        raise ValueError(f"cut_mode must be one of {CUT_MODES}, got {cut_mode!r}")
    n = shape.n
    cuts = []
    for q in range(1, n // 2 + 1):
        for side1 in combinations(range(n), q):
            if cut_mode == "distinct" and 2 * q == n and side1[0] != 0:
                continue
            cuts.append(Bipartition(shape, side1))
    return cuts


def _unit(n1, n2, i, j):
    e = np.zeros((n1, n2), dtype=np.complex128)
    e[i, j] = 1
    return e


def pair_permutation(n1: int, n2: int) -> np.ndarray:
    """Commutation matrix ``sum_ij E_ij (x) E_ij^T``.

    ``pair_permutation(n1, n2) @ kron(y, x) == kron(x, y)`` for ``x`` of
    length ``n1`` and ``y`` of length ``n2``; the transpose undoes it.
    """
    n1, n2 = int(n1), int(n2)
    if n1 < 1 or n2 < 1:
        raise ValueError(f"dimensions must be >= 1, got ({n1}, {n2})")
    if n1 * n2 > numeric.MAX_DIM:
        raise numeric.NumericError(f"pair_permutation({n1}, {n2}) is too large")
    p = np.zeros((n1 * n2, n1 * n2), dtype=np.complex128)
    for i in range(n1):
        for j in range(n2):
            e = _unit(n1, n2, i, j)
            p += numeric.kron(e, e.T)
    return p


def _identity(n):
    return np.eye(n, dtype=np.complex128)


def move_permutation(shape: SubsystemShape, i: int, j: int) -> np.ndarray:
    """Permutation ``P'(i, j)`` whose transpose moves particle ``j`` to slot ``i``.

    Particles ``i..j-1`` shift one slot right. Built as a chain of adjacent
    ``pair_permutation`` factors padded with identities.
    """
    n = shape.n
    if not (0 <= i < n and 0 <= j < n):
        raise StateError(f"positions ({i}, {j}) out of range for {n} particles")
    if i > j:
        raise StateError(f"move_permutation needs i <= j, got ({i}, {j})")
    dims = shape.dims
    total = shape.total
    dj = dims[j]
    out = _identity(total)
    # The moving particle passes slots j-1, j-2, ..., i; at slot t it meets
    # original particle t (dim dims[t]), everything left of t is untouched.
    for t in range(j - 1, i - 1, -1):
        left = math.prod(dims[:t])
        right = total // (left * dims[t] * dj)
        step = numeric.kron(numeric.kron(_identity(left), pair_permutation(dims[t], dj)), _identity(right))
        out = numeric.matmul(out, step)
    return out


@dataclass(frozen=True, eq=False)
class GroupingPlan:
    cut: Bipartition
    permutation: np.ndarray
    grouped_shape: tuple[int, int]


def grouping_unitary(cut: Bipartition) -> GroupingPlan:
    """Product of ``move_permutation`` steps bringing side 1 to the front."""
    dims = list(cut.shape.dims)
    u = _identity(cut.shape.total)
    for k, x in enumerate(cut.side1):
        u = numeric.matmul(u, move_permutation(SubsystemShape(tuple(dims)), k, x))
        dims.insert(k, dims.pop(x))
    return GroupingPlan(cut, u, (cut.n1, cut.n2))


def _check_shape(state, cut):
    if state.shape != cut.shape:
        raise StateError(f"state dims {state.shape.dims} do not match cut dims {cut.shape.dims}")


def regroup_oracle(rho: DensityMatrix, cut: Bipartition) -> DensityMatrix:
    """Regroup by copying entry ``(r, c)`` to ``(sigma(r), sigma(c))``."""
    _check_shape(rho, cut)
    sigma = _kernels.relabel_map(cut.shape.dims, cut.order)
    out = _kernels.permute_square(rho.matrix, sigma)
    return DensityMatrix._unchecked(cut.shape.reordered(cut.order), out)


def regroup_density(rho: DensityMatrix, cut: Bipartition, method="auto") -> DensityMatrix:
    """``U^T rho U`` for the cut's grouping unitary.

    ``method`` is ``"matrix"``, ``"oracle"`` or ``"auto"`` (matrix path up to
    ``MATRIX_PATH_MAX``).
    """
    _check_shape(rho, cut)
    if method == "auto":
        method = "matrix" if cut.shape.total <= MATRIX_PATH_MAX else "oracle"
    if method == "oracle":
        return regroup_oracle(rho, cut)
    if method != "matrix":
        raise ValueError(f"unknown method {method!r}")
    u = grouping_unitary(cut).permutation
    out = numeric.matmul(numeric.matmul(u.T, rho.matrix), u)
    return DensityMatrix._unchecked(cut.shape.reordered(cut.order), out)


def ungroup_density(rho_k: DensityMatrix, cut: Bipartition) -> DensityMatrix:
    """Inverse of ``regroup_density``: ``U rho_k U^T`` back in the original layout."""
    if rho_k.shape != cut.shape.reordered(cut.order):
        raise StateError(f"state dims {rho_k.shape.dims} do not match the grouped layout of the cut")
    u = grouping_unitary(cut).permutation
    out = numeric.matmul(numeric.matmul(u, rho_k.matrix), u.T)
    return DensityMatrix._unchecked(cut.shape, out)


def regroup_amplitudes(psi: PureState, cut: Bipartition) -> PureState:
    """Pure-state counterpart of ``regroup_oracle``: amplitude ``r`` moves to ``sigma(r)``."""
    _check_shape(psi, cut)
    sigma = _kernels.relabel_map(cut.shape.dims, cut.order)
    return PureState(cut.shape.reordered(cut.order), _kernels.permute_vector(psi.amplitudes, sigma))
