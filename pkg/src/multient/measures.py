"""Bipartite entanglement measures across one fixed cut."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, numeric
from .regroup import regroup_amplitudes, regroup_density
from .states import Bipartition, DensityMatrix, PureState, StateError, as_density

MEASURES = ("concurrence", "entropy", "negativity")
PURE_ONLY = ("concurrence", "entropy")

ZERO_TOL = 1e-12
# 2(1 - Tr rho_r^2) below this is rounding noise, not entanglement.
PURITY_DEFECT_FLOOR = 64 * np.finfo(float).eps


class MeasureError(ValueError):
    """A measure was requested for a state it is not defined on."""


@dataclass(frozen=True)
class CutValue:
    cut: Bipartition
    measure_kind: str
    value: float


def _snap(value):
    if value < -ZERO_TOL:
        raise numeric.NumericError(f"measure came out negative ({value:.3g})")
    return 0.0 if abs(value) <= ZERO_TOL else float(value)


def _as_array(rho):
    return rho.matrix if isinstance(rho, DensityMatrix) else numeric.as_matrix(rho)


def _check_grouped(m, n1, n2):
    if m.shape != (n1 * n2, n1 * n2):
        raise StateError(f"matrix of shape {m.shape} is not grouped as ({n1}, {n2})")


def partial_trace(rho, n1: int, n2: int, keep: int = 1) -> np.ndarray:
    """Reduce a matrix grouped as ``n1 x n2`` to side ``keep`` (1 or 2)."""
    m = _as_array(rho)
    _check_grouped(m, n1, n2)
    if keep not in (1, 2):
        raise ValueError(f"keep must be 1 or 2, got {keep}")
    return _kernels.partial_trace(m, n1, n2, keep)


def partial_transpose(rho, n1: int, n2: int, side: int = 1) -> np.ndarray:
    """Transpose the indices of one side of a matrix grouped as ``n1 x n2``."""
    m = _as_array(rho)
    _check_grouped(m, n1, n2)
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side}")
    return _kernels.partial_transpose(m, n1, n2, side)


def _require_pure(state, kind):
    if not isinstance(state, PureState):
        raise MeasureError(f"{kind} is defined for pure states only; use negativity for mixed states")


def reduced_state(psi: PureState, cut: Bipartition, keep: int = 1) -> np.ndarray:
    """Reduced density matrix of one side of ``cut``.

    Uses the regrouped amplitude matrix ``M`` (``n1 x n2``): side 1 is
    ``M M^dagger``, side 2 is ``M^T M^*``. Equal to ``partial_trace`` of the
    regrouped projector.
    """
    grouped = regroup_amplitudes(psi, cut)
    m = grouped.amplitudes.reshape(cut.n1, cut.n2)
    if keep == 1:
        return m @ m.conj().T
    return m.T @ m.conj()


def _smaller_side(cut):
    return 1 if cut.n1 <= cut.n2 else 2


def pure_concurrence(psi: PureState, cut: Bipartition) -> CutValue:
    """``sqrt(2 (1 - Tr rho_r^2))`` across the cut."""
    _require_pure(psi, "concurrence")
    rho_r = reduced_state(psi, cut, _smaller_side(cut))
    purity = float(np.vdot(rho_r, rho_r).real)
    defect = 2.0 * (1.0 - purity)
    value = np.sqrt(defect) if defect > PURITY_DEFECT_FLOOR else 0.0
    return CutValue(cut, "concurrence", _snap(value))


def entanglement_entropy(psi: PureState, cut: Bipartition) -> CutValue:
    """Von Neumann entropy of the reduced state, in bits."""
    _require_pure(psi, "entropy")
    lam = numeric.hermitian_eigenvalues(reduced_state(psi, cut, _smaller_side(cut)))
    lam = lam[lam > 0]
    value = float(-np.sum(lam * np.log2(lam))) if lam.size else 0.0
    return CutValue(cut, "entropy", _snap(max(value, 0.0)))


def negativity(rho, cut: Bipartition, side: int = 1) -> CutValue:
    """``(||rho^T_side||_1 - 1) / 2`` after regrouping for ``cut``."""
    rho = as_density(rho)
    grouped = regroup_density(rho, cut)
    pt = partial_transpose(grouped, cut.n1, cut.n2, side)
    lam = numeric.hermitian_eigenvalues(pt)
    value = (float(np.sum(np.abs(lam))) - 1.0) / 2.0
    return CutValue(cut, "negativity", _snap(value))


def measure_cut(state, cut: Bipartition, kind: str) -> CutValue:
    if kind == "concurrence":
        return pure_concurrence(state, cut)
    if kind == "entropy":
        return entanglement_entropy(state, cut)
    if kind == "negativity":
        return negativity(state, cut)
    raise MeasureError(f"unknown measure {kind!r}; choose from {', '.join(MEASURES)}")
