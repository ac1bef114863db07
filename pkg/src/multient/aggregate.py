"""The averaged multiparticle measure, the grouping-based classifier, and the
two closed-form families used to validate the generic pipeline."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import MEASURES, PURE_ONLY, PURITY_DEFECT_FLOOR, CutValue, MeasureError, measure_cut
from .regroup import enumerate_bipartitions
from .states import Bipartition, DensityMatrix, PureState, StateError, SubsystemShape, ghz_state

DEFAULT_TOL = 1e-9

SEMISEPARABLE = "semiseparable-consistent"
INCOMPLETE = "incompletely-separable"
FULLY_INSEPARABLE = "fully-inseparable-consistent"


@dataclass(frozen=True)
class MeasureReport:
    measure_kind: str
    per_cut: tuple[CutValue, ...]
    e_bar: float
    cut_count: int
    cut_mode: str = "literal"

    @property
    def values(self) -> list[float]:
        return [cv.value for cv in self.per_cut]


@dataclass(frozen=True)
class Verdict:
    verdict: str
    tol: float
    per_cut_flags: tuple[bool, ...]  # True where the cut value exceeds tol
    report: MeasureReport

    def __str__(self):
        return self.verdict


def _report(kind, per_cut, cut_mode="literal"):
    per_cut = tuple(per_cut)
    e_bar = math.fsum(cv.value for cv in per_cut) / len(per_cut)
    return MeasureReport(kind, per_cut, e_bar, len(per_cut), cut_mode)


def default_measure(state) -> str:
    return "concurrence" if isinstance(state, PureState) else "negativity"


def free_entanglement(state, measure_kind=None, cut_mode="literal") -> MeasureReport:
    """Average a bipartite measure uniformly over every enumerated grouping.

    ``measure_kind`` defaults to concurrence for pure states and negativity
    for mixed ones.
    """
    measure_kind = measure_kind or default_measure(state)
    if measure_kind not in MEASURES:
        raise MeasureError(f"unknown measure {measure_kind!r}; choose from {', '.join(MEASURES)}")
    if measure_kind in PURE_ONLY and not isinstance(state, PureState):
        raise MeasureError(
            f"{measure_kind} is defined for pure states only; valid measures for mixed states: negativity"
        )
    cuts = enumerate_bipartitions(state.shape, cut_mode)
    return _report(measure_kind, (measure_cut(state, cut, measure_kind) for cut in cuts), cut_mode)


def verdict_from_report(report: MeasureReport, tol=DEFAULT_TOL) -> Verdict:
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    flags = tuple(v > tol for v in report.values)
    if not any(flags):
        verdict = SEMISEPARABLE
    elif all(flags):
        verdict = FULLY_INSEPARABLE
    else:
        verdict = INCOMPLETE
    return Verdict(verdict, tol, flags, report)


def classify(state, measure_kind=None, tol=DEFAULT_TOL, cut_mode="literal") -> Verdict:
    """Sort a state into one of the three grouping classes.

    A zero measure does not certify separability, hence the ``-consistent``
    suffix on the two extreme verdicts.
    """
    return verdict_from_report(free_entanglement(state, measure_kind, cut_mode), tol)


# --- three-qubit family ----------------------------------------------------

_S = 1 / math.sqrt(2)
# Bell states on BC in the computational basis |00>, |01>, |10>, |11>.
_PHI_PLUS = np.array([_S, 0, 0, _S])
_PHI_MINUS = np.array([_S, 0, 0, -_S])
_PSI_PLUS = np.array([0, _S, _S, 0])
_PSI_MINUS = np.array([0, _S, -_S, 0])


def _coefficients(c):
    c = np.asarray(c, dtype=np.complex128).ravel()
    if c.shape != (8,):
        raise StateError(f"expected 8 coefficients, got {c.shape[0]}")
    if not np.all(np.isfinite(c)):
        raise StateError("coefficients must be finite")
    norm2 = float(np.sum(np.abs(c) ** 2))
    if abs(norm2 - 1) > 1e-8:
        raise StateError(f"coefficients are not normalized (sum |c|^2 = {norm2:.12g})")
    return c


def build_three_qubit_state(c) -> PureState:
    """``sum_k (c_{2k-1}|0> + c_{2k}|1>)_A |bell_k>_BC`` for bell_k = phi+, phi-, psi+, psi-."""
    c = _coefficients(c)
    a0 = np.array([1, 0])
    a1 = np.array([0, 1])
    amps = np.zeros(8, dtype=np.complex128)
    for k, bell in enumerate((_PHI_PLUS, _PHI_MINUS, _PSI_PLUS, _PSI_MINUS)):
        amps += np.kron(c[2 * k] * a0 + c[2 * k + 1] * a1, bell)
    return PureState(SubsystemShape((2, 2, 2)), amps)


def _cut_concurrence(m, n, p):
    q = np.conj(p)
    defect = 2 * (1 - (m**2 + n**2 + 2 * (p * q).real))
    return math.sqrt(defect) if defect > PURITY_DEFECT_FLOOR else 0.0


def three_qubit_closed_form(c) -> MeasureReport:
    """Concurrence per cut (A-BC, B-AC, C-AB) from the Bell-basis coefficients."""
    c = _coefficients(c)
    C1, C2, C3, C4, C5, C6, C7, C8 = c
    a2 = lambda z: abs(z) ** 2  # noqa: E731
    cj = np.conj

    m_a = a2(C1) + a2(C3) + a2(C5) + a2(C7)
    n_a = a2(C2) + a2(C4) + a2(C6) + a2(C8)
    p_a = C1 * cj(C2) + C3 * cj(C4) + C5 * cj(C6) + C7 * cj(C8)

    m_b = (a2(C1 + C3) + a2(C2 + C4) + a2(C5 + C7) + a2(C6 + C8)) / 2
    n_b = (a2(C1 - C3) + a2(C2 - C4) + a2(C5 - C7) + a2(C6 - C8)) / 2
    p_b = (
        (C1 + C3) * cj(C5 - C7)
        + (C5 + C7) * cj(C1 - C3)
        + (C2 + C4) * cj(C6 - C8)
        + (C6 + C8) * cj(C2 - C4)
    ) / 2

    m_c = (a2(C1 + C3) + a2(C2 + C4) + a2(C5 - C7) + a2(C6 - C8)) / 2
    n_c = (a2(C1 - C3) + a2(C2 - C4) + a2(C5 + C7) + a2(C6 + C8)) / 2
    p_c = (
        (C1 + C3) * cj(C5 + C7)
        + (C5 - C7) * cj(C1 - C3)
        + (C2 + C4) * cj(C6 + C8)
        + (C6 - C8) * cj(C2 - C4)
    ) / 2

    shape = SubsystemShape((2, 2, 2))
    per_cut = [
        CutValue(Bipartition(shape, (pos,)), "concurrence", _cut_concurrence(m, n, p))
        for pos, (m, n, p) in enumerate(((m_a, n_a, p_a), (m_b, n_b, p_b), (m_c, n_c, p_c)))
    ]
    return _report("concurrence", per_cut)


# --- isotropic family ------------------------------------------------------


def _check_isotropic(n, x):
    if not (isinstance(n, (int, np.integer)) and 2 <= n <= 8):
        raise StateError(f"particle count must be an integer in 2..8, got {n}")
    if not (math.isfinite(x) and 0 <= x <= 1):
        raise StateError(f"mixing weight must lie in [0, 1], got {x}")


def isotropic_state(n: int, x: float) -> DensityMatrix:
    """``x |GHZ><GHZ| + (1 - x) 1 / 2^n`` on ``n`` qubits."""
    _check_isotropic(n, x)
    g = ghz_state(n).amplitudes
    dim = 2**n
    rho = x * np.outer(g, g.conj()) + (1 - x) / dim * np.eye(dim)
    return DensityMatrix(SubsystemShape((2,) * n), rho)


def isotropic_threshold(n: int) -> float:
    return 1 / (1 + 2 ** (n - 1))


def isotropic_closed_form(n: int, x: float) -> float:
    _check_isotropic(n, x)
    if x > isotropic_threshold(n):
        return abs((1 - (1 + 2 ** (n - 1)) * x) / 2**n)
    return 0.0


def sweep_isotropic(n, x_min=0.0, x_max=1.0, steps=21, cut_mode="literal"):
    """Rows ``(x, closed_form, generic)`` on an evenly spaced grid."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    if not 0 <= x_min <= x_max <= 1:
        raise StateError(f"need 0 <= x_min <= x_max <= 1, got [{x_min}, {x_max}]")
    _check_isotropic(n, x_min)
    rows = []
    for x in np.linspace(x_min, x_max, steps):
        x = float(x)
        generic = free_entanglement(isotropic_state(n, x), "negativity", cut_mode).e_bar
        rows.append((x, isotropic_closed_form(n, x), generic))
    return rows
