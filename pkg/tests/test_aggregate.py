import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multient import _kernels
from multient.aggregate import (
    FULLY_INSEPARABLE,
    INCOMPLETE,
    SEMISEPARABLE,
    build_three_qubit_state,
    classify,
    free_entanglement,
    isotropic_closed_form,
    isotropic_state,
    isotropic_threshold,
    sweep_isotropic,
    three_qubit_closed_form,
)
from multient.measures import MeasureError
from multient.states import PureState, StateError, ghz_state, product_state, random_mixed, random_pure

from conftest import random_unitary

S = 1 / math.sqrt(2)
ZERO3 = product_state([1, 0], [1, 0], [1, 0])
ZERO_BELL = product_state([1, 0], PureState.from_amplitudes((2, 2), [S, 0, 0, S]))


def coeffs(**nonzero):
    c = np.zeros(8, dtype=complex)
    for k, v in nonzero.items():
        c[int(k[1:]) - 1] = v
    return c


def random_coeffs(rng):
    c = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return c / np.linalg.norm(c)


def relabel(psi, order):
    sigma = _kernels.relabel_map(psi.shape.dims, order)
    return PureState(psi.shape.reordered(order), _kernels.permute_vector(psi.amplitudes, sigma))


# --- free entanglement -----------------------------------------------------


def test_ghz_concurrence():
    report = free_entanglement(ghz_state(3), "concurrence")
    assert report.cut_count == 3
    assert report.e_bar == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("kind", ["concurrence", "entropy", "negativity"])
def test_product_state_zero(kind):
    assert free_entanglement(ZERO3, kind).e_bar == 0.0


def test_isotropic_negativity():
    assert free_entanglement(isotropic_state(3, 1.0), "negativity").e_bar == pytest.approx(0.5, abs=1e-12)


def test_default_measure_by_state_kind(rng):
    assert free_entanglement(ghz_state(3)).measure_kind == "concurrence"
    assert free_entanglement(random_mixed((2, 2), rng)).measure_kind == "negativity"


def test_mixed_state_rejects_pure_measures(rng):
    rho = random_mixed((2, 2, 2), rng)
    for kind in ("concurrence", "entropy"):
        with pytest.raises(MeasureError, match="negativity"):
            free_entanglement(rho, kind)
    with pytest.raises(MeasureError):
        free_entanglement(rho, "fidelity")


def test_report_average_and_order(rng):
    psi = random_pure((2, 2, 2, 2), rng)
    report = free_entanglement(psi, "entropy")
    assert report.cut_count == 10
    assert [cv.cut.side1 for cv in report.per_cut][:4] == [(0,), (1,), (2,), (3,)]
    assert abs(report.e_bar - sum(report.values) / 10) <= 1e-12


def test_distinct_cut_mode_recorded(rng):
    psi = random_pure((2, 2, 2, 2), rng)
    literal = free_entanglement(psi, "concurrence")
    distinct = free_entanglement(psi, "concurrence", cut_mode="distinct")
    assert distinct.cut_mode == "distinct" and distinct.cut_count == 7
    # Complementary half cuts carry equal values, so dropping one of each pair
    # reweights rather than changes them.
    halves = {cv.cut.side1: cv.value for cv in literal.per_cut[4:]}
    for cv in distinct.per_cut[4:]:
        assert abs(halves[cv.cut.side1] - halves[cv.cut.side2]) <= 1e-10


def test_deterministic(rng):
    psi = random_pure((2, 3, 2), rng)
    assert free_entanglement(psi, "entropy") == free_entanglement(psi, "entropy")


def test_qubit_concurrence_bounds(rng):
    for n in (3, 4, 5):
        psi = random_pure((2,) * n, rng)
        bound = math.sqrt(2 * (1 - 1 / 2 ** (n // 2)))
        for cv in free_entanglement(psi, "concurrence").per_cut:
            assert 0 <= cv.value <= bound + 1e-12
            if len(cv.cut.side1) == 1:
                assert cv.value <= 1 + 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_e_bar_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    psi = random_pure((2, 2, 3), rng)
    u = np.kron(np.kron(random_unitary(2, rng), random_unitary(2, rng)), random_unitary(3, rng))
    a = free_entanglement(psi, "concurrence")
    b = free_entanglement(PureState(psi.shape, u @ psi.amplitudes), "concurrence")
    assert all(abs(x - y) <= 1e-9 for x, y in zip(a.values, b.values))
    assert abs(a.e_bar - b.e_bar) <= 1e-9


# --- classification --------------------------------------------------------


def test_classify_examples():
    assert classify(ZERO3).verdict == SEMISEPARABLE
    assert classify(ghz_state(3)).verdict == FULLY_INSEPARABLE
    v = classify(ZERO_BELL)
    assert v.verdict == INCOMPLETE
    assert v.per_cut_flags == (False, True, True)
    assert v.tol == 1e-9


def test_classify_bell_pair_product():
    # psi+ (x) psi+ on four particles: not fully inseparable.
    psi_plus = PureState.from_amplitudes((2, 2), [0, S, S, 0])
    state = product_state(psi_plus, psi_plus)
    v = classify(state, "concurrence")
    assert v.verdict == INCOMPLETE
    flags = {cv.cut.side1: flag for cv, flag in zip(v.report.per_cut, v.per_cut_flags)}
    assert flags[(0, 1)] is False and flags[(2, 3)] is False
    assert all(flags[(p,)] for p in range(4))


def test_classify_rejects_bad_tol():
    with pytest.raises(ValueError):
        classify(ZERO3, tol=0)


@pytest.mark.parametrize("state", [ZERO3, ghz_state(3), ZERO_BELL, ghz_state(4)])
def test_classify_relabel_invariant(state):
    base = classify(state).verdict
    for order in itertools.permutations(range(state.shape.n)):
        assert classify(relabel(state, order)).verdict == base


def test_classify_mixed_isotropic():
    assert classify(isotropic_state(3, 0.1)).verdict == SEMISEPARABLE
    assert classify(isotropic_state(3, 0.5)).verdict == FULLY_INSEPARABLE


# --- three-qubit family ----------------------------------------------------


def test_build_three_qubit_ghz_like():
    psi = build_three_qubit_state(coeffs(c1=S, c4=S))
    expected = np.zeros(8)
    expected[[0b000, 0b011, 0b100]] = 0.5
    expected[0b111] = -0.5
    np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-15)


def test_build_three_qubit_product():
    psi = build_three_qubit_state(coeffs(c1=S, c3=S))
    np.testing.assert_allclose(psi.amplitudes, np.eye(8)[0], atol=1e-15)


def test_build_three_qubit_normalized(rng):
    for _ in range(20):
        psi = build_three_qubit_state(random_coeffs(rng))
        assert abs(np.linalg.norm(psi.amplitudes) - 1) <= 1e-12


def test_closed_form_examples():
    assert three_qubit_closed_form(coeffs(c1=S, c4=S)).e_bar == pytest.approx(1, abs=1e-12)
    assert three_qubit_closed_form(coeffs(c1=S, c3=S)).e_bar == 0.0
    report = three_qubit_closed_form(coeffs(c1=1))
    np.testing.assert_allclose(report.values, [0, 1, 1], atol=1e-12)
    assert report.e_bar == pytest.approx(2 / 3, abs=1e-12)
    assert [cv.cut.label for cv in report.per_cut] == ["A|BC", "B|AC", "C|AB"]


def test_closed_form_rejects_unnormalized():
    with pytest.raises(StateError):
        three_qubit_closed_form(np.ones(8))
    with pytest.raises(StateError):
        build_three_qubit_state(np.ones(7) / math.sqrt(7))


def test_closed_form_matches_pipeline(rng):
    for _ in range(50):
        c = random_coeffs(rng)
        closed = three_qubit_closed_form(c)
        generic = free_entanglement(build_three_qubit_state(c), "concurrence")
        assert max(abs(a - b) for a, b in zip(closed.values, generic.values)) <= 1e-9
        assert abs(closed.e_bar - generic.e_bar) <= 1e-9


# --- isotropic family ------------------------------------------------------


def test_isotropic_state_limits():
    np.testing.assert_allclose(isotropic_state(3, 0.0).matrix, np.eye(8) / 8)
    assert free_entanglement(isotropic_state(3, 0.0)).values == [0.0] * 3
    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(isotropic_state(2, 1.0).matrix, bell, atol=1e-15)
    assert free_entanglement(isotropic_state(2, 1.0)).e_bar == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("n", range(2, 9))
def test_isotropic_closed_form_threshold(n):
    t = isotropic_threshold(n)
    assert isotropic_closed_form(n, t) == 0.0
    assert isotropic_closed_form(n, 1.0) == pytest.approx((2 ** (n - 1) + 1 - 1) / 2**n, abs=1e-15)


def test_isotropic_closed_form_values():
    assert isotropic_closed_form(3, 1.0) == 0.5
    assert isotropic_closed_form(3, 0.5) == pytest.approx(0.1875, abs=1e-15)
    assert isotropic_closed_form(2, 0.0) == 0.0


@pytest.mark.parametrize("n, x", [(1, 0.5), (9, 0.5), (3, -0.1), (3, 1.1), (3, float("nan"))])
def test_isotropic_range_errors(n, x):
    with pytest.raises(StateError):
        isotropic_closed_form(n, x)
    with pytest.raises(StateError):
        isotropic_state(n, x)


def test_sweep_three_points():
    rows = sweep_isotropic(3, 0.0, 1.0, 3)
    assert [r[0] for r in rows] == [0.0, 0.5, 1.0]
    np.testing.assert_allclose([r[1] for r in rows], [0, 0.1875, 0.5], atol=1e-15)
    np.testing.assert_allclose([r[2] for r in rows], [0, 0.1875, 0.5], atol=1e-9)


def test_sweep_zero_branch_and_agreement():
    for n in (2, 3):
        rows = sweep_isotropic(n, 0.0, 1.0, 21)
        assert max(abs(c - g) for _, c, g in rows) <= 1e-9
        for x, c, g in rows:
            if x <= isotropic_threshold(n):
                assert c == 0.0


def test_sweep_errors():
    with pytest.raises(ValueError):
        sweep_isotropic(3, 0, 1, 1)
    with pytest.raises(StateError):
        sweep_isotropic(3, 0.5, 0.2, 3)
