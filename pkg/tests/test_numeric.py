import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multient import numeric
from multient.numeric import NumericError, hermitian_eigenvalues, kron, matmul, trace_norm

from conftest import random_hermitian


def kron_by_definition(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i1 in range(ra):
        for j1 in range(ca):
            for i2 in range(rb):
                for j2 in range(cb):
                    out[i1 * rb + i2, j1 * cb + j2] = a[i1, j1] * b[i2, j2]
    return out


def matmul_triple_loop(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            for k in range(a.shape[1]):
                out[i, j] += a[i, k] * b[k, j]
    return out


def cmat(rng, r, c):
    return rng.standard_normal((r, c)) + 1j * rng.standard_normal((r, c))


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_x_identity_swaps_blocks():
    x = np.array([[0, 1], [1, 0]])
    expected = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert np.array_equal(kron(x, np.eye(2)), expected)


def test_kron_matches_definition(rng):
    a, b = cmat(rng, 2, 3), cmat(rng, 3, 2)
    np.testing.assert_allclose(kron(a, b), kron_by_definition(a, b), atol=1e-14)


def test_kron_associative_and_bilinear(rng):
    for _ in range(20):
        a, b, c = (cmat(rng, 2, 2) for _ in range(3))
        assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-12
        a2 = cmat(rng, 2, 2)
        s = 0.3 - 1.7j
        lhs = kron(a + s * a2, b)
        rhs = kron(a, b) + s * kron(a2, b)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_matmul_identity_and_oracle(rng):
    m = cmat(rng, 3, 3)
    np.testing.assert_array_equal(matmul(np.eye(3), m), m)
    a, b = cmat(rng, 3, 3), cmat(rng, 3, 3)
    np.testing.assert_allclose(matmul(a, b), matmul_triple_loop(a, b), atol=1e-13)


def test_matmul_permutation_orthogonal(rng):
    p = np.eye(5)[rng.permutation(5)]
    np.testing.assert_array_equal(matmul(p, p.T), np.eye(5))


def test_matmul_shape_mismatch():
    with pytest.raises(NumericError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_non_finite_rejected():
    with pytest.raises(NumericError):
        kron(np.array([[np.nan]]), np.eye(2))


def test_eigenvalues_diagonal():
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([3, 1, 2])), [1, 2, 3])


def test_eigenvalues_pauli_x():
    np.testing.assert_allclose(hermitian_eigenvalues([[0, 1], [1, 0]]), [-1, 1], atol=1e-15)


@pytest.mark.parametrize("d", [1, 2, 8, 17, 64])
def test_eigenvalue_trace_identities(rng, d):
    h = random_hermitian(d, rng)
    lam = hermitian_eigenvalues(h)
    assert np.all(np.diff(lam) >= 0)
    assert abs(lam.sum() - np.trace(h).real) <= 1e-9
    assert abs((lam**2).sum() - np.sum(np.abs(h) ** 2)) <= 1e-9 * max(1, np.sum(np.abs(h) ** 2))


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NumericError, match="Hermitian"):
        hermitian_eigenvalues([[0, 1], [0, 0]])
    with pytest.raises(NumericError, match="square"):
        hermitian_eigenvalues(np.ones((2, 3)))


def test_eigenvalues_tolerate_rounding_asymmetry():
    m = np.array([[1, 0.5 + 1e-12], [0.5, 2]])
    assert hermitian_eigenvalues(m).shape == (2,)


def test_trace_norm_examples():
    assert trace_norm(np.eye(4) / 4) == pytest.approx(1, abs=1e-15)
    assert trace_norm(np.diag([0.5, 0.5, 0.5, -0.5])) == pytest.approx(2, abs=1e-15)
    pt_bell = np.array([[0.5, 0, 0, 0], [0, 0, 0.5, 0], [0, 0.5, 0, 0], [0, 0, 0, 0.5]])
    assert (trace_norm(pt_bell) - 1) / 2 == pytest.approx(0.5, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_trace_norm_bounds_trace(d, seed):
    h = random_hermitian(d, np.random.default_rng(seed))
    assert trace_norm(h) >= abs(np.trace(h).real) - 1e-12


def test_max_dim_constant():
    assert numeric.MAX_DIM == 4096
