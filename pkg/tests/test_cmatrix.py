import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from jacobi_scatter import cmatrix as cm
from jacobi_scatter.errors import DimensionError, NotHermitianError, NotPositiveError, SingularMatrixError

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


def complex_matrices(q):
    return st.tuples(arrays(float, (q, q), elements=finite), arrays(float, (q, q), elements=finite)).map(
        lambda t: t[0] + 1j * t[1]
    )


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(complex_matrices))
def test_lu_inverse_and_det_match_numpy(a):
    if np.linalg.cond(a) > 1e8:
        return
    inv, det = cm.lu_inverse_det(a)
    assert np.allclose(inv @ a, np.eye(a.shape[0]), atol=1e-8)
    assert abs(det - np.linalg.det(a)) <= 1e-9 * max(1.0, abs(det))


def test_singular_matrix_is_rejected():
    a = np.array([[1, 2], [2, 4]], dtype=complex)
    with pytest.raises(SingularMatrixError):
        cm.inverse(a)
    assert cm.det(a) == 0
    assert cm.cond(a) == np.inf


def test_singularity_test_is_scale_invariant():
    a = np.array([[1e-20, 0], [0, 1.0]], dtype=complex)
    inv, det = cm.lu_inverse_det(a)
    assert np.allclose(inv @ a, np.eye(2))
    assert abs(det - 1e-20) < 1e-30


def test_dimension_errors():
    with pytest.raises(DimensionError):
        cm.mat_mul(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(DimensionError):
        cm.inverse(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        cm.split2(np.eye(3))
    with pytest.raises(DimensionError):
        cm.as_cmat(np.ones((2, 2, 2)))


def test_scalars_become_1x1():
    assert cm.as_cmat(3).shape == (1, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(complex_matrices))
def test_hermitian_sqrt_squares_back(b):
    w = b @ b.conj().T + np.eye(b.shape[0])
    r = cm.hermitian_sqrt(w)
    assert np.allclose(r @ r, w, atol=1e-9 * max(1, np.abs(w).max()))
    assert np.allclose(cm.hermitian_inv_sqrt(w) @ r, np.eye(b.shape[0]), atol=1e-9)


def test_sqrt_refuses_bad_input():
    with pytest.raises(NotHermitianError):
        cm.hermitian_sqrt(np.array([[1, 2], [0, 1]]))
    with pytest.raises(NotPositiveError):
        cm.hermitian_sqrt(np.diag([1.0, -1.0]))
    assert not cm.is_positive_definite(np.diag([1.0, 0.0]))
    assert cm.is_positive_definite(np.eye(2))


def test_op_norm_is_largest_singular_value(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert cm.op_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-12)


def test_block_round_trip(rng):
    blocks = [rng.normal(size=(2, 2)) + 0j for _ in range(4)]
    out = cm.split2(cm.block2(*blocks))
    for x, y in zip(out, blocks):
        assert np.array_equal(x, y)


def test_swap_and_sign_matrices():
    qm, jm = cm.swap_matrix(2), cm.sign_matrix(2)
    assert np.array_equal(qm @ qm, np.eye(4))
    assert np.array_equal(jm @ jm, np.eye(4))
    assert np.array_equal(qm @ jm @ qm, -jm)


def test_residual_is_relative_for_large_and_absolute_for_small():
    assert cm.residual(np.eye(1) * 1e-12, np.zeros((1, 1))) == pytest.approx(1e-12)
    assert cm.residual(np.eye(1) * (1e6 + 1), np.eye(1) * 1e6) == pytest.approx(1e-6)
