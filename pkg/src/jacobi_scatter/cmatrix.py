"""Dense complex matrix kernel.

Every matrix in the package is a two-dimensional ``complex128`` numpy array.
The helpers here add the checks the scattering code relies on: dimension
errors instead of broadcasting surprises, a scale-aware singularity test for
LU, and a positive square root that refuses non-Hermitian or non-positive
input.
"""
import warnings

import numpy as np
import scipy.linalg as sla

from .errors import DimensionError, NotHermitianError, NotPositiveError, SingularMatrixError

#: relative pivot floor for LU, measured against the largest entry of the pivot column
PIVOT_RTOL = 1e-13
#: relative eigenvalue floor for positive definiteness
POSITIVE_RTOL = 1e-12
#: Hermiticity tolerance, relative to max(1, largest entry)
HERMITIAN_TOL = 1e-10


def as_cmat(a):
    """Return ``a`` as a 2-D complex128 array (scalars become 1x1)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of shape {m.shape}")
    return m


def identity(n):
    return np.eye(n, dtype=np.complex128)


def zeros(n):
    return np.zeros((n, n), dtype=np.complex128)


def _require_square(a):
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {a.shape}")


def mat_mul(a, b):
    a, b = as_cmat(a), as_cmat(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a):
    """Conjugate transpose."""
    return as_cmat(a).conj().T


def lu_inverse_det(a):
    """Inverse and determinant from one LU factorization with partial pivoting.

    A pivot is declared zero when its modulus falls below ``PIVOT_RTOL`` times
    the largest modulus in the corresponding column of the input, which makes
    the test invariant under column scaling.

    Returns
    -------
    inv : ndarray
    det : complex

    Raises
    ------
    SingularMatrixError
    """
    a = as_cmat(a)
    _require_square(a)
    n = a.shape[0]
    col_scale = np.abs(a).max(axis=0)
    if np.any(col_scale == 0.0) or not np.all(np.isfinite(a)):
        raise SingularMatrixError("matrix has a zero or non-finite column")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=False)
    pivots = np.diag(lu)
    if np.any(np.abs(pivots) < PIVOT_RTOL * col_scale):
        raise SingularMatrixError("pivot below singularity floor")
    swaps = np.count_nonzero(piv != np.arange(n))
    det = complex(np.prod(pivots)) * (-1.0) ** swaps
    inv = sla.lu_solve((lu, piv), np.eye(n, dtype=np.complex128), check_finite=False)
    return inv, det


def inverse(a):
    return lu_inverse_det(a)[0]


def det(a):
    a = as_cmat(a)
    _require_square(a)
    try:
        return lu_inverse_det(a)[1]
    except SingularMatrixError:
        return 0j


def solve(a, b):
    """Solve ``a @ x = b`` with the same singularity rule as :func:`lu_inverse_det`."""
    return lu_inverse_det(a)[0] @ as_cmat(b)


def is_hermitian(a, tol=HERMITIAN_TOL):
    a = as_cmat(a)
    if a.shape[0] != a.shape[1]:
        return False
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return bool(np.abs(a - a.conj().T).max(initial=0.0) <= tol * scale)


def hermitian_eig(a):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    a = as_cmat(a)
    _require_square(a)
    if not is_hermitian(a):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    h = 0.5 * (a + a.conj().T)
    return np.linalg.eigh(h)


def _positive_eig(w):
    vals, vecs = hermitian_eig(w)
    if vals[-1] <= 0.0 or vals[0] <= POSITIVE_RTOL * vals[-1]:
        raise NotPositiveError(f"matrix is not positive definite (eigenvalues {vals})")
    return vals, vecs


def hermitian_sqrt(w):
    """The unique positive square root of a positive definite Hermitian matrix."""
    vals, vecs = _positive_eig(w)
    r = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return 0.5 * (r + r.conj().T)


def hermitian_inv_sqrt(w):
    """Inverse of :func:`hermitian_sqrt`, computed from the same eigenbasis."""
    vals, vecs = _positive_eig(w)
    r = (vecs / np.sqrt(vals)) @ vecs.conj().T
    return 0.5 * (r + r.conj().T)


def is_positive_definite(w):
    try:
        _positive_eig(w)
    except (NotHermitianError, NotPositiveError):
        return False
    return True


def op_norm(a):
    """Operator 2-norm: square root of the top eigenvalue of ``a^dagger a``."""
    a = as_cmat(a)
    if a.size == 0:
        return 0.0
    vals = np.linalg.eigvalsh(a.conj().T @ a)
    return float(np.sqrt(max(vals[-1], 0.0)))


def cond(a):
    """Operator-norm condition number; ``inf`` for singular input."""
    try:
        inv = inverse(a)
    except SingularMatrixError:
        return np.inf
    return op_norm(a) * op_norm(inv)


def block2(m11, m12, m21, m22):
    """Assemble a 2x2 block matrix."""
    return np.block([[as_cmat(m11), as_cmat(m12)], [as_cmat(m21), as_cmat(m22)]])


def split2(m):
    """Inverse of :func:`block2` for a square matrix of even size."""
    m = as_cmat(m)
    _require_square(m)
    n = m.shape[0]
    if n % 2:
        raise DimensionError("matrix size must be even to split into 2x2 blocks")
    h = n // 2
    return m[:h, :h], m[:h, h:], m[h:, :h], m[h:, h:]


def swap_matrix(q):
    """The involution [[0, I], [I, 0]]."""
    i, o = identity(q), zeros(q)
    return block2(o, i, i, o)


def sign_matrix(q):
    """diag(I, -I)."""
    i, o = identity(q), zeros(q)
    return block2(i, o, o, -i)


def residual(actual, expected):
    """Operator-norm distance scaled by max(1, ||expected||)."""
    actual, expected = as_cmat(actual), as_cmat(expected)
    return op_norm(actual - expected) / max(1.0, op_norm(expected))
