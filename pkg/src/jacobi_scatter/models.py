"""Ready-made coefficient profiles and their known closed-form scattering data."""
import numpy as np

from . import cmatrix as cm
from .lattice import CoefficientProfile, Tail
from .scattering import ScatteringData

SCHRODINGER_TAIL = Tail(-1.0, 2.0, 1.0)
FREE_TAIL = Tail(1.0, 0.0, 1.0)

V0_EX = np.array([[1, 1j], [-1j, 2]], dtype=complex)
V1_EX = np.array([[3, -7j], [7j, 4]], dtype=complex)


def schrodinger_profile(potential, window=None):
    """Discrete Schrodinger system ``(-I, 2I + V(n), I)`` with tail ``(-1, 2, 1)``.

    Parameters
    ----------
    potential : dict
        Site -> Hermitian ``q x q`` potential ``V(n)``.
    """
    pot = {int(n): cm.as_cmat(v) for n, v in potential.items()}
    q = next(iter(pot.values())).shape[0]
    b = {n: 2 * cm.identity(q) + v for n, v in pot.items()}
    return CoefficientProfile(q, SCHRODINGER_TAIL, b=b, window=window)


def two_defect_profile():
    """Two-site Schrodinger potential at ``n = 0, 1`` with the standard test matrices."""
    return schrodinger_profile({0: V0_EX, 1: V1_EX})


def _two_defect_poly(z):
    return 33 * z**4 + 114 * z**3 + 17 * z**2 - 10 * z - 1


def two_defect_closed_form(z):
    """Rational closed forms of ``T_l, T_r, L, R`` for :func:`two_defect_profile`."""
    zz = complex(z.z if hasattr(z, "z") else z)
    P = _two_defect_poly(zz)
    zm, zp = zz - 1, zz + 1
    T_l = np.array([
        [zm * zp * (6 * zz + 1), 3j * zz * zm * zp * (zz + 2)],
        [-1j * zz * zm * zp * (11 * zz + 6), -(zm**2) * zp * (5 * zz + 1)],
    ]) / P
    T_r = np.array([
        [zm * zp * (6 * zz + 1), 1j * zz * zm * zp * (11 * zz + 6)],
        [-3j * zz * zm * zp * (zz + 2), -(zm**2) * zp * (5 * zz + 1)],
    ]) / P
    off_l = 1j * zz * zm * zp * (4 * zz - 1) * (11 * zz + 1)
    L = np.array([
        [-zz * (77 * zz**4 + 57 * zz**3 + 28 * zz**2 - 8 * zz - 1), off_l],
        [-off_l, -zz * (41 * zz**4 + 64 * zz**3 + 65 * zz**2 - 15 * zz - 2)],
    ]) / P
    off_r = 1j * zm * zp * (6 * zz**2 + 21 * zz + 7)
    R = np.array([
        [3 * zz**4 - 21 * zz**3 - 110 * zz**2 - 28 * zz + 3, off_r],
        [-off_r, zz**4 - 24 * zz**3 - 109 * zz**2 - 25 * zz + 4],
    ]) / (zz * P)
    return ScatteringData(z, T_l, T_r, L, R)


def two_defect_det_transmission(z):
    """``det T_l = det T_r = -(z^2 - 1)^2 / P(z)``."""
    zz = complex(z.z if hasattr(z, "z") else z)
    return -((zz**2 - 1) ** 2) / _two_defect_poly(zz)


def two_defect_transition(z):
    """Closed form of the left transition matrix for :func:`two_defect_profile`."""
    zz = complex(z.z if hasattr(z, "z") else z)
    v0, v1 = V0_EX, V1_EX
    vv = v0 @ v1
    blk = cm.block2(
        -v0 - v1 - vv * zz, -v0 - v1 * zz**-2 - vv / zz,
        v0 + v1 * zz**2 + vv * zz, v0 + v1 + vv / zz,
    )
    return np.eye(4) + blk / (zz - 1 / zz)


def schrodinger_point_reference(v, m, z):
    """Closed forms for a single Schrodinger defect ``V`` at site ``m``.

    Returns
    -------
    dict
        ``T_l_inv``, ``T_r_inv``, ``L_T_l_inv``, ``R_T_r_inv`` and ``Lambda``.
    """
    zz = complex(z.z if hasattr(z, "z") else z)
    v = cm.as_cmat(v)
    eye = cm.identity(v.shape[0])
    d = zz - 1 / zz
    t_inv = eye - v / d
    lam = np.eye(2 * v.shape[0]) + cm.block2(-v, -v * zz ** (-2 * m), v * zz ** (2 * m), v) / d
    return {
        "T_l_inv": t_inv,
        "T_r_inv": t_inv.copy(),
        "L_T_l_inv": v * zz ** (2 * m) / d,
        "R_T_r_inv": v * zz ** (-2 * m) / d,
        "Lambda": lam,
    }


def a_defect_profile(a, m=0, tail=FREE_TAIL, metadata=None):
    """Single-site defect in ``a`` only: ``a(m) = a``, everything else free."""
    a = cm.as_cmat(a)
    return CoefficientProfile(a.shape[0], tail, a={m: a}, window=(m, m), metadata=metadata)


def random_hermitian(rng, q, scale):
    x = rng.uniform(-scale, scale, (q, q)) + 1j * rng.uniform(-scale, scale, (q, q))
    return 0.5 * (x + x.conj().T)


def random_profile(rng, q, window_len, n_min=None, strength=0.5, max_cond=50.0):
    """Random finitely supported class-A profile with entries bounded by 5.

    ``w = w_inf I + B B^H`` is positive definite by construction, ``b`` is
    ``b_inf I`` plus a Hermitian perturbation and each ``a(n)`` is the tail
    value plus a bounded perturbation,
    redrawn until its condition number is below ``max_cond``.

    ``strength`` scales every perturbation relative to the tail (``|a_inf|``
    for ``a`` and ``b``, ``w_inf`` for ``w``).  At the default 0.5 the norm of
    ``T^{-1}`` stays below a few hundred for windows up to six sites.  At 1.0
    it reaches ``1e4`` or more, and identities that cancel terms of size
    ``||T^{-1}||^2`` lose digits accordingly.
    """
    a_inf = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))
    tail = Tail(a_inf, float(rng.uniform(-1.0, 1.0)), float(rng.uniform(0.5, 2.0)))
    if n_min is None:
        n_min = int(rng.integers(-3, 4))
    sites = range(n_min, n_min + window_len)
    a, b, w = {}, {}, {}
    for n in range(n_min, n_min + window_len + 1):
        while True:
            pert = 0.5 * abs(a_inf) * strength * (rng.uniform(-1, 1, (q, q)) + 1j * rng.uniform(-1, 1, (q, q)))
            cand = a_inf * np.eye(q) + pert
            if cm.cond(cand) < max_cond:
                break
        a[n] = cand
    for n in sites:
        b[n] = tail.b_inf * np.eye(q) + random_hermitian(rng, q, abs(a_inf) * strength)
        bb = 0.5 * strength * (rng.uniform(-1, 1, (q, q)) + 1j * rng.uniform(-1, 1, (q, q)))
        w[n] = tail.w_inf * (np.eye(q) + bb @ bb.conj().T)
    return CoefficientProfile(q, tail, a=a, b=b, w=w, window=(n_min, n_min + window_len - 1))


def random_cuts(rng, p, max_cuts=3):
    """Strictly increasing cut points near the window of ``p``."""
    k = int(rng.integers(1, max_cuts + 1))
    pool = np.arange(p.n_min - 1, p.n_max + 2)
    k = min(k, len(pool))
    return sorted(int(c) for c in rng.choice(pool, size=k, replace=False))


def random_ensemble(seed, count, qs=(1, 2, 3), max_window=6, strength=0.5):
    """Deterministic list of ``(profile, cuts)`` pairs."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        q = int(rng.choice(qs))
        length = int(rng.integers(1, max_window + 1))
        p = random_profile(rng, q, length, strength=strength)
        out.append((p, random_cuts(rng, p)))
    return out
