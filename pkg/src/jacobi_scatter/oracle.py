"""Independent extraction of scattering data by plane-wave matching.

This path shares nothing with the Wronskian pipeline beyond the profile
accessors: it runs its own recurrence with ``numpy.linalg.solve`` and reads
the coefficients off the exact free solutions ``z^n c3 + z^{-n} c4`` on two
consecutive sites outside the window.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFitError
from .lattice import SpectralPoint, unit_z
from .scattering import ScatteringData

FIT_EPS = 1e-6


@dataclass(frozen=True)
class PlaneWaveFit:
    """Coefficients of ``z^n`` (outgoing) and ``z^{-n}`` (incoming)."""

    outgoing: np.ndarray
    incoming: np.ndarray
    region: str

    def value(self, z, n):
        return z**n * self.outgoing + z ** (-n) * self.incoming


def fit_plane_waves(v_n, v_n1, n, z, region="left", eps=FIT_EPS):
    """Solve ``v(n) = z^n c3 + z^{-n} c4`` and ``v(n+1) = z^{n+1} c3 + z^{-n-1} c4``.

    The scalar determinant of the two-point system is ``1/z - z``; the fit is
    refused within ``eps`` of ``z = +-1``.
    """
    z = complex(z)
    if abs(z - 1) <= eps or abs(z + 1) <= eps:
        raise DegenerateFitError(f"plane-wave fit is degenerate at z = {z}")
    det = 1 / z - z
    v_n = np.asarray(v_n, dtype=complex)
    v_n1 = np.asarray(v_n1, dtype=complex)
    c3 = (z ** (-n - 1) * v_n - z ** (-n) * v_n1) / det
    c4 = (z**n * v_n1 - z ** (n + 1) * v_n) / det
    return PlaneWaveFit(c3, c4, region)


def _propagate_left(p, z, lam):
    """f_l from its exact right-hand seed down to n_min - 2."""
    eye = np.eye(p.q, dtype=complex)
    n0 = p.n_max + 1
    vals = {n0: z**n0 * eye, n0 + 1: z ** (n0 + 1) * eye}
    for n in range(n0, p.n_min - 2, -1):
        rhs = (lam * p.w(n) - p.b(n)) @ vals[n] - p.a(n + 1) @ vals[n + 1]
        vals[n - 1] = np.linalg.solve(p.a(n).conj().T, rhs)
    return vals


def _propagate_right(p, z, lam):
    """f_r from its exact left-hand seed up to n_max + 2."""
    eye = np.eye(p.q, dtype=complex)
    n0 = p.n_min - 1
    vals = {n0 - 1: z ** (1 - n0) * eye, n0: z ** (-n0) * eye}
    for n in range(n0, p.n_max + 2):
        rhs = (lam * p.w(n) - p.b(n)) @ vals[n] - p.a(n).conj().T @ vals[n - 1]
        vals[n + 1] = np.linalg.solve(p.a(n + 1), rhs)
    return vals


def oracle_scattering(p, z):
    """Scattering data from plane-wave fits in the free regions."""
    z = unit_z(z)
    t = p.tail
    lam = (t.a_inf * (z + 1 / z) + t.b_inf) / t.w_inf
    fl = _propagate_left(p, z, lam)
    fr = _propagate_right(p, z, lam)
    nl = p.n_min - 2
    left = fit_plane_waves(fl[nl], fl[nl + 1], nl, z, "left")
    nr = p.n_max + 1
    right = fit_plane_waves(fr[nr], fr[nr + 1], nr, z, "right")
    T_l = np.linalg.inv(left.outgoing)
    T_r = np.linalg.inv(right.incoming)
    L = left.incoming @ T_l
    R = right.outgoing @ T_r
    return ScatteringData(SpectralPoint(z, lam), T_l, T_r, L, R)
