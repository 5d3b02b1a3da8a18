"""Scattering coefficients from Wronskians of Jost solutions.

All four Wronskians are evaluated at ``n0 = n_max + 1`` where ``f_l`` is an
exact plane wave, so only ``f_r`` has to be propagated across the window:

    [f_l(z*)^dagger; f_r(z)] = -(z - 1/z) a_inf T_r^{-1}
    [f_l(z)^dagger;  f_r(z)] =  (z - 1/z) a_inf R T_r^{-1}
    [f_r(z*)^dagger; f_l(z)] =  (z - 1/z) a_inf T_l^{-1}
    [f_r(z)^dagger;  f_l(z)] =  (1/z - z) a_inf L T_l^{-1}
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import cmatrix as cm
from .errors import SingularMatrixError
from .jost import adjoint_values, jost_left, jost_right, plane_wave, wronskian, wronskian_of
from .lattice import DEFAULT_EXCLUSION_EPS, SpectralPoint, unit_z
from .report import ReportCard

#: transmission inverses with a larger condition number are rejected
MAX_TRANSMISSION_COND = 1e10


@dataclass(frozen=True)
class ScatteringData:
    """Transmission and reflection coefficients at one point of the unit circle."""

    z: SpectralPoint
    T_l: np.ndarray
    T_r: np.ndarray
    L: np.ndarray
    R: np.ndarray

    @property
    def q(self):
        return self.T_l.shape[0]

    @cached_property
    def T_l_inv(self):
        return cm.inverse(self.T_l)

    @cached_property
    def T_r_inv(self):
        return cm.inverse(self.T_r)

    def conj_partner(self):
        """Data at ``z*`` obtained from the conjugation symmetries."""
        h = cm.adjoint
        return ScatteringData(self.z.conj, h(self.T_r), h(self.T_l), h(self.L), h(self.R))

    def blocks(self):
        return {"T_l": self.T_l, "T_r": self.T_r, "L": self.L, "R": self.R}


def free_scattering(q, z):
    i, o = cm.identity(q), cm.zeros(q)
    return ScatteringData(z, i, i.copy(), o, o.copy())


def _checked_inverse(m, label):
    c = cm.cond(m)
    if not c <= MAX_TRANSMISSION_COND:
        raise SingularMatrixError(f"{label} has condition number {c:.3e}")
    return cm.inverse(m)


def from_inverse_blocks(z, T_l_inv, L_T_l_inv, T_r_inv, R_T_r_inv):
    """Build :class:`ScatteringData` from ``T_l^{-1}, L T_l^{-1}, T_r^{-1}, R T_r^{-1}``."""
    T_l = _checked_inverse(T_l_inv, "T_l^{-1}")
    T_r = _checked_inverse(T_r_inv, "T_r^{-1}")
    return ScatteringData(z, T_l, T_r, L_T_l_inv @ T_l, R_T_r_inv @ T_r)


def _point(p, z, exclusion_eps):
    if isinstance(z, SpectralPoint):
        return SpectralPoint.at(z.z, p.tail, exclusion_eps)
    return SpectralPoint.at(z, p.tail, exclusion_eps)


def extract_scattering(p, z, exclusion_eps=DEFAULT_EXCLUSION_EPS):
    """Compute ``T_l, T_r, L, R`` at a point of the unit circle.

    Raises
    ------
    DomainError
        If ``z`` is off the unit circle or too close to ``+-1``.
    SingularMatrixError
        If a transmission inverse is numerically singular.
    """
    sp = _point(p, z, exclusion_eps)
    zz = sp.z
    zc = zz.conjugate()
    n0 = p.n_max + 1
    q = p.q
    fl = (plane_wave(zz, n0, q), plane_wave(zz, n0 + 1, q))
    fl_c = (plane_wave(zc, n0, q), plane_wave(zc, n0 + 1, q))
    fr = jost_right(p, zz, n0, n0 + 1)
    fr = (fr[n0], fr[n0 + 1])
    fr_c = jost_right(p, zc, n0, n0 + 1)
    fr_c = (fr_c[n0], fr_c[n0 + 1])

    def h(pair):
        return (cm.adjoint(pair[0]), cm.adjoint(pair[1]))

    k = (zz - 1 / zz) * p.tail.a_inf
    T_r_inv = -wronskian(p, h(fl_c), fr, n0) / k
    R_T_r_inv = wronskian(p, h(fl), fr, n0) / k
    T_l_inv = wronskian(p, h(fr_c), fl, n0) / k
    L_T_l_inv = -wronskian(p, h(fr), fl, n0) / k
    return from_inverse_blocks(sp, T_l_inv, L_T_l_inv, T_r_inv, R_T_r_inv)


@dataclass(frozen=True)
class SMatrix:
    """The ``2q x 2q`` matrix ``[[T_l, R], [L, T_r]]``."""

    z: SpectralPoint
    s: np.ndarray

    def unitarity_residual(self):
        return cm.residual(cm.adjoint(self.s) @ self.s, np.eye(self.s.shape[0]))


def assemble_smatrix(d):
    return SMatrix(d.z, cm.block2(d.T_l, d.R, d.L, d.T_r))


def physical_solutions(p, z, d, n_lo, n_hi):
    """``Psi_l = f_l T_l`` and ``Psi_r = f_r T_r`` on ``n_lo..n_hi``."""
    zz = d.z.z if z is None else (z.z if isinstance(z, SpectralPoint) else complex(z))
    fl = jost_left(p, zz, n_lo, n_hi)
    fr = jost_right(p, zz, n_lo, n_hi)
    return ({n: v @ d.T_l for n, v in fl.items()}, {n: v @ d.T_r for n, v in fr.items()})


def suite_sites(p):
    """Three distinct sites used for the Wronskian checks: left free, inside, right free."""
    return (p.n_min - 2, (p.n_min + p.n_max) // 2, p.n_max + 2)


def wronskian_relations(p, d, d_conj, sites=None):
    """Every Wronskian relation, as ``(name, computed, expected)`` triples per site.

    ``d_conj`` is scattering data extracted independently at ``z*``.  Each
    Wronskian is compared with both its value from the right free region and
    its value expressed through scattering data from the left.
    """
    z = d.z.z
    zc = z.conjugate()
    k = (z - 1 / z) * p.tail.a_inf
    sites = suite_sites(p) if sites is None else sites
    lo, hi = min(sites), max(sites) + 1
    fl, fr = jost_left(p, z, lo, hi), jost_right(p, z, lo, hi)
    gl, gr = jost_left(p, zc, lo, hi), jost_right(p, zc, lo, hi)
    fl_h, fr_h, gl_h, gr_h = (adjoint_values(v) for v in (fl, fr, gl, gr))
    h, inv = cm.adjoint, cm.inverse
    eye, zero = cm.identity(p.q), cm.zeros(p.q)
    Tl, Tr, L, R = d.T_l, d.T_r, d.L, d.R
    Tlc, Trc, Lc, Rc = d_conj.T_l, d_conj.T_r, d_conj.L, d_conj.R
    Tl_i, Tr_i = d.T_l_inv, d.T_r_inv
    Tlc_i = d_conj.T_l_inv

    rel = [
        ("W[f_l^H; f_l]", fl_h, fl,
         [k * eye, k * inv(h(Tl)) @ (eye - h(L) @ L) @ Tl_i]),
        ("W[f_l^H; g_l]", fl_h, gl,
         [zero, k * h(Tlc) @ (Lc - h(L)) @ Tlc_i]),
        ("W[g_l^H; f_l]", gl_h, fl,
         [zero, k * inv(h(Tlc)) @ (h(Lc) - L) @ Tl_i]),
        ("W[g_l^H; g_l]", gl_h, gl,
         [-k * eye, -k * inv(h(Tlc)) @ (eye - h(Lc) @ Lc) @ Tlc_i]),
        ("W[f_r^H; f_r]", fr_h, fr,
         [-k * inv(h(Tr)) @ (eye - h(R) @ R) @ Tr_i, -k * eye]),
        ("W[g_r^H; f_r]", gr_h, fr,
         [-k * inv(h(Trc)) @ (h(Rc) - R) @ Tr_i, zero]),
        ("W[f_l^H; f_r]", fl_h, fr,
         [k * R @ Tr_i, -k * inv(h(Tl)) @ h(L)]),
        ("W[f_l(z*)^H; f_r]", gl_h, fr,
         [-k * Tr_i, -k * inv(h(Tlc))]),
        ("W[f_r(z*)^H; f_l]", gr_h, fl,
         [k * inv(h(Trc)), k * Tl_i]),
    ]
    out = []
    for name, alpha, beta, values in rel:
        for n in sites:
            w = wronskian_of(p, alpha, beta, n)
            for v in values:
                out.append((name, w, v))
    return out


def identity_suite(p, z, d=None, d_conj=None, tol=1e-9):
    """Unitarity, conjugation symmetry and Wronskian relations at one ``z``.

    Data at ``z*`` is extracted independently unless supplied, so the
    symmetry checks compare two separate computations.
    """
    if d is None:
        d = extract_scattering(p, z)
    if d_conj is None:
        d_conj = extract_scattering(p, d.z.z.conjugate())
    card = ReportCard(tol=tol)
    s = assemble_smatrix(d).s
    eye2 = np.eye(2 * d.q)
    h = cm.adjoint
    card.add("S^H S = I", cm.residual(h(s) @ s, eye2))
    card.add("S S^H = I", cm.residual(s @ h(s), eye2))
    card.add("L(z*) = L(z)^H", cm.residual(d_conj.L, h(d.L)))
    card.add("R(z*) = R(z)^H", cm.residual(d_conj.R, h(d.R)))
    card.add("T_l(z*) = T_r(z)^H", cm.residual(d_conj.T_l, h(d.T_r)))
    card.add("T_r(z*) = T_l(z)^H", cm.residual(d_conj.T_r, h(d.T_l)))
    qm = cm.swap_matrix(d.q)
    card.add("S(z)^H = Q S(z*) Q", cm.residual(h(s), qm @ assemble_smatrix(d_conj).s @ qm))
    for name, computed, expected in wronskian_relations(p, d, d_conj):
        card.add(name, cm.residual(computed, expected))
    return card
