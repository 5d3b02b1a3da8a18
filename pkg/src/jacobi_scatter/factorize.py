"""Fragmentation of the lattice and factorization of the transition matrices.

Cutting the lattice after sites ``m_1 < ... < m_P`` gives fragments
``(-inf, m_1]``, ``[m_1 + 1, m_2]``, ..., ``[m_P + 1, inf)``.  Fragment ``j``
keeps the parent's coefficients on its own sites and takes the tail values
elsewhere, so the coupling ``a(m + 1)`` across a cut belongs to the fragment
on the right.  The left transition matrix factors as ``Lambda_1 ... Lambda_{P+1}``
and the right one as ``Sigma_{P+1} ... Sigma_1``.
"""
from dataclasses import dataclass

import numpy as np

from . import cmatrix as cm
from .errors import InvalidPartitionError, NotPointDefectError, SingularMatrixError
from .jost import jost_left, jost_right
from .lattice import CoefficientProfile, SpectralPoint
from .report import ReportCard
from .scattering import MAX_TRANSMISSION_COND, ScatteringData, extract_scattering, from_inverse_blocks
from .transition import build_frames, build_transition


@dataclass(frozen=True)
class Partition:
    """Strictly increasing cut points ``m_1 < ... < m_P`` with ``P >= 1``."""

    cuts: tuple

    def __post_init__(self):
        cuts = tuple(self.cuts)
        if not cuts:
            raise InvalidPartitionError("a partition needs at least one cut")
        if any(int(c) != c for c in cuts):
            raise InvalidPartitionError(f"cuts must be integers, got {cuts}")
        cuts = tuple(int(c) for c in cuts)
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise InvalidPartitionError(f"cuts must be strictly increasing, got {cuts}")
        object.__setattr__(self, "cuts", cuts)

    @property
    def P(self):
        return len(self.cuts)

    def intervals(self):
        """Site intervals of the fragments; ``None`` marks an infinite end."""
        lows = (None,) + tuple(c + 1 for c in self.cuts)
        highs = self.cuts + (None,)
        return list(zip(lows, highs))


@dataclass(frozen=True)
class Fragment:
    parent: CoefficientProfile
    index: int
    interval: tuple
    profile: CoefficientProfile


def _inside(n, lo, hi):
    return (lo is None or n >= lo) and (hi is None or n <= hi)


def fragment(p, part):
    """Split ``p`` into the ``P + 1`` fragments of ``part``."""
    if not isinstance(part, Partition):
        part = Partition(tuple(part))
    out = []
    for j, (lo, hi) in enumerate(part.intervals(), start=1):
        sites = {name: {n: m for n, m in p.stored(name).items() if _inside(n, lo, hi)} for name in "abw"}
        w_lo = p.n_min if lo is None else max(lo, p.n_min)
        w_hi = p.n_max if hi is None else min(hi, p.n_max)
        window = (w_lo, w_hi) if w_hi >= w_lo - 1 else (w_lo, w_lo - 1)
        prof = CoefficientProfile(p.q, p.tail, window=window, metadata=p.metadata, **sites)
        out.append(Fragment(p, j, (lo, hi), prof))
    return out


def _ordered_product(ms):
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def fragment_transitions(p, part, z):
    """``(Lambda_j, Sigma_j)`` for each fragment, in fragment order."""
    return [build_transition(extract_scattering(f.profile, z)) for f in fragment(p, part)]


def factorization_check(p, part, z, tol=1e-8):
    """Compare the parent transition matrices with the ordered fragment products."""
    if not isinstance(part, Partition):
        part = Partition(tuple(part))
    lam, sig = build_transition(extract_scattering(p, z))
    pieces = fragment_transitions(p, part, z)
    lam_prod = _ordered_product([l.m for l, _ in pieces])
    sig_prod = _ordered_product([s.m for _, s in reversed(pieces)])
    card = ReportCard(tol=tol)
    card.add("Lambda = Lambda_1 ... Lambda_{P+1}", cm.op_norm(lam.m - lam_prod))
    card.add("Sigma = Sigma_{P+1} ... Sigma_1", cm.op_norm(sig.m - sig_prod))
    return card


def _checked_inv(m, label):
    c = cm.cond(m)
    if not c <= MAX_TRANSMISSION_COND:
        raise SingularMatrixError(f"{label} has condition number {c:.3e}")
    return cm.inverse(m)


def compose_scattering(d1, d2, d1_inv=None, d2_inv=None):
    """Full-line scattering data from a left fragment ``d1`` and a right fragment ``d2``.

    Only the right coefficients of ``d1`` and the left coefficients of ``d2``
    enter.  Values at ``1/z`` come from ``d1_inv``/``d2_inv`` when given and
    from the conjugation symmetries otherwise.
    """
    if d1_inv is None:
        d1_inv = d1.conj_partner()
    if d2_inv is None:
        d2_inv = d2.conj_partner()
    h = cm.adjoint
    eye = cm.identity(d1.q)
    k = _checked_inv(eye - d1.R @ d2.L, "I - R_1 L_2")
    k_swapped = _checked_inv(eye - d2.L @ d1.R, "I - L_2 R_1")
    tr1_inv_h = h(d1_inv.T_r)
    T_l = d2.T_l @ k @ tr1_inv_h
    L = cm.inverse(h(d1.T_r)) @ (d2.L - d1_inv.R) @ k @ tr1_inv_h
    T_r = d1.T_r @ k_swapped @ h(d2_inv.T_l)
    R = d2.T_l @ k @ (d1.R - d2_inv.L) @ d2_inv.T_l_inv
    return ScatteringData(d1.z, T_l, T_r, L, R)


def compose_many(datas):
    """Left-to-right fold of :func:`compose_scattering` over fragment data."""
    out = datas[0]
    for d in datas[1:]:
        out = compose_scattering(out, d)
    return out


def composition_identities(d, d_conj, tol=1e-9):
    """Intermediate identities used when composing fragments.

    ``-T_l^{-1} R = L(z*) T_l(z*)^{-1}`` and
    ``L L^H (T_r^H)^{-1} + T_r = (T_r^H)^{-1}``.
    """
    h = cm.adjoint
    card = ReportCard(tol=tol)
    card.add("-T_l^-1 R = L(z*) T_l(z*)^-1", cm.residual(-d.T_l_inv @ d.R, d_conj.L @ d_conj.T_l_inv))
    trh_inv = cm.inverse(h(d.T_r))
    card.add("L L^H (T_r^H)^-1 + T_r = (T_r^H)^-1", cm.residual(d.L @ h(d.L) @ trh_inv + d.T_r, trh_inv))
    return card


# -- single-site defects --------------------------------------------------------


def defect_site(p):
    """The one site carrying the perturbation, or ``NotPointDefectError``.

    ``a(m + 1)`` has to equal the tail value, because a point defect at ``m``
    perturbs only ``a(m)``, ``b(m)`` and ``w(m)``.
    """
    t = p.tail
    eye = cm.identity(p.q)
    bad = set()
    for n in p.a_sites():
        if not np.array_equal(p.a(n), t.a_inf * eye):
            bad.add(n)
    for n in p.sites():
        if not (np.array_equal(p.b(n), t.b_inf * eye) and np.array_equal(p.w(n), t.w_inf * eye)):
            bad.add(n)
    if len(bad) > 1:
        raise NotPointDefectError(f"perturbation occupies sites {sorted(bad)}")
    if bad:
        return bad.pop()
    return p.n_min


def point_defect_q(p, m):
    """The matrices ``q1, q2, q3`` of a point defect at ``m``."""
    t = p.tail
    a, b, w = p.a(m), p.b(m), p.w(m)
    a_inv = cm.inverse(a)
    wa = w @ a_inv
    q1 = (t.a_inf / t.w_inf) * wa
    q2 = (t.b_inf / t.w_inf) * wa - b @ a_inv
    q3 = (t.a_inf / t.w_inf) * wa - cm.adjoint(a) / t.a_inf
    return q1, q2, q3


def point_defect_inverse_blocks(p, z):
    """``T_l^{-1}, L T_l^{-1}, T_r^{-1}, R T_r^{-1}`` for a single-site defect in closed form."""
    z = z.z if isinstance(z, SpectralPoint) else complex(z)
    m = defect_site(p)
    t = p.tail
    h = cm.adjoint
    q1, q2, q3 = point_defect_q(p, m)
    a_inv = cm.inverse(p.a(m))
    ah_inv = cm.inverse(h(p.a(m)))
    zi = 1 / z
    den = zi - z
    T_r_inv = (q1 * zi + q2 + (q3 - t.a_inf * a_inv) * z) / den
    R_T_r_inv = ((q1 - t.a_inf * a_inv) * z ** (-2 * m - 1) + q2 * z ** (-2 * m)
                 + q3 * z ** (-2 * m + 1)) / (-den)
    T_l_inv = (h(q1) * zi + h(q2) + (h(q3) - t.a_inf * ah_inv) * z) / den
    L_T_l_inv = ((h(q1) - t.a_inf * ah_inv) * z ** (2 * m + 1) + h(q2) * z ** (2 * m)
                 + h(q3) * z ** (2 * m - 1)) / (-den)
    return T_l_inv, L_T_l_inv, T_r_inv, R_T_r_inv


def point_defect_closed_form(p, z):
    """Scattering data of a single-site defect without propagating any solution.

    Raises
    ------
    NotPointDefectError
        If the perturbation touches more than one site.
    """
    if not isinstance(z, SpectralPoint):
        z = SpectralPoint.at(z, p.tail)
    return from_inverse_blocks(z, *point_defect_inverse_blocks(p, z.z))


# -- Jost solutions of two fragments ----------------------------------------------


def _plane_pair(z, n, c_out, c_in):
    return z**n * c_out + z ** (-n) * c_in


def fragment_jost_relations(p, m, z, tol=1e-9):
    """Residuals relating the Jost solutions of the two fragments at cut ``m`` to the parent's."""
    z = z.z if isinstance(z, SpectralPoint) else complex(z)
    p1, p2 = (f.profile for f in fragment(p, Partition((m,))))
    d = extract_scattering(p, z)
    d1 = extract_scattering(p1, z)
    d2 = extract_scattering(p2, z)
    lo = min(p.n_min, m) - 2
    hi = max(p.n_max, m) + 3
    fr, fl = jost_right(p, z, lo, hi), jost_left(p, z, lo, hi)
    fr1, fl2 = jost_right(p1, z, lo, hi), jost_left(p2, z, lo, hi)
    a_m1 = p.a(m + 1) / p.tail.a_inf
    card = ReportCard(tol=tol)
    for n in range(lo, m + 1):
        card.add("f_r1 = f_r left of the cut", cm.residual(fr1[n], fr[n]))
    card.add("f_r1(m+1) = a(m+1)/a_inf f_r(m+1)", cm.residual(fr1[m + 1], a_m1 @ fr[m + 1]))
    for n in range(m, hi + 1):
        card.add("f_r1 plane wave right of the cut",
                 cm.residual(fr1[n], _plane_pair(z, n, d1.R @ d1.T_r_inv, d1.T_r_inv)))
        card.add("f_l2 = f_l right of the cut", cm.residual(fl2[n], fl[n]))
    for n in range(lo, m + 1):
        card.add("f_l2 plane wave left of the cut",
                 cm.residual(fl2[n], _plane_pair(z, n, d2.T_l_inv, d2.L @ d2.T_l_inv)))
    card.add("a(m+1)/a_inf f_l2(m+1) plane wave",
             cm.residual(a_m1 @ fl2[m + 1], _plane_pair(z, m + 1, d2.T_l_inv, d2.L @ d2.T_l_inv)))

    lam2, _ = build_transition(d2)
    _, sig1 = build_transition(d1)
    eye, o = cm.identity(p.q), cm.zeros(p.q)
    scale = cm.block2(eye, o, o, p.tail.a_inf * eye)
    waves = np.kron(np.array([[z**m, z ** (-m)], [z ** (m + 1), z ** (-m - 1)]]), eye)
    right = cm.block2(eye, d.R @ d.T_r_inv, o, d.T_r_inv)
    left = cm.block2(d.T_l_inv, o, d.L @ d.T_l_inv, eye)
    g = build_frames(p, z, m).G
    g_a = scale @ waves @ lam2.m @ right
    g_b = scale @ waves @ sig1.m @ left
    card.add("G(m) via Lambda_2", cm.residual(g, g_a))
    card.add("G(m) via Sigma_1", cm.residual(g, g_b))
    card.add("G(m) two forms agree", cm.residual(g_a, g_b))
    return card
