import numpy as np
import pytest

from jacobi_scatter import cmatrix as cm
from jacobi_scatter import models
from jacobi_scatter.lattice import make_spectral_grid
from jacobi_scatter.scattering import extract_scattering, suite_sites
from jacobi_scatter.transition import (
    build_frames,
    build_frames_over,
    build_transition,
    determinant_suite,
    inverse_checks,
    relate_frames,
    scattering_from_transition,
)


def test_two_defect_transition_closed_form():
    p = models.two_defect_profile()
    for sp in make_spectral_grid(16, tail=p.tail):
        lam, _ = build_transition(extract_scattering(p, sp))
        assert cm.residual(lam.m, models.two_defect_transition(sp)) < 1e-12


def test_point_defect_transition_closed_form():
    v = np.array([[0.5, 1j], [-1j, -0.3]])
    for m in (-2, 0, 3):
        p = models.schrodinger_profile({m: v})
        for sp in make_spectral_grid(8, tail=p.tail):
            lam, _ = build_transition(extract_scattering(p, sp))
            ref = models.schrodinger_point_reference(v, m, sp)
            assert cm.residual(lam.m, ref["Lambda"]) < 1e-12


def test_adjoint_and_two_point_forms_agree(ensemble):
    for p, _ in ensemble[:40]:
        for sp in make_spectral_grid(4, tail=p.tail):
            d = extract_scattering(p, sp)
            d_inv = extract_scattering(p, sp.conj)
            lam, sig = build_transition(d)
            lam2, sig2 = build_transition(d, d_inv)
            assert cm.residual(lam.m, lam2.m) < 1e-9
            assert cm.residual(sig.m, sig2.m) < 1e-9


def test_scattering_round_trip_through_transition(ensemble):
    for p, _ in ensemble[:40]:
        sp = make_spectral_grid(3, tail=p.tail)[1]
        d = extract_scattering(p, sp)
        back = scattering_from_transition(build_transition(d)[0], sp)
        for k in ("T_l", "T_r", "L", "R"):
            assert cm.residual(getattr(back, k), getattr(d, k)) < 1e-10


def test_frames_and_inverses(ensemble):
    for p, _ in ensemble[:40]:
        for sp in make_spectral_grid(2, tail=p.tail):
            d = extract_scattering(p, sp)
            lam, sig = build_transition(d)
            for n in suite_sites(p):
                f = build_frames(p, sp, n)
                fc = build_frames(p, sp.conj, n)
                card = relate_frames(f, lam, sig, d, fc)
                card.extend(inverse_checks(f, p, sp, d))
                assert card.passed, card.table()


def test_determinant_suite_on_ensemble(ensemble):
    for p, _ in ensemble[:60]:
        for sp in make_spectral_grid(4, tail=p.tail):
            card = determinant_suite(p, sp, extract_scattering(p, sp))
            assert card.passed, card.table()


def test_real_det_a_gives_unit_transition_determinants():
    p = models.two_defect_profile()
    for sp in make_spectral_grid(8, tail=p.tail):
        d = extract_scattering(p, sp)
        lam, sig = build_transition(d)
        assert lam.det == pytest.approx(1, abs=1e-12)
        assert sig.det == pytest.approx(1, abs=1e-12)
        card = determinant_suite(p, sp, d)
        assert "det T_l = det T_r" in card.names()


def test_frames_over_matches_single_site():
    p = models.two_defect_profile()
    sp = make_spectral_grid(3)[0]
    many = build_frames_over(p, sp, range(-2, 4))
    for f in many:
        one = build_frames(p, sp, f.n)
        assert np.allclose(one.G, f.G)
