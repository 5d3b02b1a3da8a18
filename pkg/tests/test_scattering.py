import numpy as np
import pytest

from jacobi_scatter import cmatrix as cm
from jacobi_scatter import models
from jacobi_scatter.errors import DomainError, SingularMatrixError
from jacobi_scatter.lattice import CoefficientProfile, REDUCED_TAIL, free_profile, make_spectral_grid
from jacobi_scatter.scattering import (
    assemble_smatrix,
    extract_scattering,
    from_inverse_blocks,
    identity_suite,
    physical_solutions,
)


def test_free_profile_is_transparent():
    for sp in make_spectral_grid(8):
        d = extract_scattering(free_profile(3), sp)
        assert np.allclose(d.T_l, np.eye(3)) and np.allclose(d.T_r, np.eye(3))
        assert np.abs(d.L).max() < 1e-15 and np.abs(d.R).max() < 1e-15


def test_two_defect_closed_form():
    p = models.two_defect_profile()
    for sp in make_spectral_grid(32, tail=p.tail):
        d = extract_scattering(p, sp)
        ref = models.two_defect_closed_form(sp)
        for k in ("T_l", "T_r", "L", "R"):
            assert cm.residual(getattr(d, k), getattr(ref, k)) < 1e-12
        assert cm.det(d.T_l) == pytest.approx(models.two_defect_det_transmission(sp), abs=1e-12)


def test_single_scalar_defect():
    p = models.schrodinger_profile({0: [[2.0]]})
    for sp in make_spectral_grid(16, tail=p.tail):
        d = extract_scattering(p, sp)
        z = sp.z
        assert d.T_l_inv[0, 0] == pytest.approx(1 - 2 / (z - 1 / z), abs=1e-13)


def test_physical_solutions_have_scattering_asymptotics():
    p = models.random_profile(np.random.default_rng(4), 2, 3, n_min=0)
    sp = make_spectral_grid(4, tail=p.tail)[0]
    d = extract_scattering(p, sp)
    z = sp.z
    psi_l, psi_r = physical_solutions(p, sp, d, -4, 6)
    assert np.allclose(psi_l[5], z**5 * d.T_l)
    assert np.allclose(psi_l[-4], z**-4 * np.eye(2) + z**4 * d.L)
    assert np.allclose(psi_r[-4], z**4 * d.T_r)
    assert np.allclose(psi_r[6], z**-6 * np.eye(2) + z**6 * d.R)


def test_identity_suite_on_ensemble(ensemble):
    worst = 0.0
    for p, _ in ensemble[:60]:
        for sp in make_spectral_grid(4, tail=p.tail):
            card = identity_suite(p, sp)
            assert card.passed, card.table()
            worst = max(worst, card.max_residual)
    assert worst < 1e-9


def test_unitarity_survives_strong_perturbations():
    ens = models.random_ensemble(11, 40, strength=1.0)
    for p, _ in ens:
        for sp in make_spectral_grid(4, tail=p.tail):
            d = extract_scattering(p, sp)
            assert assemble_smatrix(d).unitarity_residual() < 1e-9
            dc = extract_scattering(p, sp.conj)
            assert cm.residual(dc.T_l, d.T_r.conj().T) < 1e-9


def test_exceptional_points_are_refused():
    with pytest.raises(DomainError):
        extract_scattering(models.two_defect_profile(), 1.0)
    with pytest.raises(DomainError):
        extract_scattering(models.two_defect_profile(), -1 + 0j, exclusion_eps=1e-3)


def test_singular_transmission_inverse_is_reported():
    with pytest.raises(SingularMatrixError):
        from_inverse_blocks(None, np.zeros((2, 2)), np.eye(2), np.eye(2), np.eye(2))


def test_conj_partner_matches_independent_extraction():
    p = CoefficientProfile(2, REDUCED_TAIL, a={0: [[1, 0.3j], [0.1, 1.2]]}, b={0: np.eye(2) * 0.4})
    sp = make_spectral_grid(3)[1]
    d = extract_scattering(p, sp)
    dc = extract_scattering(p, sp.conj)
    for k in ("T_l", "T_r", "L", "R"):
        assert cm.residual(getattr(d.conj_partner(), k), getattr(dc, k)) < 1e-13
