"""Determinant identities and the cases where det T_l and det T_r differ.

When every det a(n) is real, det T_l = det T_r.  A single complex entry in
a(m) breaks this: a(m) = diag(i, 1) gives det T_l = -i and det T_r = i.
"""
import numpy as np

from jacobi_scatter import cmatrix as cm
from jacobi_scatter import extract_scattering, make_spectral_grid, models
from jacobi_scatter.transition import determinant_suite


def main():
    for label, a in (("diag(i, 1)", np.diag([1j, 1])), ("diag(1+i, 1)", np.diag([1 + 1j, 1])),
                     ("[[1, i], [0, 1]]", np.array([[1, 1j], [0, 1]]))):
        p = models.a_defect_profile(a)
        sp = make_spectral_grid(3)[0]
        d = extract_scattering(p, sp)
        print(f"a(0) = {label:16s} det T_l = {cm.det(d.T_l):.6f}  det T_r = {cm.det(d.T_r):.6f}")
    p = models.a_defect_profile(np.diag([1 + 1j, 1]), metadata={"expect_unequal_det": True})
    sp = make_spectral_grid(3)[0]
    print()
    print(determinant_suite(p, sp, extract_scattering(p, sp)).table())


if __name__ == "__main__":
    main()
