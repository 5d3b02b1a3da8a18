"""Scattering by a two-site matrix potential, compared with its rational closed form.

Run:
    python3 demos/two_defect_scattering.py
"""
import numpy as np

from jacobi_scatter import cmatrix as cm
from jacobi_scatter import extract_scattering, identity_suite, make_spectral_grid, models


def main():
    p = models.two_defect_profile()
    print(p)
    print(f"{'z':>24}  {'|T_l - exact|':>14}  {'|R - exact|':>12}  {'S^H S - I':>10}")
    for sp in make_spectral_grid(8, tail=p.tail):
        d = extract_scattering(p, sp)
        ref = models.two_defect_closed_form(sp)
        s = np.block([[d.T_l, d.R], [d.L, d.T_r]])
        print(f"{sp.z:24.4f}  {cm.residual(d.T_l, ref.T_l):14.2e}  {cm.residual(d.R, ref.R):12.2e}  "
              f"{cm.residual(s.conj().T @ s, np.eye(4)):10.2e}")
    sp = make_spectral_grid(8, tail=p.tail)[0]
    print()
    print(identity_suite(p, sp).table())


if __name__ == "__main__":
    main()
