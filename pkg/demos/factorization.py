"""Cut a profile into fragments and rebuild it.

The transition matrix of the whole lattice is the ordered product of the
fragment transition matrices, and the scattering data of the whole follows
from the right coefficients of the left piece and the left coefficients of
the right piece.
"""
import numpy as np

from jacobi_scatter import cmatrix as cm
from jacobi_scatter import extract_scattering, make_spectral_grid, models
from jacobi_scatter.factorize import compose_many, factorization_check, fragment


def main():
    p = models.random_profile(np.random.default_rng(3), 2, 6, n_min=0)
    cuts = [1, 3]
    for f in fragment(p, cuts):
        print(f"fragment {f.index}: sites {f.interval}, window {f.profile.window}")
    for sp in make_spectral_grid(4, tail=p.tail):
        card = factorization_check(p, cuts, sp)
        d = extract_scattering(p, sp)
        merged = compose_many([extract_scattering(f.profile, sp) for f in fragment(p, cuts)])
        print(f"z = {sp.z:.3f}  product residual {card.max_residual:.2e}  "
              f"composed T_l residual {cm.residual(merged.T_l, d.T_l):.2e}")


if __name__ == "__main__":
    main()
