"""Write the reference profiles in demos/profiles/ as JSON config files."""
import argparse
import os

import numpy as np

from jacobi_scatter import models, save_profile
from jacobi_scatter.lattice import CoefficientProfile, free_profile


def reference_profiles():
    yield "free.json", free_profile(2)
    yield "single_defect.json", models.schrodinger_profile({0: [[2.0]]})
    yield "two_defect.json", models.two_defect_profile()
    yield "a_defect_diag_i.json", models.a_defect_profile(np.diag([1j, 1]), metadata={"expect_unequal_det": True})
    yield "a_defect_diag_1pi.json", models.a_defect_profile(np.diag([1 + 1j, 1]), metadata={"expect_unequal_det": True})
    yield "a_defect_upper.json", models.a_defect_profile([[1, 1j], [0, 1]])
    bad_b = np.array([[1.0, 2.0], [0.0, 1.0]])
    yield "non_hermitian_b.json", CoefficientProfile(2, models.FREE_TAIL, b={0: bad_b})


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default=os.path.join(os.path.dirname(__file__), "profiles"))
    args = parser.parse_args()
    os.makedirs(args.dir, exist_ok=True)
    for name, p in reference_profiles():
        save_profile(p, os.path.join(args.dir, name))
        print("wrote", name)


if __name__ == "__main__":
    main()
