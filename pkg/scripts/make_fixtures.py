"""Regenerate the bundled JSON fixtures in src/crmaps/data."""

from pathlib import Path

import numpy as np

from crmaps import a_alpha, counterexample, generate_prime
from crmaps.io import save_basis, save_matrix

DATA = Path(__file__).resolve().parents[1] / "src" / "crmaps" / "data"


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for k in (2, 3, 4):
        save_matrix(DATA / f"uut{k}.json", counterexample("uut", k), (k, k))
    for k in (3, 4):
        save_matrix(DATA / f"realigned_sum{k}.json", counterexample("realigned_sum", k), (k, k))
    save_matrix(DATA / "invariant_not_ppt3.json", counterexample("invariant_not_ppt", 3), (3, 3))
    save_matrix(DATA / "idid2.json", np.eye(4), (2, 2))
    save_matrix(DATA / "a_alpha_canonical3.json", a_alpha(np.eye(3)), (3, 3))
    ms2 = generate_prime(2)
    save_basis(DATA / "mub2_two_bases.json", 2, ms2.bases[:2])
    ms3 = generate_prime(3)
    save_basis(DATA / "mub3_full.json", 3, ms3.bases)
    save_basis(DATA / "mub3_drop_last.json", 3, ms3.bases[:3])


if __name__ == "__main__":
    main()
