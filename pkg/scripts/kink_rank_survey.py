"""Numerical rank of the steady state on kink resonances.

For each chain length and kink number, compares the support of the right
boundary vector with the rank of the assembled state, and cross-checks the
state against the dense fixed point.

    python3 scripts/kink_rank_survey.py
"""

import cmath
import math

import numpy as np

from xxz_ness import assemble_density, krylov_ness, resonant_params, right_vector

GATES = {"easy-plane": (cmath.exp(0.7j), math.exp(0.9)), "easy-axis": (1.4, cmath.exp(1.1j))}


def main():
    print(f"{'regime':<11} {'N':>2} {'m':>2} {'support':>7} {'(m+1)^2':>7} {'rank':>4} {'next eig':>9} {'|mpa-dense|':>11}")
    for regime, (q, lam) in GATES.items():
        for n in (3, 5, 7):
            for m in (1, 2):
                p = resonant_params(n, q, lam, 0.9 + 0.3j, kinks=m)
                rho = assemble_density(p)
                ev = np.sort(np.linalg.eigvalsh((rho + rho.conj().T) / 2))[::-1]
                bound = (m + 1) ** 2
                nxt = ev[bound] if len(ev) > bound else 0.0
                dist = np.linalg.norm(rho - krylov_ness(p).rho)
                print(
                    f"{regime:<11} {n:>2} {m:>2} {right_vector(p).support_bound():>7} {bound:>7} "
                    f"{int(np.sum(ev > 1e-10)):>4} {nxt:>9.1e} {dist:>11.1e}"
                )


if __name__ == "__main__":
    main()
