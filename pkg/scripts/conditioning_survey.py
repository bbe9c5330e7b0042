"""Rounding error of the ansatz against its cancellation factor.

Easy-axis chains with growing q: prints ``condition_estimate`` and the largest
difference between contracted and assembled one-site expectations, and the
right-boundary residual up to N = 15.

    python3 scripts/conditioning_survey.py
"""

import cmath

import numpy as np

from xxz_ness import SIGMA_PLUS, CircuitParams, TwoReset, assemble_density, condition_estimate, contract_expectation
from xxz_ness.dense import local_expectation
from xxz_ness.verify import right_boundary_residual


def main():
    eps = np.finfo(float).eps
    print(f"{'q':>4} {'N':>2} {'kappa':>9} {'kappa*eps':>9} {'error':>9}")
    for q in (1.2, 1.5, 2.0, 3.0):
        for n in (5, 7, 9):
            p = CircuitParams(n, q, cmath.exp(1j), TwoReset(1.0, 1.0))
            kappa = condition_estimate(p)
            rho = assemble_density(p)
            err = max(
                abs(contract_expectation(p, SIGMA_PLUS, s) - local_expectation(rho, SIGMA_PLUS, s)) for s in (1, n // 2 + 1, n)
            )
            print(f"{q:>4} {n:>2} {kappa:>9.1e} {kappa * eps:>9.1e} {err:>9.1e}")
    print()
    print(f"{'q':>4} " + " ".join(f"N={n:<6}" for n in range(3, 17, 2)))
    for q in (1.2, 1.4, 1.7, 2.0):
        res = [right_boundary_residual(CircuitParams.easy_axis(n, q, 1.1, 0.6 + 0.6j, -1.2)).residual for n in range(3, 17, 2)]
        print(f"{q:>4} " + " ".join(f"{r:<8.1e}" for r in res))


if __name__ == "__main__":
    main()
