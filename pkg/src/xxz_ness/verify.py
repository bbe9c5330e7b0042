"""Numerical certificates for the exchange relations, boundary equations and
fixed-point property of the ansatz.

Every residual is a max-norm divided by the max-norm of the left-hand operand,
except the density-operator residuals, which are Frobenius norms of
trace-normalized operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import CircuitParams, build_gate
from .dense import even_half, full_cycle, krylov_ness, odd_half, power_iterate_ness
from .lax import Sign, build_lax, double_lax_for, left_vector, right_vector
from .mpa import Parity, assemble_density

DEFAULT_WINDOW = range(0, 5)

THRESHOLDS = {
    "rll": 1e-12,
    "rll_star": 1e-12,
    "double_rll": 1e-12,
    "left_boundary": 1e-12,
    "right_boundary": 1e-11,
    "fixed_point": 1e-10,
    "oracle_agreement": 1e-8,
}


@dataclass
class ResidualReport:
    name: str
    residual: float
    params_echo: object = None
    window: tuple = field(default=())

    @property
    def threshold(self):
        return THRESHOLDS.get(self.name.split("[")[0])

    @property
    def passed(self):
        return self.threshold is not None and self.residual < self.threshold

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<28s} residual={self.residual:.3e}  threshold={self.threshold:.0e}  {status}"


def _rel(diff, ref):
    scale = np.max(np.abs(ref))
    return float(np.max(np.abs(diff)) / scale) if scale > 0 else float(np.max(np.abs(diff)))


def _pair_product(X, Y):
    """Aux product, physical tensor product of two auxiliary-dense Lax arrays."""
    P = np.einsum("jmab,mkcd->jkacbd", X, Y, optimize=True)
    return P.reshape(X.shape[0], Y.shape[1], 4, 4)


def rll_from(gate, lp_n, lm_n1, lm_n, lp_n1, window):
    """``max |U L+_n L-_{n+1} - L-_n L+_{n+1} U|`` over aux elements in ``window``."""
    w = list(window)
    lhs = np.einsum("ab,jkbc->jkac", gate, _pair_product(lp_n.to_dense(), lm_n1.to_dense()))
    rhs = np.einsum("jkab,bc->jkac", _pair_product(lm_n.to_dense(), lp_n1.to_dense()), gate)
    sel = np.ix_(w, w)
    return _rel(lhs[sel] - rhs[sel], lhs[sel])


def rll_residual(q, lam, zeta, n, window=DEFAULT_WINDOW, starred=False, gate=None):
    window = tuple(window)
    J = max(window) + 3
    U = build_gate(q, lam) if gate is None else gate
    plus, minus = ("+*", "-*") if starred else ("+", "-")
    res = rll_from(
        U,
        build_lax(plus, n, q, lam, zeta, J),
        build_lax(minus, n + 1, q, lam, zeta, J),
        build_lax(minus, n, q, lam, zeta, J),
        build_lax(plus, n + 1, q, lam, zeta, J),
        window,
    )
    name = "rll_star" if starred else "rll"
    return ResidualReport(f"{name}[n={n}]", res, (q, lam, zeta), window)


def _aux_dense_double(D):
    """Double Lax as ``(K, K, 2, 2)`` with replica pairs flattened, ``K = (J+1)^2``."""
    J = D.j_max
    out = np.zeros((J + 1, J + 1, J + 1, J + 1, 2, 2), dtype=complex)
    j = np.arange(J)
    for s in (0, 1):
        for t in (0, 1):
            out[j[:, None], j[None, :], (j + s)[:, None], (j + t)[None, :]] = D.blocks[:, :, s, t]
    K = (J + 1) ** 2
    return out.reshape(K, K, 2, 2)


def double_rll_residual(params, n, window=DEFAULT_WINDOW, gate=None):
    """``max |U LL+_n LL-_{n+1} U^dag - LL-_n LL+_{n+1}|`` on aux pairs in ``window``."""
    window = tuple(window)
    J = max(window) + 3
    U = params.gate() if gate is None else gate
    lax = {(sg, m): _aux_dense_double(double_lax_for(params, sg, m, J)) for sg in Sign for m in (n, n + 1)}
    lhs = _pair_product(lax[Sign.PLUS, n], lax[Sign.MINUS, n + 1])
    rhs = _pair_product(lax[Sign.MINUS, n], lax[Sign.PLUS, n + 1])
    J1 = J + 1
    lhs = np.einsum("ab,jkbc,dc->jkad", U, lhs, U.conj())
    idx = [a * J1 + b for a in window for b in window]
    sel = np.ix_(idx, idx)
    return ResidualReport(f"double_rll[n={n}]", _rel(lhs[sel] - rhs[sel], lhs[sel]), params, window)


def _kraus_sandwich(D, kraus):
    return D.map_physical(lambda b: sum(np.einsum("ab,...bc,cd->...ad", k.conj().T, b, k) for k in kraus))


def _unitary_sandwich(D, V):
    return D.map_physical(lambda b: np.einsum("ab,...bc,dc->...ad", V, b, V.conj()))


def _row_times(lv, D):
    """``<L| D`` as an aux row ``out[j, j', 2, 2]``."""
    J = lv.shape[0]
    out = np.zeros((J + 1, J + 1, 2, 2), dtype=complex)
    for s in (0, 1):
        for t in (0, 1):
            out[s : s + J, t : t + J] += lv[:, :, None, None] * D.blocks[:J, :J, s, t]
    return out


def _times_col(D, rv, rows):
    """``(D |R>)[j, j']`` for ``j, j' < rows``."""
    J = rv.shape[0]
    padded = np.zeros((J + 1, J + 1), dtype=complex)
    padded[:J, :J] = rv
    out = np.zeros((rows, rows, 2, 2), dtype=complex)
    for s in (0, 1):
        for t in (0, 1):
            out += D.blocks[:rows, :rows, s, t] * padded[s : s + rows, t : t + rows, None, None]
    return out


def left_boundary_residual(params, left=None):
    lv = (left or left_vector(params)).coeffs
    J = lv.shape[0]
    plus = double_lax_for(params, Sign.PLUS, 1, J)
    minus = _kraus_sandwich(double_lax_for(params, Sign.MINUS, 1, J), params.left_kraus())
    lhs = _row_times(lv, plus)
    res = _rel(lhs - _row_times(lv, minus), lhs)
    return ResidualReport("left_boundary", res, params, tuple(range(J + 1)))


def right_boundary_residual(params, right=None):
    """Checked on aux indices ``0..N``: the only ones reached by
    ``<L| LL_1 ... LL_{N-1}``."""
    N = params.n_sites
    rv = (right or right_vector(params)).coeffs
    J = rv.shape[0]
    minus = double_lax_for(params, Sign.MINUS, N, J)
    plus = double_lax_for(params, Sign.PLUS, N, J)
    chan = params.right_channel()
    mapped = _unitary_sandwich(plus, chan) if params.hybrid else _kraus_sandwich(plus, chan)
    rows = N + 1
    lhs = _times_col(minus, rv, rows)
    res = _rel(lhs - _times_col(mapped, rv, rows), lhs)
    return ResidualReport("right_boundary", res, params, tuple(range(rows)))


def fixed_point_residual(params):
    """Largest Frobenius violation of ``rho' = M_e(rho)``, ``rho = M_o(rho')``
    and ``rho = M(rho)``."""
    rho = assemble_density(params, Parity.CYCLE)
    rho_h = assemble_density(params, Parity.HALF_CYCLE)
    res = max(
        np.linalg.norm(even_half(rho, params) - rho_h),
        np.linalg.norm(odd_half(rho_h, params) - rho),
        np.linalg.norm(full_cycle(rho, params) - rho),
    )
    return ResidualReport("fixed_point", float(res), params)


def oracle_agreement(params, tol=1e-12, max_iter=None, method=None):
    """Frobenius distance between the ansatz and a brute-force fixed point.

    ``method`` is ``"power"`` (plain iteration of the cycle) or ``"krylov"``
    (leading eigenvector). The default uses Krylov in hybrid mode, where the
    cycle typically has a second eigenvalue within 1e-5 of one.
    """
    if method is None:
        method = "krylov" if params.hybrid else "power"
    if method == "krylov":
        oracle = krylov_ness(params)
    elif method == "power":
        if max_iter is None:
            max_iter = 2000 * params.n_sites
        oracle = power_iterate_ness(params, tol=tol, max_iter=max_iter)
    else:
        raise ValueError(f"unknown oracle method {method!r}")
    rho = assemble_density(params, Parity.CYCLE)
    return ResidualReport("oracle_agreement", float(np.linalg.norm(rho - oracle.rho)), params)


def run_suite(params: CircuitParams, window=DEFAULT_WINDOW, dense=True):
    """All identity checks for one parameter set."""
    reports = []
    for n in (1, 2, params.n_sites - 1):
        reports.append(rll_residual(params.q, params.lam, params.z, n, window))
        reports.append(rll_residual(params.q, params.lam, params.z, n, window, starred=True))
        reports.append(double_rll_residual(params, n, window))
    reports.append(left_boundary_residual(params))
    reports.append(right_boundary_residual(params))
    if dense and params.n_sites <= 9:
        reports.append(fixed_point_residual(params))
    return reports

