"""Brute-force density-operator evolution of the brickwork channel (N <= 9).

Sites are numbered 1..N; site 1 is the most significant tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigs

from .algebra import KrausPair, bloch_vector
from .errors import DimensionMismatch, IndexOutOfRange, MemoryGuard, NoConvergence

MAX_DENSE_SITES = 9


def n_sites_of(state):
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if state.shape != (dim, dim) or 1 << n != dim:
        raise DimensionMismatch(f"state of shape {state.shape} is not a 2^N x 2^N operator")
    return n


def maximally_mixed(n_sites):
    if n_sites > MAX_DENSE_SITES:
        raise MemoryGuard(f"dense operators limited to N <= {MAX_DENSE_SITES}")
    d = 2**n_sites
    return np.eye(d, dtype=complex) / d


def conjugate_local(state, op, first_site):
    """``X rho X^dag`` with ``X`` acting on ``k`` consecutive sites from ``first_site``."""
    n = n_sites_of(state)
    k = op.shape[0].bit_length() - 1
    if first_site < 1 or first_site + k - 1 > n:
        raise IndexOutOfRange(f"sites {first_site}..{first_site + k - 1} outside 1..{n}")
    left = 2 ** (first_site - 1)
    right = 2 ** (n - first_site - k + 1)
    loc = 2**k
    t = state.reshape(left, loc, right, left, loc, right)
    t = np.einsum("ab,ibjklm->iajklm", op, t)
    t = np.einsum("iajkbm,cb->iajkcm", t, op.conj())
    return t.reshape(state.shape)


def apply_two_site_gate(state, gate, left_site):
    return conjugate_local(state, gate, left_site)


def apply_boundary_channel(state, channel, site):
    """Kraus pair (``sum K^dag rho K``) or 2x2 unitary (``V rho V^dag``) on one site."""
    n = n_sites_of(state)
    if site not in (1, n):
        raise IndexOutOfRange(f"boundary channel must act on site 1 or {n}, got {site}")
    if isinstance(channel, KrausPair):
        return sum(conjugate_local(state, k.conj().T, site) for k in channel)
    return conjugate_local(state, np.asarray(channel, dtype=complex), site)


def even_half(state, params):
    """Gates on (1,2),(3,4),...,(N-2,N-1), then the right boundary map on site N."""
    _check(state, params)
    U = params.gate()
    for i in range(1, params.n_sites - 1, 2):
        state = apply_two_site_gate(state, U, i)
    return apply_boundary_channel(state, params.right_channel(), params.n_sites)


def odd_half(state, params):
    """Left reset on site 1, then gates on (2,3),(4,5),...,(N-1,N)."""
    _check(state, params)
    U = params.gate()
    state = apply_boundary_channel(state, params.left_kraus(), 1)
    for i in range(2, params.n_sites, 2):
        state = apply_two_site_gate(state, U, i)
    return state


def full_cycle(state, params):
    return odd_half(even_half(state, params), params)


def _check(state, params):
    if n_sites_of(state) != params.n_sites:
        raise DimensionMismatch(f"state has {n_sites_of(state)} sites, params expect {params.n_sites}")


@dataclass
class NessResult:
    rho: np.ndarray
    rho_half: np.ndarray
    iterations: int
    residual: float


def _embed(op, first_site, n):
    k = op.shape[0].bit_length() - 1
    return np.kron(np.kron(np.eye(2 ** (first_site - 1)), op), np.eye(2 ** (n - first_site - k + 1)))


def cycle_kraus(params):
    """Dense operators ``X`` with ``full_cycle(rho) = sum X rho X^dag``.

    Built from the same layers as ``even_half``/``odd_half``; one operator per
    pair of boundary Kraus matrices (two in hybrid mode, four otherwise).
    """
    n = params.n_sites
    if n > MAX_DENSE_SITES:
        raise MemoryGuard(f"dense operators limited to N <= {MAX_DENSE_SITES}")
    U = params.gate()
    even = np.eye(2**n, dtype=complex)
    for i in range(1, n - 1, 2):
        even = _embed(U, i, n) @ even
    odd = np.eye(2**n, dtype=complex)
    for i in range(2, n, 2):
        odd = _embed(U, i, n) @ odd
    right = params.right_channel()
    rights = [k.conj().T for k in right] if isinstance(right, KrausPair) else [np.asarray(right)]
    halves = [_embed(r, n, n) @ even for r in rights]
    lefts = [odd @ _embed(k.conj().T, 1, n) for k in params.left_kraus()]
    return [a @ b for a in lefts for b in halves]


def power_iterate_ness(params, tol=1e-12, max_iter=None):
    """Iterate the full cycle from the maximally mixed state to its fixed point.

    Stops when one cycle changes the state by less than ``tol`` (Frobenius).
    ``rho_half`` is the intermediate ``M_e(rho)`` of the converged cycle.
    """
    if max_iter is None:
        max_iter = 200 * params.n_sites
    ops = cycle_kraus(params)
    adj = [X.conj().T for X in ops]
    rho = maximally_mixed(params.n_sites)
    residual = np.inf
    for it in range(1, max_iter + 1):
        new = sum(X @ rho @ Xd for X, Xd in zip(ops, adj))
        residual = np.linalg.norm(new - rho)
        rho = new
        if residual < tol:
            rho = rho / np.trace(rho)
            return NessResult(rho, even_half(rho, params), it, float(residual))
    raise NoConvergence(max_iter, float(residual))


def krylov_ness(params, tol=0.0, ncv=30):
    """Fixed point of the full cycle as its leading eigenvector (ARPACK).

    Same limit as ``power_iterate_ness``, but usable when the cycle has a second
    eigenvalue very close to one (weak coupling, or hybrid mode where only the
    left boundary dissipates). The eigenvector is then accurate to roughly the
    eigen-residual divided by that gap. ``iterations`` counts cycle applications.
    """
    ops = cycle_kraus(params)
    adj = [X.conj().T for X in ops]
    d = 2**params.n_sites
    calls = 0

    def matvec(x):
        nonlocal calls
        calls += 1
        r = x.reshape(d, d)
        return sum(X @ r @ Xd for X, Xd in zip(ops, adj)).reshape(-1)

    if d == 2:
        # ARPACK needs k < dimension - 1; a 4x4 superoperator is solved directly
        S = np.stack([matvec(e) for e in np.eye(4, dtype=complex)], axis=1)
        vals, vecs = np.linalg.eig(S)
    else:
        op = LinearOperator((d * d, d * d), matvec=matvec, dtype=complex)
        v0 = maximally_mixed(params.n_sites).reshape(-1)
        try:
            vals, vecs = eigs(op, k=2, which="LM", tol=tol, ncv=min(ncv, d * d - 1), v0=v0)
        except ArpackNoConvergence as err:
            raise NoConvergence(calls, float("nan")) from err
    rho = vecs[:, np.argmin(np.abs(vals - 1))].reshape(d, d)
    rho = rho / np.trace(rho)
    residual = float(np.linalg.norm(full_cycle(rho, params) - rho))
    return NessResult(rho, even_half(rho, params), calls, residual)


def reduced_site(state, site):
    """Single-site reduced density matrix."""
    n = n_sites_of(state)
    if not 1 <= site <= n:
        raise IndexOutOfRange(f"site {site} outside 1..{n}")
    t = state.reshape(2 ** (site - 1), 2, 2 ** (n - site), 2 ** (site - 1), 2, 2 ** (n - site))
    return np.einsum("iajibj->ab", t)


def local_expectation(state, obs, site):
    return complex(np.trace(np.asarray(obs) @ reduced_site(state, site)))


def site_bloch_vectors(state):
    return np.array([bloch_vector(reduced_site(state, s)) for s in range(1, n_sites_of(state) + 1)])
