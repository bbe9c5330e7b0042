"""Inhomogeneous Lax operators, their two-replica products, and boundary vectors.

Auxiliary operators are upper bidiagonal in the auxiliary index, so they are
stored in banded form: ``blocks[j, s]`` is the 2x2 physical block at auxiliary
position ``(j, j + s)`` for ``s in {0, 1}``. Two-replica objects carry one such
pair of indices per replica.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import Regime, Side
from .errors import PoleInB, PoleInG, ZeroStereoCoord


class LaxKind(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    PLUS_STAR = "+*"
    MINUS_STAR = "-*"

    @property
    def starred(self):
        return {LaxKind.PLUS: LaxKind.PLUS_STAR, LaxKind.MINUS: LaxKind.MINUS_STAR}[self]


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def flip(self):
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @property
    def kind(self):
        return LaxKind(self.value)


def site_matrix_A(n, q, zeta):
    """Rank-one site matrix ``[[1, -q^-n/zeta], [q^n zeta, -1]]``."""
    if zeta == 0:
        raise ZeroStereoCoord("Lax parameter z must be nonzero")
    qn = complex(q) ** n
    return np.array([[1.0, -1.0 / (qn * zeta)], [qn * zeta, -1.0]], dtype=complex)


def _D(lam):
    return np.diag([lam, 1.0]).astype(complex)


def _E(lam):
    return np.diag([1.0, lam]).astype(complex)


@dataclass
class SiteLax:
    site: int
    kind: LaxKind
    blocks: np.ndarray  # (J, 2, 2, 2)

    @property
    def j_max(self):
        return self.blocks.shape[0]

    def block(self, j_out, j_in):
        s = j_in - j_out
        if s in (0, 1) and 0 <= j_out < self.j_max:
            return self.blocks[j_out, s]
        return np.zeros((2, 2), dtype=complex)

    def to_dense(self):
        """Auxiliary-dense array ``(J+1, J+1, 2, 2)``; the last row is empty."""
        J = self.j_max
        out = np.zeros((J + 1, J + 1, 2, 2), dtype=complex)
        idx = np.arange(J)
        out[idx, idx] = self.blocks[:, 0]
        out[idx, idx + 1] = self.blocks[:, 1]
        return out


def build_lax(kind, n, q, lam, zeta, j_max):
    """Lax operator of the given kind at site ``n`` truncated to ``j_max`` aux states.

    Starred kinds are obtained by numerically conjugate-transposing the
    concrete blocks.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    kind = LaxKind(kind)
    D, E = _D(lam), _E(lam)
    blocks = np.empty((j_max, 2, 2, 2), dtype=complex)
    for j in range(j_max):
        A = site_matrix_A(n - 2 * j, q, zeta)
        if kind in (LaxKind.PLUS, LaxKind.PLUS_STAR):
            diag, sup = A @ D, A @ E
        else:
            diag, sup = E @ A, D @ A
        if kind in (LaxKind.PLUS_STAR, LaxKind.MINUS_STAR):
            diag, sup = diag.conj().T, sup.conj().T
        blocks[j, 0], blocks[j, 1] = diag, sup
    return SiteLax(n, kind, blocks)


@dataclass
class DoubleLax:
    """``L^s_a L^{s*}_b``; ``blocks[j, j', s, s']`` is the block at
    ``((j, j'), (j + s, j' + s'))``."""

    site: int
    sign: Sign
    blocks: np.ndarray  # (J, J, 2, 2, 2, 2)

    @property
    def j_max(self):
        return self.blocks.shape[0]

    def block(self, out, inp):
        s, t = inp[0] - out[0], inp[1] - out[1]
        if s in (0, 1) and t in (0, 1) and 0 <= out[0] < self.j_max and 0 <= out[1] < self.j_max:
            return self.blocks[out[0], out[1], s, t]
        return np.zeros((2, 2), dtype=complex)

    def map_physical(self, fn):
        return DoubleLax(self.site, self.sign, fn(self.blocks))


def double_from_single(La, Lb_star, sign):
    blocks = np.einsum("jsab,ktbc->jkstac", La.blocks, Lb_star.blocks)
    return DoubleLax(La.site, Sign(sign), blocks)


def build_double_lax(sign, n, q, lam, zeta, j_max):
    sign = Sign(sign)
    La = build_lax(sign.kind, n, q, lam, zeta, j_max)
    Lb = build_lax(sign.kind.starred, n, q, lam, zeta, j_max)
    return double_from_single(La, Lb, sign)


def double_lax_for(params, sign, n, j_max=None):
    if j_max is None:
        j_max = params.n_sites + 2
    return build_double_lax(sign, n, params.q, params.lam, params.z, j_max)


def site_sign(n, half_cycle=False):
    """Sign of the double Lax operator at site ``n``: ``+`` on odd sites for the
    full-cycle state, swapped for the half-cycle state."""
    odd = n % 2 == 1
    return Sign.PLUS if odd != half_cycle else Sign.MINUS


@dataclass
class BoundaryVec:
    side: Side
    coeffs: np.ndarray  # (J, J)

    @property
    def support(self):
        return self.coeffs.shape[0]

    def padded(self, size):
        out = np.zeros((size, size), dtype=complex)
        k = min(size, self.support)
        out[:k, :k] = self.coeffs[:k, :k]
        return out

    def hermiticity_error(self):
        return float(np.max(np.abs(self.coeffs - self.coeffs.conj().T)))

    def schmidt_rank(self, cutoff=1e-12):
        s = np.linalg.svd(self.coeffs, compute_uv=False)
        return int(np.sum(s > cutoff * s[0]))

    def support_bound(self, cutoff=1e-14):
        """Largest index carrying a coefficient above ``cutoff`` (relative)."""
        big = np.argwhere(np.abs(self.coeffs) > cutoff * np.abs(self.coeffs).max())
        return int(big.max())


def left_vector(params):
    """Left boundary coefficients on ``{0, 1} x {0, 1}``."""
    lam, az = params.lam, abs(params.z)
    if params.regime is Regime.EASY_PLANE:
        lam = lam.real
        x = (az**2 - 1.0) / (az**2 + 1.0)
        cosh, sinh = (lam + 1.0 / lam) / 2.0, (lam - 1.0 / lam) / 2.0
        coeffs = np.array([[cosh + sinh * x, 1.0], [1.0, cosh - sinh * x]], dtype=complex)
    else:
        e = (lam * az + 1.0 / (lam * az)) / (az + 1.0 / az)
        coeffs = np.array([[1.0, e], [np.conj(e), 1.0]], dtype=complex)
    return BoundaryVec(Side.LEFT, coeffs)


def _homogeneous_products(num, den, error):
    """``P_j ~ prod_{k<j} num_k/den_k`` for ``j = 0..len(num)``, scaled by
    ``prod_k den_k`` so that poles (``den_k = 0``) are handled exactly."""
    K = len(num)
    P = np.array([np.prod(num[:j]) * np.prod(den[j:]) for j in range(K + 1)])
    scale = np.abs(P).max()
    ref = np.prod(np.maximum(np.abs(num), np.abs(den)))
    if scale == 0 or scale < 1e-14 * ref:
        raise error("coincident zero and pole in the boundary recursion")
    return P / scale


def b_factors(params):
    """Numerators and denominators of ``b_n`` for ``n = -M .. N - M``."""
    q, lam, z, w = params.q, params.lam, params.z, complex(params.drive.w)
    n = np.arange(-params.half_length, params.n_sites - params.half_length + 1)
    qn = q ** n.astype(float)
    num = lam * z / qn - w * qn
    den = z / (qn * q) - lam * w * qn * q
    return num, den


def g_factors(params):
    """Numerators and denominators of ``g_n`` (times ``cos(beta)``)."""
    dr = params.drive
    q, lam, z = params.q, params.lam, params.z
    u2, v2 = np.exp(2j * dr.alpha), np.exp(2j * dr.gamma)
    c, s = np.cos(dr.beta), np.sin(dr.beta)
    n = np.arange(-params.half_length, params.n_sites - params.half_length + 1).astype(float)
    inner = c - v2 * z * s * q ** (-2 * n - 1)
    outer = u2 * (s * q ** (2 * n + 1) + v2 * z * c)
    return inner * z * lam - outer, inner * z - outer * lam


def right_vector_reset(params):
    """Right boundary coefficients for a reset on site N, indices ``0..N+1``,
    normalized to unit largest magnitude."""
    num, den = b_factors(params)
    P = _homogeneous_products(num, den, PoleInB)
    J = params.n_sites + 2
    j = np.arange(J)[:, None]
    k = np.arange(J)[None, :]
    q, az, M = params.q, abs(params.z), params.half_length
    if params.regime is Regime.EASY_PLANE:
        c = (-1.0) ** (j - k) * (az * q ** (k - j).astype(float) + q ** (j - k).astype(float) / az)
    else:
        e = (2 * M - j - k).astype(float)
        c = (-1.0) ** (j + k) * (az * q**e + q ** (-e) / az)
    r = c * np.outer(P, P.conj())
    return BoundaryVec(Side.RIGHT, r / np.abs(r).max())


def right_vector_hybrid(params):
    """Right boundary coefficients for unitary driving of site N (rank one)."""
    num, den = g_factors(params)
    P = _homogeneous_products(num, den, PoleInG)
    sgn = (-1.0) ** np.arange(len(P))
    x = sgn * P
    return BoundaryVec(Side.RIGHT, np.outer(x, x.conj()))


def right_vector(params):
    return right_vector_hybrid(params) if params.hybrid else right_vector_reset(params)
