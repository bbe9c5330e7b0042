"""Elementary objects: XXZ gate, reset Kraus pairs, boundary spinors, Euler unitary.

Conventions
-----------
Qubit basis is ``(|0>, |1>)`` and two-qubit operators act on ``|ab>`` with the
left qubit as the most significant bit. Gates act as ``rho -> U rho U^dag``;
boundary Kraus pairs act as ``rho -> sum_mu K_mu^dag rho K_mu``.

A stereographic coordinate ``zeta = tan(theta/2) exp(i phi)`` labels the pure
state ``(1, zeta) / sqrt(1 + |zeta|^2)``, i.e. the Bloch vector with polar angle
``theta`` and azimuth ``phi``. This is the state the reset Kraus pair actually
prepares (checked against the explicit partial-trace construction in the tests).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    AmbiguousRegime,
    DegenerateDenominator,
    NonUnitaryRegime,
    ZeroStereoCoord,
)

REGIME_TOL = 1e-12
DENOM_TOL = 1e-14

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class Regime(enum.Enum):
    EASY_PLANE = "epr"
    EASY_AXIS = "ear"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _is_easy_plane(q, lam):
    return abs(abs(q) - 1.0) < REGIME_TOL and abs(complex(lam).imag) < REGIME_TOL * max(1.0, abs(lam))


def _is_easy_axis(q, lam):
    return abs(complex(q).imag) < REGIME_TOL * max(1.0, abs(q)) and abs(abs(lam) - 1.0) < REGIME_TOL


def classify_regime(q, lam, prefer=None):
    """Return the unitarity regime of the gate with parameters ``(q, lam)``.

    ``prefer`` disambiguates the corner ``q, lam in {+1, -1}`` where both
    conditions hold.
    """
    q, lam = complex(q), complex(lam)
    if not (cmath.isfinite(q) and cmath.isfinite(lam)) or q == 0 or lam == 0:
        raise NonUnitaryRegime(f"q={q}, lambda={lam} must be finite and nonzero")
    plane, axis = _is_easy_plane(q, lam), _is_easy_axis(q, lam)
    if plane and axis:
        if prefer is None:
            raise AmbiguousRegime(f"q={q}, lambda={lam} satisfies both regimes")
        return Regime(prefer)
    if plane:
        return Regime.EASY_PLANE
    if axis:
        return Regime.EASY_AXIS
    raise NonUnitaryRegime(f"q={q}, lambda={lam}: neither |q|=1 with real lambda nor real q with |lambda|=1")


def gate_weights(q, lam):
    """The (a, b) entries of the XXZ gate."""
    den = q * lam - 1.0 / (q * lam)
    if abs(den) < DENOM_TOL:
        raise DegenerateDenominator(f"q*lam - 1/(q*lam) = {den}")
    return (q - 1.0 / q) / den, (lam - 1.0 / lam) / den


def build_gate(q, lam):
    """4x4 XXZ (fSim-type) gate on ``|00>, |01>, |10>, |11>``."""
    a, b = gate_weights(complex(q), complex(lam))
    U = np.eye(4, dtype=complex)
    U[1, 1] = U[2, 2] = a
    U[1, 2] = U[2, 1] = b
    return U


def stereo_from_angles(theta, phi):
    return math.tan(theta / 2.0) * cmath.exp(1j * phi)


def build_boundary_spinor(zeta):
    """Normalized pure state ``(1, zeta)/sqrt(1+|zeta|^2)`` labelled by ``zeta``."""
    zeta = complex(zeta)
    return np.array([1.0, zeta], dtype=complex) / math.sqrt(1.0 + abs(zeta) ** 2)


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def bloch_vector(rho):
    """Bloch vector of a 2x2 density matrix."""
    return np.array([np.trace(s @ rho).real for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)])


@dataclass(frozen=True)
class KrausPair:
    """Reset channel ``rho -> k1^dag rho k1 + k2^dag rho k2``."""

    k1: np.ndarray
    k2: np.ndarray
    side: Side

    def __iter__(self):
        yield self.k1
        yield self.k2

    def __call__(self, rho):
        return sum(k.conj().T @ rho @ k for k in self)

    def completeness_error(self):
        s = self.k1 @ self.k1.conj().T + self.k2 @ self.k2.conj().T
        return float(np.max(np.abs(s - np.eye(2))))


def build_kraus(side, q, lam, zeta):
    """Kraus pair of the boundary reset channel targeting the state labelled by ``zeta``.

    ``zeta`` is ``z`` for the left reset and ``w`` for the right one; the matrices
    have the same form on both sides.
    """
    q, lam, zeta = complex(q), complex(lam), complex(zeta)
    den = q / lam - lam / q
    if abs(den) < DENOM_TOL:
        raise DegenerateDenominator(f"q/lam - lam/q = {den}")
    beta = (lam - 1.0 / lam) / (-den)
    alpha = (q - 1.0 / q) / den
    zc = zeta.conjugate()
    norm = 1.0 / math.sqrt(1.0 + abs(zeta) ** 2)
    k1 = norm * np.array([[1.0, beta * zc], [0.0, alpha]], dtype=complex)
    k2 = norm * np.array([[alpha * zc, 0.0], [beta, zc]], dtype=complex)
    return KrausPair(k1, k2, Side(side))


def reset_channel(side, gate, target, rho):
    """Reset map by explicit partial trace: ``tr_1 U(rho_t (x) rho)U^dag`` (left)
    or ``tr_2 U(rho (x) rho_t)U^dag`` (right)."""
    rho_t = projector(target)
    side = Side(side)
    if side is Side.LEFT:
        X = gate @ np.kron(rho_t, rho) @ gate.conj().T
        return np.einsum("iaib->ab", X.reshape(2, 2, 2, 2))
    X = gate @ np.kron(rho, rho_t) @ gate.conj().T
    return np.einsum("aibi->ab", X.reshape(2, 2, 2, 2))


def build_euler_unitary(alpha, beta, gamma):
    """Single-qubit unitary from Euler angles.

    Written with ``cos(beta)``/``sin(beta)`` instead of ``tan(beta)`` so that
    ``beta = pi/2`` is admissible.
    """
    u, v = cmath.exp(1j * alpha), cmath.exp(1j * gamma)
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[c / (u * v), -v * s / u], [u * s / v, u * v * c]], dtype=complex)


@dataclass(frozen=True)
class TwoReset:
    z: complex
    w: complex


@dataclass(frozen=True)
class Hybrid:
    z: complex
    alpha: float
    beta: float
    gamma: float

    @property
    def unitary(self):
        return build_euler_unitary(self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class CircuitParams:
    """One problem instance: odd chain length, gate parameters, boundary drive.

    ``regime`` is inferred when omitted and validated when given.
    """

    n_sites: int
    q: complex
    lam: complex
    drive: TwoReset | Hybrid
    regime: Regime | None = field(default=None)

    def __post_init__(self):
        n = self.n_sites
        if not isinstance(n, (int, np.integer)) or n < 1 or n % 2 == 0:
            raise ValueError(f"n_sites must be an odd positive integer, got {n!r}")
        object.__setattr__(self, "n_sites", int(n))
        q, lam = complex(self.q), complex(self.lam)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "lam", lam)
        if self.regime is None:
            object.__setattr__(self, "regime", classify_regime(q, lam))
        else:
            regime = Regime(self.regime)
            ok = _is_easy_plane(q, lam) if regime is Regime.EASY_PLANE else _is_easy_axis(q, lam)
            if not ok:
                raise NonUnitaryRegime(f"q={q}, lambda={lam} is not in regime {regime.value}")
            object.__setattr__(self, "regime", regime)
        if abs(q - 1) < REGIME_TOL or abs(q + 1) < REGIME_TOL:
            raise DegenerateDenominator("q = +-1 makes q - 1/q vanish")
        gate_weights(q, lam)
        if abs(q / lam - lam / q) < DENOM_TOL:
            raise DegenerateDenominator("q/lam - lam/q vanishes")
        if self.drive.z == 0:
            raise ZeroStereoCoord("left reset coordinate z must be nonzero")
        if isinstance(self.drive, TwoReset) and self.drive.w == 0:
            raise ZeroStereoCoord("right reset coordinate w must be nonzero")

    @property
    def z(self):
        return complex(self.drive.z)

    @property
    def hybrid(self):
        return isinstance(self.drive, Hybrid)

    @property
    def half_length(self):
        """``(N + 1) / 2``."""
        return (self.n_sites + 1) // 2

    def gate(self):
        return build_gate(self.q, self.lam)

    def left_kraus(self):
        return build_kraus(Side.LEFT, self.q, self.lam, self.z)

    def right_channel(self):
        """Right boundary map: a ``KrausPair`` or a 2x2 unitary in hybrid mode."""
        if self.hybrid:
            return self.drive.unitary
        return build_kraus(Side.RIGHT, self.q, self.lam, self.drive.w)

    def with_q(self, q):
        return replace(self, q=q)

    def with_drive(self, **changes):
        return replace(self, drive=replace(self.drive, **changes))

    @classmethod
    def easy_plane(cls, n_sites, eta, log_lambda, z, w):
        """Two-reset instance with ``q = exp(i eta)`` and ``lam = exp(log_lambda)``."""
        return cls(n_sites, cmath.exp(1j * eta), math.exp(log_lambda), TwoReset(z, w), Regime.EASY_PLANE)

    @classmethod
    def easy_axis(cls, n_sites, q, lambda_phase, z, w):
        return cls(n_sites, q, cmath.exp(1j * lambda_phase), TwoReset(z, w), Regime.EASY_AXIS)

    def describe(self):
        d = {
            "n_sites": self.n_sites,
            "q": [self.q.real, self.q.imag],
            "lambda": [self.lam.real, self.lam.imag],
            "regime": self.regime.value,
            "z": [self.z.real, self.z.imag],
        }
        if self.hybrid:
            d.update(drive="hybrid", alpha=self.drive.alpha, beta=self.drive.beta, gamma=self.drive.gamma)
        else:
            w = complex(self.drive.w)
            d.update(drive="two_reset", w=[w.real, w.imag])
        return d
