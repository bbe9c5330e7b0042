"""Brickwork spin helices: resonance conditions, product states, indicators, scans."""

from __future__ import annotations

import cmath
import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import SIGMA_PLUS, CircuitParams, Regime, TwoReset
from .errors import NessError, UndefinedArg
from .mpa import Parity, contract_expectation

CSV_HEADER = "eta_over_pi,f1,f2,re_sigma_plus,im_sigma_plus,status"


class Helicity(enum.Enum):
    FORWARD = "forward"
    INVERTED = "inverted"


@dataclass(frozen=True)
class HelixSpec:
    helicity: Helicity = Helicity.FORWARD
    kinks: int = 0


def helix_condition(coord, q, lam, n_sites, kinks=0, helicity=Helicity.FORWARD):
    """Resonant boundary coordinate.

    Forward: ``coord`` is the left coordinate z; returns ``w = q^(N+1-2m) z lam``.
    Inverted: ``coord`` is the right coordinate w; returns ``z = w lam q^(N+1-2m)``.
    """
    if n_sites % 2 == 0 or n_sites < 1:
        raise ValueError("n_sites must be odd")
    if not 0 <= kinks <= (n_sites + 1) // 2:
        raise ValueError(f"kinks must lie in 0..{(n_sites + 1) // 2}")
    return complex(q) ** (n_sites + 1 - 2 * kinks) * complex(coord) * complex(lam)


def resonant_params(n_sites, q, lam, z, kinks=0, helicity=Helicity.FORWARD, regime=None):
    """Two-reset instance sitting on a (kinked) helix resonance for left coordinate ``z``."""
    helicity = Helicity(helicity)
    if helicity is Helicity.FORWARD:
        w = helix_condition(z, q, lam, n_sites, kinks, helicity)
    else:
        w = complex(z) / (complex(lam) * complex(q) ** (n_sites + 1 - 2 * kinks))
    return CircuitParams(n_sites, q, lam, TwoReset(z, w), regime)


def helix_spinor(n, params, plus, helicity=Helicity.FORWARD):
    z, q, lam = params.z, params.q, params.lam
    if Helicity(helicity) is Helicity.FORWARD:
        v = np.array([1.0, z * q**n]) if plus else np.array([1.0, lam * z * q**n])
    else:
        v = np.array([1.0, z * q ** (-n)]) if plus else np.array([lam, z * q ** (-n)])
    v = v.astype(complex)
    return v / np.linalg.norm(v)


def helix_state(params, parity=Parity.CYCLE, helicity=Helicity.FORWARD):
    """Product state ``psi^+_1 (x) psi^-_2 (x) psi^+_3 ...`` (``Parity.CYCLE``) or
    its staggered partner (``Parity.HALF_CYCLE``)."""
    half = Parity(parity).half
    psi = np.ones(1, dtype=complex)
    for n in range(1, params.n_sites + 1):
        plus = (n % 2 == 1) != half
        psi = np.kron(psi, helix_spinor(n, params, plus, helicity))
    return psi


def anisotropy(q):
    """``eta = -i log q`` on the principal branch."""
    return cmath.log(complex(q)).imag


def indicators(sigma_plus, z, eta):
    """Helix indicators ``(f1, f2)`` from the site-1 expectation of sigma^+."""
    if abs(sigma_plus) < 1e-300:
        raise UndefinedArg("<sigma^+> vanishes; its argument is undefined")
    if eta == 0:
        raise UndefinedArg("eta = 0")
    z = complex(z)
    f1 = 1.0 - cmath.phase(sigma_plus / z) / eta
    f2 = -1.0 + abs((abs(z) + 1.0 / abs(z)) * sigma_plus)
    return f1, f2


@dataclass
class ScanRow:
    eta: float
    f1: float
    f2: float
    sigma_plus: complex
    status: str = "ok"

    @property
    def ok(self):
        return self.status == "ok"

    def csv(self):
        g = lambda x: format(x, ".17g")
        return ",".join(
            [g(self.eta / math.pi), g(self.f1), g(self.f2), g(self.sigma_plus.real), g(self.sigma_plus.imag), self.status]
        )


@dataclass
class ScanTable:
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def eta(self):
        return np.array([r.eta for r in self.rows])

    @property
    def f1(self):
        return np.array([r.f1 for r in self.rows])

    @property
    def f2(self):
        return np.array([r.f2 for r in self.rows])

    def to_csv(self):
        return "\n".join([CSV_HEADER] + [r.csv() for r in self.rows]) + "\n"

    def nearest(self, eta):
        return int(np.argmin(np.abs(self.eta - eta)))


def predicted_resonances(n_sites, kinks, lo=0.0, hi=math.pi):
    """Anisotropies in ``(lo, hi)`` with ``(N + 1 - 2 m) eta = 0 mod 2 pi``."""
    period = n_sites + 1 - 2 * kinks
    if period <= 0:
        return []
    out = []
    k = 1
    while True:
        eta = 2 * math.pi * k / period
        if eta >= hi - 1e-12:
            return out
        if eta > lo + 1e-12:
            out.append(eta)
        k += 1


def resonance_grid(n_points, n_sites=None, max_kinks=None, lo=0.0, hi=1.0):
    """Uniform interior grid of ``eta/pi`` over ``(lo, hi)``, as ``eta`` values.

    When ``n_sites`` is given, the node nearest to each predicted helix/kink
    resonance (``m = 0..max_kinks``) is moved onto it, so those anisotropies are
    sampled exactly. Moves are at most half a step, so the grid stays increasing.
    """
    grid = np.linspace(lo, hi, n_points + 2)[1:-1] * math.pi
    if n_sites is not None:
        if max_kinks is None:
            max_kinks = (n_sites - 1) // 2
        for m in range(max_kinks + 1):
            for eta in predicted_resonances(n_sites, m, lo * math.pi, hi * math.pi):
                grid[np.argmin(np.abs(grid - eta))] = eta
    return grid


def _scan_point(args):
    base, eta = args
    try:
        params = base.with_q(cmath.exp(1j * eta))
        sp = contract_expectation(params, SIGMA_PLUS, 1, Parity.CYCLE)
        f1, f2 = indicators(sp, params.z, eta)
        return ScanRow(eta, f1, f2, sp)
    except (NessError, ZeroDivisionError, FloatingPointError) as exc:
        return ScanRow(eta, math.nan, math.nan, complex(math.nan, math.nan), f"excluded:{type(exc).__name__}")


def scan_workers():
    raw = os.environ.get("NESS_MPA_THREADS", "1")
    n = int(raw) if raw.strip() else 1
    if n == 0:
        return os.cpu_count() or 1
    return max(n, 1)


def scan_anisotropy(base_params, eta_grid, workers=None):
    """Helix indicators along an anisotropy sweep with ``q = exp(i eta)``.

    Points that hit a pole or underflow are kept as excluded rows.
    """
    if base_params.regime is not Regime.EASY_PLANE:
        raise ValueError("anisotropy scans are defined in the easy-plane regime")
    etas = sorted(float(e) for e in eta_grid)
    if workers is None:
        workers = scan_workers()
    jobs = [(base_params, e) for e in etas]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_scan_point(j) for j in jobs]
    meta = dict(params=base_params.describe(), n_points=len(rows), workers=workers)
    return ScanTable(rows, meta)


def strict_local_minima(values):
    """Indices strictly below both neighbours (NaN entries never qualify)."""
    v = np.asarray(values, dtype=float)
    idx = np.arange(1, len(v) - 1)
    mask = (v[idx] < v[idx - 1]) & (v[idx] < v[idx + 1])
    return idx[mask]
