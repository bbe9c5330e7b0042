import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from strategies import any_gate, epr_gate, ear_gate, reset_params, stereo

from xxz_ness import (
    SIGMA_Z,
    CircuitParams,
    Hybrid,
    Regime,
    Side,
    TwoReset,
    bloch_vector,
    build_boundary_spinor,
    build_euler_unitary,
    build_gate,
    build_kraus,
    classify_regime,
    projector,
    reset_channel,
    stereo_from_angles,
)
from xxz_ness.errors import (
    AmbiguousRegime,
    DegenerateDenominator,
    NonUnitaryRegime,
    ZeroStereoCoord,
)

SWAP = np.eye(4)[[0, 2, 1, 3]]


def test_classify_examples():
    assert classify_regime(cmath.exp(1j * math.pi / 3), 2.0) is Regime.EASY_PLANE
    assert classify_regime(1.7, cmath.exp(0.4j)) is Regime.EASY_AXIS
    with pytest.raises(NonUnitaryRegime):
        classify_regime(1 + 0.5j, 2.0)


def test_classify_corner_needs_preference():
    with pytest.raises(AmbiguousRegime):
        classify_regime(-1.0, 1.0)
    assert classify_regime(-1.0, 1.0, prefer="ear") is Regime.EASY_AXIS


def test_gate_identity_and_swap():
    assert np.allclose(build_gate(cmath.exp(0.8j), 1.0), np.eye(4), atol=1e-15)
    assert np.allclose(build_gate(1.0, 2.0), SWAP, atol=1e-15)


def test_gate_unitary_example():
    U = build_gate(cmath.exp(0.3j), math.exp(0.9))
    assert np.max(np.abs(U @ U.conj().T - np.eye(4))) < 1e-12


def test_gate_degenerate_denominator():
    # q * lam = 1 kills the common denominator
    with pytest.raises(DegenerateDenominator):
        build_gate(2.0, 0.5)


@given(any_gate())
def test_gate_unitary_in_both_regimes(gate):
    U = build_gate(*gate)
    assert np.max(np.abs(U @ U.conj().T - np.eye(4))) < 1e-12


@given(any_gate())
def test_gate_conserves_magnetization(gate):
    U = build_gate(*gate)
    Z = np.kron(SIGMA_Z, np.eye(2)) + np.kron(np.eye(2), SIGMA_Z)
    assert np.max(np.abs(U @ Z - Z @ U)) < 1e-13


def test_spinor_examples():
    assert np.allclose(build_boundary_spinor(0), [1, 0])
    assert np.allclose(build_boundary_spinor(1), np.array([1, 1]) / math.sqrt(2))


def test_spinor_bloch_angles():
    theta, phi = math.pi / 3, math.pi / 4
    r = bloch_vector(projector(build_boundary_spinor(stereo_from_angles(theta, phi))))
    assert math.isclose(np.linalg.norm(r), 1.0, rel_tol=1e-12)
    assert math.isclose(math.acos(r[2]), theta, rel_tol=1e-12)
    assert math.isclose(math.atan2(r[1], r[0]), phi, rel_tol=1e-12)


@given(stereo())
def test_spinor_is_normalized(zeta):
    assert abs(np.linalg.norm(build_boundary_spinor(zeta)) - 1) < 1e-14


@pytest.mark.parametrize("side", list(Side))
def test_kraus_identity_at_lambda_one(side, rng):
    kraus = build_kraus(side, cmath.exp(0.5j), 1.0, 0.7 - 0.2j)
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = rho @ rho.conj().T
    assert np.allclose(kraus(rho), rho, atol=1e-14)


def test_kraus_completeness_example():
    kraus = build_kraus(Side.LEFT, cmath.exp(0.3j), math.exp(0.9), 0.7 * cmath.exp(0.2j))
    assert kraus.completeness_error() < 1e-12


def test_kraus_right_matches_partial_trace(rng):
    q, lam, w = cmath.exp(0.3j), math.exp(0.9), 0.4
    kraus = build_kraus(Side.RIGHT, q, lam, w)
    U = build_gate(q, lam)
    target = build_boundary_spinor(w)
    for _ in range(20):
        X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho = X @ X.conj().T / np.trace(X @ X.conj().T)
        assert np.max(np.abs(kraus(rho) - reset_channel(Side.RIGHT, U, target, rho))) < 1e-12


@given(any_gate(), stereo())
def test_kraus_matches_reset_oracle_both_sides(gate, zeta):
    rng = np.random.default_rng(abs(hash((gate, zeta))) % 2**32)
    X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = X @ X.conj().T
    U = build_gate(*gate)
    for side in Side:
        kraus = build_kraus(side, *gate, zeta)
        assert kraus.completeness_error() < 1e-12
        oracle = reset_channel(side, U, build_boundary_spinor(zeta), rho)
        assert np.max(np.abs(kraus(rho) - oracle)) < 1e-12 * np.max(np.abs(rho))


@given(epr_gate(), stereo())
def test_kraus_trace_preserving(gate, zeta):
    kraus = build_kraus(Side.LEFT, *gate, zeta)
    for E in np.eye(4).reshape(4, 2, 2):
        assert abs(np.trace(kraus(E)) - np.trace(E)) < 1e-13


def test_euler_examples():
    assert np.allclose(build_euler_unitary(0, 0, 0), np.eye(2))
    flip = build_euler_unitary(0, math.pi / 2, 0)
    assert np.allclose(np.diag(flip), 0, atol=1e-15)
    assert np.allclose(np.abs(flip), [[0, 1], [1, 0]], atol=1e-15)
    V = build_euler_unitary(0.3, 0.5, 0.7)
    assert np.max(np.abs(V @ V.conj().T - np.eye(2))) < 1e-12


class TestCircuitParams:
    def test_even_length_rejected(self):
        with pytest.raises(ValueError):
            CircuitParams.easy_plane(4, 0.3, 0.9, 1.0, 1.0)

    def test_zero_coordinates_rejected(self):
        with pytest.raises(ZeroStereoCoord):
            CircuitParams.easy_plane(3, 0.3, 0.9, 0.0, 1.0)
        with pytest.raises(ZeroStereoCoord):
            CircuitParams.easy_plane(3, 0.3, 0.9, 1.0, 0.0)

    def test_q_plus_minus_one_rejected(self):
        with pytest.raises(DegenerateDenominator):
            CircuitParams(3, 1.0, 2.0, TwoReset(1.0, 1.0))

    def test_regime_mismatch_rejected(self):
        with pytest.raises(NonUnitaryRegime):
            CircuitParams(3, cmath.exp(0.3j), 2.0, TwoReset(1.0, 1.0), Regime.EASY_AXIS)

    def test_regime_inferred(self):
        p = CircuitParams(3, 1.7, cmath.exp(0.4j), TwoReset(1.0, 1.0))
        assert p.regime is Regime.EASY_AXIS

    def test_hybrid_right_channel_is_unitary(self):
        p = CircuitParams(3, cmath.exp(0.3j), 2.0, Hybrid(1.0, 0.1, 0.2, 0.3))
        V = p.right_channel()
        assert p.hybrid and V.shape == (2, 2)
        assert np.allclose(V @ V.conj().T, np.eye(2))

    @given(reset_params())
    def test_describe_round_trip(self, params):
        d = params.describe()
        assert d["n_sites"] == params.n_sites
        assert complex(*d["q"]) == params.q
        assert complex(*d["w"]) == complex(params.drive.w)

    @given(ear_gate())
    def test_with_q_keeps_drive(self, gate):
        p = CircuitParams(3, *gate, TwoReset(0.5, 2.0))
        p2 = p.with_q(-gate[0])
        assert p2.drive == p.drive and p2.q == -gate[0]
