import cmath
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings
from strategies import conditioned_tol, hybrid_params, oracle_gate, reset_params, stereo

from xxz_ness import (
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Z,
    CircuitParams,
    Parity,
    TwoReset,
    assemble_density,
    contract_expectation,
    even_half,
    helix_state,
    local_expectation,
    power_iterate_ness,
)
from xxz_ness.errors import IndexOutOfRange, MemoryGuard
from xxz_ness.mpa import condition_estimate


def _fidelity(rho, psi):
    return float(np.real(psi.conj() @ rho @ psi))


@given(stereo(), st.floats(0.2, 2.9))
def test_helix_density_is_product_state(z, eta):
    q, lam = cmath.exp(1j * eta), math.exp(0.9)
    p = CircuitParams(3, q, lam, TwoReset(z, q**4 * z * lam))
    rho = assemble_density(p)
    assert _fidelity(rho, helix_state(p)) > 1 - 1e-12


def test_matches_power_iteration_n3():
    p = CircuitParams.easy_plane(3, 0.4, 0.9, 0.7 + 0.4j, -0.6 + 0.2j)
    assert np.linalg.norm(assemble_density(p) - power_iterate_ness(p).rho) < 1e-8


@settings(max_examples=10)
@given(reset_params(n_sites=st.sampled_from([3, 5]), gate=oracle_gate()))
def test_matches_power_iteration_both_half_steps(params):
    oracle = power_iterate_ness(params, max_iter=20000)
    tol = conditioned_tol(params, 1e-8)
    assert np.linalg.norm(assemble_density(params, Parity.CYCLE) - oracle.rho) < tol
    assert np.linalg.norm(assemble_density(params, Parity.HALF_CYCLE) - oracle.rho_half) < tol


@given(st.one_of(reset_params(gate=oracle_gate()), hybrid_params(gate=oracle_gate())))
def test_density_is_a_state(params):
    rho = assemble_density(params)
    assert np.max(np.abs(rho - rho.conj().T)) < conditioned_tol(params, 1e-12)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() > -conditioned_tol(params, 1e-10)


@given(st.one_of(reset_params(gate=oracle_gate()), hybrid_params(gate=oracle_gate())))
def test_half_cycle_is_even_image(params):
    rho = assemble_density(params, Parity.CYCLE)
    rho_h = assemble_density(params, Parity.HALF_CYCLE)
    assert np.linalg.norm(even_half(rho, params) - rho_h) < conditioned_tol(params, 1e-10)


@given(st.one_of(reset_params(gate=oracle_gate()), hybrid_params(gate=oracle_gate())))
def test_truncation_inflation_changes_nothing(params):
    rho = assemble_density(params)
    assert np.max(np.abs(assemble_density(params, extra_aux=3) - rho)) < conditioned_tol(params, 1e-12)


def test_memory_guard():
    p = CircuitParams.easy_plane(11, 0.3, 0.9, 1.0, 0.5)
    with pytest.raises(MemoryGuard):
        assemble_density(p)


class TestContraction:
    def test_identity_gives_one(self, epr5):
        assert contract_expectation(epr5, np.eye(2), 3) == 1

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_matches_oracle_ness(self, n):
        p = CircuitParams.easy_plane(n, 0.7, 0.6, 0.9 + 0.3j, -0.4 + 0.9j)
        rho = power_iterate_ness(p, max_iter=20000).rho
        for site in (1, (n + 1) // 2, n):
            for obs in (SIGMA_PLUS, SIGMA_Z):
                assert abs(contract_expectation(p, obs, site) - local_expectation(rho, obs, site)) < 1e-8

    @given(st.one_of(reset_params(n_sites=st.just(9), gate=oracle_gate()), hybrid_params(n_sites=st.just(9), gate=oracle_gate())))
    def test_matches_assembled_density(self, params):
        tol = conditioned_tol(params, 1e-10)
        for parity in Parity:
            rho = assemble_density(params, parity)
            for site in (1, 4, 9):
                for obs in (SIGMA_PLUS, SIGMA_X, SIGMA_Z):
                    val = contract_expectation(params, obs, site, parity)
                    assert abs(val - local_expectation(rho, obs, site)) < tol

    @given(stereo(), st.sampled_from([3, 7, 11, 15, 21]))
    def test_helix_sigma_plus(self, z, n):
        q, lam = cmath.exp(0.5j), math.exp(0.9)
        p = CircuitParams(n, q, lam, TwoReset(z, q ** (n + 1) * z * lam))
        assert abs(contract_expectation(p, SIGMA_PLUS, 1) - z * q / (1 + abs(z) ** 2)) < 1e-12

    def test_site_range(self, epr5):
        with pytest.raises(IndexOutOfRange):
            contract_expectation(epr5, SIGMA_Z, 6)


@pytest.mark.parametrize("q", [1.5, 2.0, 3.0, 0.5])
def test_condition_estimate_bounds_easy_axis_error(q):
    p = CircuitParams(7, q, cmath.exp(1j), TwoReset(1.0, 1.0))
    rho = assemble_density(p)
    kappa = condition_estimate(p)
    eps = np.finfo(float).eps
    for site in (1, 4, 7):
        err = abs(contract_expectation(p, SIGMA_PLUS, site) - local_expectation(rho, SIGMA_PLUS, site))
        assert err < 10 * kappa * eps


def test_condition_estimate_grows_with_anisotropy():
    kappas = [condition_estimate(CircuitParams(7, q, cmath.exp(1j), TwoReset(1.0, 1.0))) for q in (1.2, 1.5, 2.0, 3.0)]
    assert all(a < b for a, b in zip(kappas, kappas[1:]))
    assert kappas[-1] > 1e10


@pytest.mark.parametrize("name", ["epr5", "ear5", "hybrid5"])
def test_generic_density_hermitian(name, request):
    params = request.getfixturevalue(name)
    for parity in Parity:
        rho = assemble_density(params, parity)
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
