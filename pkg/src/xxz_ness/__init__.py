"""Exact steady states of boundary-driven XXZ brickwork circuits.

The steady state is written as a two-replica matrix product ansatz built from
Lax operators of the XXZ gate, and every claim about it can be checked against
brute-force evolution of the circuit for small chains.
"""

from .algebra import (
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    CircuitParams,
    Hybrid,
    KrausPair,
    Regime,
    Side,
    TwoReset,
    bloch_vector,
    build_boundary_spinor,
    build_euler_unitary,
    build_gate,
    build_kraus,
    classify_regime,
    gate_weights,
    projector,
    reset_channel,
    stereo_from_angles,
)
from .dense import (
    NessResult,
    apply_boundary_channel,
    apply_two_site_gate,
    cycle_kraus,
    even_half,
    full_cycle,
    krylov_ness,
    local_expectation,
    maximally_mixed,
    odd_half,
    power_iterate_ness,
    reduced_site,
    site_bloch_vectors,
)
from .errors import *  # noqa: F401,F403
from .helix import (
    Helicity,
    ScanTable,
    helix_condition,
    helix_state,
    indicators,
    predicted_resonances,
    resonance_grid,
    resonant_params,
    scan_anisotropy,
    strict_local_minima,
)
from .lax import (
    BoundaryVec,
    DoubleLax,
    LaxKind,
    Sign,
    SiteLax,
    build_double_lax,
    build_lax,
    left_vector,
    right_vector,
)
from .mpa import Parity, assemble_density, condition_estimate, contract_expectation
from .verify import ResidualReport, run_suite

__version__ = "0.1.0"
