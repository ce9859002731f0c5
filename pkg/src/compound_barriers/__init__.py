"""Rigorous bounds for compound 1D barriers and parametric excitation.

Compose exact 2x2 transfer matrices, derive phase-free envelopes on
transmission, reflection and particle production from per-barrier data
alone, and verify sharpness against physical barrier models and exhaustive
phase sweeps.  Units throughout: hbar = 2m = 1, energy E = k^2.
"""

from .barriers import (
    BarrierSpec,
    Delta,
    PiecewiseConstant,
    Rectangular,
    WaveContext,
    scenario_transfer,
    support,
    transfer_of,
)
from .bounds import (
    BoundsReport,
    N_from_theta,
    ProductionAssessment,
    R_from_theta,
    RapiditySequence,
    ResonanceAssessment,
    T_from_theta,
    b_n_closed,
    b_n_iterative,
    bounds_report,
    classical_transmission,
    production_guaranteed,
    resonance_possible,
    s_n,
    theta_from_N,
    theta_from_R,
    theta_from_T,
    two_barrier_N_bounds,
    two_barrier_N_bounds_rational,
    two_barrier_R_bounds,
    two_barrier_R_bounds_rational,
    two_barrier_T_bounds,
    two_barrier_T_bounds_rational,
)
from .errors import (
    BoundViolationError,
    CompoundBarrierError,
    DimensionError,
    DomainError,
    EmptySequenceError,
    NormalizationError,
    OverlapError,
    ParseError,
    RapidityOverflowError,
    TargetOutOfRangeError,
)
from .identities import (
    cosh_sum_acosh,
    cosh_sum_asinh,
    sech_sum_asech,
    sinh_sum_asinh,
    tanh_sum_atanh,
)
from .scenario import Scenario, load_scenario, parse_scenario
from .transfer import (
    IDENTITY,
    NORM_TOL,
    RAPIDITY_LIMIT,
    HyperbolicParams,
    ScatteringAmplitudes,
    TransferMatrix,
    amplitudes,
    compose,
    compose_sequence,
    from_polar,
    make_transfer,
    particle_number,
    shift,
    to_polar,
)
from .verify import (
    CONTAINMENT_BAND,
    ContainmentReport,
    ContainmentRow,
    EquivalenceReport,
    GENERATOR_NAME,
    PhaseAssignment,
    SweepResult,
    attain,
    equivalence_audit,
    extremal_phase_search,
    random_phase_sweep,
    scenario_containment_audit,
)

__version__ = "0.1.0"
