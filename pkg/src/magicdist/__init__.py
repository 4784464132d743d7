"""Exact magic-state distillation maps and stabilizer-reduction tooling.

The package splits into an exact-arithmetic engine (codes -> projector
maps -> fixed points), a dense-vector oracle for independent checking,
and the constructive reduction of non-stabilizer states to one qubit.
"""

from .bloch import (
    F_H_STAR,
    H_DIRECTIONS,
    T_DIRECTIONS,
    BlochVector,
    RegionLabel,
    RegionReport,
    SingleQubitDensity,
    bloch_to_density,
    classify_region,
    density_to_bloch,
    h_fidelity,
    octahedron_contains,
    p_to_x,
    twirl_h,
    twirl_t,
    x_to_p,
)
from .codes import (
    CodewordSet,
    PairWeightTable,
    ValidationReport,
    WeightDistribution,
    golay_S,
    load_code,
    pair_weight_table,
    random_code_support,
    resolve_code,
    rm15_S,
    steane_S,
    validate_S,
    weight_distribution,
)
from .ratpoly import RationalPolynomial, ratio_str
from .distill import (
    DistillationMap,
    IterationStep,
    OverlapTriple,
    SweepRow,
    distillation_map,
    equator_round,
    evaluate_map,
    iterate_map,
    overlap_general,
    overlaps_h_line,
    sweep,
    sweep_code,
)
from .analysis import (
    FixedPoint,
    MapFixedPoint,
    Stability,
    StabilityReport,
    ThresholdReport,
    derivative_at,
    fixed_point_identity_sum,
    fixed_point_polynomial,
    fixed_points,
    instability_report,
    scan_map_fixed_points,
    scan_map_threshold,
    threshold_p,
    threshold_report,
)
from .knownmaps import bk15_pout, bk15_threshold, known_thresholds, t5_map, t5_threshold
from .oracle import (
    DenseState,
    PauliProduct,
    apply_clifford,
    dense_overlaps,
    load_state,
    logical_states,
    measure_postselect,
    parse_state_text,
    pauli_expectation,
    save_state,
    state_to_text,
)
from .stabreduce import (
    CliffordStep,
    MeasurementScript,
    MeasurementStep,
    StabilizerWitness,
    clifford_to_computational,
    conjugate_pauli,
    find_unit_pauli,
    is_stabilizer_state,
    random_clifford_scramble,
    random_nonstabilizer_state,
    random_stabilizer_state,
    reduce_state,
    verify_script,
)

__version__ = "0.1.0"
