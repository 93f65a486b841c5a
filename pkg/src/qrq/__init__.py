"""Two-qubit gates from a QND-rotation-QND light-atom protocol.

Layout:

- ``qrq.gates``: local invariants, Weyl coordinates, gate classification and
  the product-input concurrence oracle for arbitrary two-qubit unitaries.
- ``qrq.core``: the protocol itself - transport matrices, closed-form output
  amplitudes, the entangling-phase root and its existence bound, gate
  probability, and regime detection.
- ``qrq.oracle``: independent truncated-Fock verification of the closed
  forms, plus the physical (state-evolution) view with its higher-excitation
  bookkeeping.
- ``qrq.sweeps``: grid sweeps to CSV, locus tracing, asymptotic table
  verification, and the vacuum-probability scan.
- ``qrq.cli``: the ``qrq`` command.
"""

from .core import (
    BRANCHES,
    BogoliubovPair,
    CompParams,
    NonUnitaryBlock,
    OutputDecomposition,
    PhiSolution,
    QrqParams,
    RegimeReport,
    amplitudes,
    amplitudes_comp,
    composite_bogoliubov,
    convert_params,
    convert_params_inv,
    pe_residual,
    phi_en,
    probability,
    regime_classify,
    simplified_invariants,
    stage_bogoliubov,
    two_qubit_gate,
    unitarity_residual,
    x_min,
)
from .gates import (
    CNOT,
    IDENTITY4,
    MAGIC,
    SQRT_SWAP,
    SQRT_SWAP_DAG,
    SWAP,
    ClassLabel,
    LocalInvariants,
    NonUnitaryInput,
    WeylPoint,
    classify,
    entangling_power,
    is_perfect_entangler,
    local_invariants,
    makhlin_invariants,
    max_product_concurrence,
    project_su4,
    random_local_gate,
    to_bell_diagonal,
    weyl_coordinates,
)
from .oracle import (
    ComparisonReport,
    CutoffTooSmall,
    FockStateVector,
    SectorDecomposition,
    build_qnd_unitary,
    build_rotation,
    compare_closed_form,
    decompose_sectors,
    run_qrq,
)
from .sweeps import (
    PRESETS,
    SweepConfig,
    appendix_scan,
    run_grid,
    sensitivity_probe,
    trace_locus,
    verify_tables,
)

__version__ = "0.1.0"
