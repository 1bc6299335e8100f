"""Exact pair correlations and wavevector-resolved susceptibility for
square-lattice Ising models, including the fully frustrated case and
aperiodically sign-modulated columns.
"""

from .elliptic import (
    EllipticDomainError,
    Modulus,
    complete_elliptic_K,
    jacobi_cs,
    jacobi_elliptic,
    jacobi_sc,
    make_modulus,
)
from .couplings import (
    CouplingPair,
    RapidityLine,
    coupling_pair,
    kw_dual,
    orientation_flip,
)
from .correlations import (
    CorrelationTable,
    PrecisionExhausted,
    SeedInconsistency,
    SeedSet,
    TableRangeError,
    build_table,
    diagonal_seeds,
    dual_magnetization,
    lookup,
    next_diagonal_seeds,
    onsager_nn,
)
from .frustrated import (
    DualPair,
    EightVertexWeights,
    FrustratedModel,
    PartialDualCouplings,
    TableMismatchError,
    decimated_spin,
    dual_pair,
    eight_vertex_weights,
    ff_correlation,
    gauge_sign,
    partial_dual,
    separation_class,
)
from .quasiperiodic import (
    FibonacciSpec,
    SignSequence,
    WindowRangeError,
    autocorrelation,
    fib_bit,
    fib_bits,
    metallic_alpha,
    sign_sequence,
)
from .chi import (
    ChiGrid,
    EstimationError,
    Peak,
    Wavevector,
    chi_column_gauge,
    chi_frustrated,
    chi_grid,
    chi_uniform,
    find_peaks,
    tail_estimate,
)
from .oracle import (
    CylinderSpec,
    IdentityCheck,
    VerificationReport,
    cylinder_correlation,
    enumerate_correlation,
    extrapolate,
    frustrated_lattice,
    square_lattice,
    torus_correlation,
    verify_identities,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "ChiGrid",
    "CorrelationTable",
    "CouplingPair",
    "CylinderSpec",
    "DualPair",
    "EightVertexWeights",
    "EllipticDomainError",
    "EstimationError",
    "FibonacciSpec",
    "FrustratedModel",
    "IdentityCheck",
    "Modulus",
    "PartialDualCouplings",
    "Peak",
    "PrecisionExhausted",
    "RapidityLine",
    "SeedInconsistency",
    "SeedSet",
    "SignSequence",
    "TableMismatchError",
    "TableRangeError",
    "VerificationReport",
    "Wavevector",
    "WindowRangeError",
    "autocorrelation",
    "build_table",
    "chi_column_gauge",
    "chi_frustrated",
    "chi_grid",
    "chi_uniform",
    "complete_elliptic_K",
    "coupling_pair",
    "cylinder_correlation",
    "decimated_spin",
    "diagonal_seeds",
    "dual_magnetization",
    "dual_pair",
    "eight_vertex_weights",
    "enumerate_correlation",
    "extrapolate",
    "ff_correlation",
    "fib_bit",
    "fib_bits",
    "find_peaks",
    "frustrated_lattice",
    "gauge_sign",
    "jacobi_cs",
    "jacobi_elliptic",
    "jacobi_sc",
    "kw_dual",
    "lookup",
    "make_modulus",
    "metallic_alpha",
    "next_diagonal_seeds",
    "onsager_nn",
    "orientation_flip",
    "partial_dual",
    "run_suite",
    "separation_class",
    "sign_sequence",
    "square_lattice",
    "tail_estimate",
    "torus_correlation",
    "verify_identities",
]
