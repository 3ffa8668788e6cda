"""Growth-mitigated iterative downfolding of qubit-mapped Hamiltonians.

The package selects Pauli-product generators that maximize energy lowering
of a fixed computational reference while minimizing the onset of new terms
in the similarity-transformed Hamiltonian, with dense-matrix oracles for
verification at small qubit counts.
"""

from .engine import IterationRecord, RunConfig, RunResult, minimize_tau, run
from .errors import (
    DataError,
    DimensionMismatchError,
    EmptyCandidateSetError,
    GuardError,
    InternalInconsistencyError,
    QdownfoldError,
)
from .growth import (
    GrowthReport,
    SearchConfig,
    find_min_growth_deterministic,
    find_min_growth_probabilistic,
    growth_exact,
    partition_growth_profile,
)
from .hamiltonian import (
    Interchange,
    IsingGrouping,
    PauliHamiltonian,
    ReferenceState,
    dress,
    expectation,
    ising_grouping,
    load_interchange,
    save_interchange,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .pauli import PauliProduct, PhasedPauli, commutator_label, commutes, multiply, y_parity
from .screening import (
    GradientPartition,
    PartitionTable,
    canonical_element,
    gradient_of,
    screen,
)
from .selection import PartitionScore, ScoringConfig, score_table, select_generator

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "DimensionMismatchError",
    "EmptyCandidateSetError",
    "GradientPartition",
    "GrowthReport",
    "GuardError",
    "Interchange",
    "InternalInconsistencyError",
    "IsingGrouping",
    "IterationRecord",
    "KERNEL_BACKEND",
    "PartitionScore",
    "PartitionTable",
    "PauliHamiltonian",
    "PauliProduct",
    "PhasedPauli",
    "QdownfoldError",
    "ReferenceState",
    "RunConfig",
    "RunResult",
    "ScoringConfig",
    "SearchConfig",
    "canonical_element",
    "commutator_label",
    "commutes",
    "dress",
    "expectation",
    "find_min_growth_deterministic",
    "find_min_growth_probabilistic",
    "gradient_of",
    "growth_exact",
    "ising_grouping",
    "load_interchange",
    "minimize_tau",
    "multiply",
    "partition_growth_profile",
    "run",
    "save_interchange",
    "score_table",
    "screen",
    "select_generator",
    "y_parity",
]
