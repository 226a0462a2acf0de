"""Symmetry-resolved thermal entanglement of finite quantum lattices.

Dense exact-diagonalization tools for deciding when Gibbs and canonical
(charge-sector) thermal states stay entangled at high temperature.
"""

from .conditions import check_ec, check_nc, check_sec, predict_persistence, verify_ec_nc_equivalence
from .ensembles import (
    EnsembleSpec,
    canonical_state,
    free_energy,
    gibbs_state,
    relative_entropy,
    von_neumann_entropy,
)
from .entanglement import log_negativity, negativity, negativity_curve, two_qubit_separable
from .exceptions import (
    ConfigError,
    NonHermitianError,
    NumericError,
    ParityError,
    SectorError,
    SupportError,
    SymmetryError,
    SymthermError,
)
from .fermions import (
    MajoranaSystem,
    ModePartition,
    check_fermionic_canonical_condition,
    check_fermionic_gibbs_condition,
    fermionic_log_negativity,
    fermionic_partial_transpose,
)
from .indistinguishability import local_sector_distance, projector_trace_ratio
from .linalg import HilbertStructure, partial_trace, partial_transpose
from .models import ModelSpec, PauliTerm, build_hamiltonian, preset
from .results import ConditionResult
from .symmetry import (
    AbelianGroup,
    IrrepClass,
    Representation,
    SiteRep,
    classify_irrep,
    entangling_perturbation,
    semiuniform_census,
)

__version__ = "0.1.0"
