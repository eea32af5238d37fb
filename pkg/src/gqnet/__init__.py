"""Covariance-matrix toolkit for states prepared by Gaussian quantum networks."""
from .core import (
    ModePartition,
    Validation,
    apply_symplectic,
    direct_sum,
    embed_local,
    is_symplectic,
    log_det,
    omega,
    reduce,
    symplectic_spectrum,
    validate,
)
from .kernels import BACKEND
from .measures import (
    PartitionedState,
    m_measure,
    mutual_information,
    renyi2_entropy,
    squashed_entanglement_pure,
    von_neumann_entropy,
)
from .networks import (
    NetworkTopology,
    SymmetricFamilyParams,
    TwoModeSource,
    assemble,
    pure_symmetric_params,
    pure_symmetric_state,
    random_locals,
    random_symplectic,
    symmetric_cm,
    symmetric_spectrum_closed_form,
    two_mode_source,
)
from .witnesses import (
    WitnessReport,
    monogamy_bound_expression,
    monogamy_witness,
    mutual_information_witness,
    pure_additivity_check,
    witness_report,
)

__version__ = "0.1.0"
