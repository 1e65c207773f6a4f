"""Genuine tripartite entanglement criteria from Bloch correlation tensors."""

__version__ = "0.1.0"

from .bloch import (
    CorrelationData,
    closed_form_purities,
    correlation_tensors,
    purity_expansion,
    reconstruct,
    reduced_purities,
    unfold,
)
from .criteria import (
    CriterionReport,
    analyze,
    best_k,
    find_threshold,
    ky_fan,
    lemma_bounds,
    m_k,
    pure_gme_concurrence,
    theorem1_margin,
    theorem1_threshold,
    theorem2_bound,
)
from .gellmann import GeneratorBasis, gellmann_basis
from .states import (
    DensityMatrix,
    InvalidStateError,
    PureState,
    StateSpec,
    example3_state,
    ghz,
    ghz_w_mix,
    isotropic_mix,
    random_biseparable_pure,
    random_mixed,
    random_pure,
    validate,
    w_state,
)
