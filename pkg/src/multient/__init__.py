"""Multiparticle entanglement measured as an average over bipartite groupings."""
from ._kernels import BACKEND
from .aggregate import (
    MeasureReport,
    Verdict,
    build_three_qubit_state,
    classify,
    free_entanglement,
    isotropic_closed_form,
    isotropic_state,
    sweep_isotropic,
    three_qubit_closed_form,
)
from .measures import (
    CutValue,
    MeasureError,
    entanglement_entropy,
    negativity,
    partial_trace,
    partial_transpose,
    pure_concurrence,
)
from .numeric import hermitian_eigenvalues, kron, matmul, trace_norm
from .regroup import (
    GroupingPlan,
    enumerate_bipartitions,
    grouping_unitary,
    move_permutation,
    pair_permutation,
    regroup_density,
    regroup_oracle,
)
from .states import (
    Bipartition,
    DensityMatrix,
    PureState,
    StateError,
    SubsystemShape,
    flat_index,
    ghz_state,
    load_state,
    parse_state,
    serialize_state,
    to_density,
)

__version__ = "0.1.0"
