"""Dense linear algebra and quantum-state plumbing."""
from .linalg import (
    bipartite_reshape,
    herm_eig,
    matrix_to_state,
    partial_trace,
    partial_transpose,
    partial_transpose_group,
    psd_sqrt,
    rank,
    reduce_pure,
    regroup,
    spectral_vectors,
    tensor,
    trace_norm,
)
from .sampling import (
    derive_seed,
    ginibre,
    haar_pure,
    hs_density,
    make_rng,
    random_isometry,
    random_unitary,
    sample,
)
from .states import ComplexMatrix, Cut, Decomposition, DensityMatrix, PureState, as_matrix

__all__ = [
    'ComplexMatrix',
    'Cut',
    'Decomposition',
    'DensityMatrix',
    'PureState',
    'as_matrix',
    'bipartite_reshape',
    'derive_seed',
    'ginibre',
    'haar_pure',
    'herm_eig',
    'hs_density',
    'make_rng',
    'matrix_to_state',
    'partial_trace',
    'partial_transpose',
    'partial_transpose_group',
    'psd_sqrt',
    'random_isometry',
    'random_unitary',
    'rank',
    'reduce_pure',
    'regroup',
    'sample',
    'spectral_vectors',
    'tensor',
    'trace_norm',
]
