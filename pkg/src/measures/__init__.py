"""Entanglement functionals, negativity and the two-qubit Wootters quantities."""
from .mixed import binary_entropy, eof_from_concurrence, negativity, von_neumann_entropy
from .pure import MIN_WEIGHT, NAMES, MeasureId, pure_measure, resolve_cut
from .wootters import WoottersRecord, spin_flip, wootters_analysis, wootters_matrix

__all__ = [
    'MIN_WEIGHT',
    'MeasureId',
    'NAMES',
    'WoottersRecord',
    'binary_entropy',
    'eof_from_concurrence',
    'negativity',
    'pure_measure',
    'resolve_cut',
    'spin_flip',
    'von_neumann_entropy',
    'wootters_analysis',
    'wootters_matrix',
]
