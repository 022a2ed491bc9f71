"""Pure-state decompositions: isometric remixing, convex-roof search, zero-G tails."""
from .decomposition import (
    apply_isometry,
    decomposition_average,
    pad,
    spectral_decomposition,
)
from .optimizer import MODES, RoofConfig, RoofResult, roof_optimize
from .scan import ScanResult, invariance_scan
from .zero_tail import pair_rotation, scaled_det, zero_g_tail

__all__ = [
    'MODES',
    'RoofConfig',
    'RoofResult',
    'ScanResult',
    'apply_isometry',
    'decomposition_average',
    'invariance_scan',
    'pad',
    'pair_rotation',
    'roof_optimize',
    'scaled_det',
    'spectral_decomposition',
    'zero_g_tail',
]
