"""Spread of the decomposition average over random decompositions."""
import logging
from typing import NamedTuple, Optional

import numpy as np

from src.core import Cut, DensityMatrix, derive_seed, random_isometry
from src.errors import OutOfRange
from src.measures import MeasureId, resolve_cut

from .decomposition import apply_isometry, decomposition_average, spectral_decomposition

logger = logging.getLogger(__name__)


class ScanResult(NamedTuple):
    min_avg: float
    max_avg: float
    spread: float


def invariance_scan(
    rho: DensityMatrix,
    measure: MeasureId,
    cut: Optional[Cut] = None,
    samples: int = 50,
    seed: int = 0,
) -> ScanResult:
    """
    Evaluate the decomposition average on the spectral ensemble and `samples`
    random isometric remixes of it.

    Ensemble sizes cycle through r, r+1, ..., r^2 with r = rank(rho); sample k
    uses the isometry seed derive_seed(seed, k).
    """
    if samples < 1:
        raise OutOfRange(f"samples must be >= 1, got {samples}")
    cut = resolve_cut(rho.dims, cut)
    root = spectral_decomposition(rho)
    r = root.size
    values = [decomposition_average(measure, root, cut)]
    span = r * r - r + 1
    for k in range(samples):
        u = random_isometry(r + k % span, r, derive_seed(seed, k))
        values.append(decomposition_average(measure, apply_isometry(root, u), cut))
    lo, hi = float(np.min(values)), float(np.max(values))
    logger.debug(f"invariance_scan({measure}, rank {r}): [{lo:.12g}, {hi:.12g}] over {len(values)} ensembles")
    return ScanResult(lo, hi, hi - lo)
