"""Decompositions whose members beyond the first have vanishing G-concurrence.

Two vectors x1, x2 on C^d ⊗ C^d with det X1 != 0 can be rotated into w, y with
det W = 0, because det(X1 + lambda X2) is a degree-d polynomial in lambda.
Repeating the rotation against a nonsingular pivot pushes all G-concurrence
into a single ensemble member.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import Decomposition, DensityMatrix, PureState, spectral_vectors
from src.errors import AllSingular, PivotSingular, ShapeError

logger = logging.getLogger(__name__)


def _square_dim(dims) -> int:
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ShapeError(f"zero-G-tail construction needs dims (d, d), got {tuple(dims)}")
    return int(dims[0])


def scaled_det(amplitudes: np.ndarray, d: int) -> complex:
    """det of the matrix form of the normalized vector; 0 for the zero vector."""
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        return 0j
    return complex(np.linalg.det(amplitudes.reshape(d, d) / norm))


def pair_rotation(
    x1: PureState,
    x2: PureState,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[PureState, PureState, Optional[complex]]:
    """
    Rotate (x1, x2) so that the first output has a singular matrix form.

    Args:
        x1: Pivot with det X1 != 0
        x2: Partner vector

    Returns:
        (w, y, lambda0) with |x1><x1| + |x2><x2| = |w><w| + |y><y| and det W = 0;
        (x2, x1, None) when x2 is already singular

    Raises:
        PivotSingular: det X1 vanishes within tol.det
    """
    d = _square_dim(x1.dims)
    if x2.dims != x1.dims:
        raise ShapeError(f"pair dims differ: {x1.dims} vs {x2.dims}")
    if abs(scaled_det(x1.amplitudes, d)) <= tol.det:
        raise PivotSingular("pivot vector has vanishing determinant")
    if abs(scaled_det(x2.amplitudes, d)) <= tol.det:
        return x2, x1, None

    m1 = x1.amplitudes.reshape(d, d)
    m2 = x2.amplitudes.reshape(d, d)
    # det(X1 + lambda X2) = det X2 · det(X2^{-1} X1 + lambda I)
    mu = np.linalg.eigvals(np.linalg.solve(m2, m1))
    lam = complex(-mu[np.argmin(np.abs(mu))])
    a = 1.0 / np.sqrt(1.0 + abs(lam) ** 2)
    b = lam * a
    w = a * x1.amplitudes + b * x2.amplitudes
    y = np.conj(b) * x1.amplitudes - a * x2.amplitudes
    return (
        PureState(w, x1.dims, normalized=False),
        PureState(y, x1.dims, normalized=False),
        lam,
    )


def zero_g_tail(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Decomposition:
    """
    Decomposition of rank(rho) vectors with G(w_j) = 0 for every j >= 2.

    The pivot starts as the eigenvector with the largest |det|; whenever a
    rotation leaves a singular remainder, the next nonsingular eigenvector
    takes over as pivot.

    Raises:
        AllSingular: every eigenvector has |det| <= tol.det
    """
    d = _square_dim(rho.dims)
    vectors = list(spectral_vectors(rho, tol))
    dets = [abs(scaled_det(v, d)) for v in vectors]
    if max(dets) <= tol.det:
        raise AllSingular("no eigenvector has a nonzero determinant")

    def as_state(v: np.ndarray) -> PureState:
        return PureState(v, rho.dims, normalized=False)

    def take_pivot(queue: List[np.ndarray]) -> Optional[np.ndarray]:
        scores = [abs(scaled_det(v, d)) for v in queue]
        if not scores or max(scores) <= tol.det:
            return None
        return queue.pop(int(np.argmax(scores)))

    queue = vectors
    pivot = take_pivot(queue)
    tail: List[np.ndarray] = []
    while queue:
        partner = queue.pop(0)
        w, y, _ = pair_rotation(as_state(pivot), as_state(partner), tol)
        tail.append(w.amplitudes)
        if abs(scaled_det(y.amplitudes, d)) > tol.det:
            pivot = y.amplitudes
            continue
        replacement = take_pivot(queue)
        if replacement is None:
            # only singular vectors remain: y closes the ensemble as head
            logger.debug(f"pivot exhausted with {len(queue)} singular vectors left")
            pivot = y.amplitudes
            tail.extend(queue)
            queue = []
        else:
            tail.append(y.amplitudes)
            pivot = replacement

    return Decomposition(np.vstack([pivot] + tail), rho.dims)
