"""Mixed-state quantities with closed forms: negativity and entropies."""
from typing import Optional

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import Cut, DensityMatrix, herm_eig, partial_transpose_group, trace_norm
from src.errors import NotPSD, OutOfRange

from .pure import resolve_cut


def negativity(rho: DensityMatrix, cut: Optional[Cut] = None) -> float:
    """(||rho^{T_B}||_1 - 1) / 2 across the cut; zero for PPT states."""
    cut = resolve_cut(rho.dims, cut)
    value = (trace_norm(partial_transpose_group(rho, cut.right)) - 1.0) / 2.0
    return max(0.0, value)


def von_neumann_entropy(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """-Tr rho log2 rho, with 0 log 0 = 0."""
    w, _ = herm_eig(rho.matrix, tol)
    if w.size and w[-1] < -tol.psd:
        raise NotPSD(f"minimum eigenvalue {w[-1]:.3e} below -{tol.psd:g}")
    w = w[w > 0]
    return float(max(0.0, -np.sum(w * np.log2(w))))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def eof_from_concurrence(c: float) -> float:
    """Two-qubit entanglement of formation (ebits) as a function of concurrence."""
    if c < -1e-12 or c > 1.0 + 1e-12:
        raise OutOfRange(f"concurrence must lie in [0, 1], got {c!r}")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1.0 + np.sqrt(1.0 - c * c)) / 2.0)
