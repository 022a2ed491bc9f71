"""Two-qubit concurrence of formation and assistance from the Wootters matrix."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import DensityMatrix, herm_eig, psd_sqrt
from src.errors import NotPSD, ShapeError

from .mixed import eof_from_concurrence

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real


@dataclass(frozen=True)
class WoottersRecord:
    """Spectrum of R = sqrt(sqrt(rho) rho~ sqrt(rho)) and the derived concurrences."""
    lambdas: Tuple[float, float, float, float]
    c_formation: float
    c_assistance: float
    r_rank: int

    @property
    def eof(self) -> float:
        """Entanglement of formation in ebits."""
        return eof_from_concurrence(self.c_formation)

    @property
    def equal(self) -> bool:
        """Formation equals assistance (rank-one R)."""
        return self.r_rank == 1


def _check_two_qubit(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise ShapeError(f"Wootters analysis needs dims (2, 2), got {rho.dims}")


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """rho~ = (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)."""
    _check_two_qubit(rho)
    return SPIN_FLIP @ rho.matrix.conj() @ SPIN_FLIP


def wootters_matrix(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """R built literally through psd_sqrt."""
    root = psd_sqrt(rho.matrix, tol)
    inner = root @ spin_flip(rho) @ root
    return psd_sqrt((inner + inner.conj().T) / 2, tol)


def wootters_analysis(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> WoottersRecord:
    """
    Eigenvalues of R and the closed-form concurrences.

    The eigenvalues of R equal the singular values of tau = X^T (sigma_y ⊗ sigma_y) X
    for any factor rho = X X^dagger; the SVD route keeps vanishing eigenvalues at
    round-off level instead of at its square root.
    """
    _check_two_qubit(rho)
    w, v = herm_eig(rho.matrix, tol)
    if w[-1] < -tol.psd:
        raise NotPSD(f"minimum eigenvalue {w[-1]:.3e} below -{tol.psd:g}")
    x = v * np.sqrt(np.clip(w, 0.0, None))
    tau = x.T @ SPIN_FLIP @ x
    lambdas = np.linalg.svd(tau, compute_uv=False)
    l1 = float(lambdas[0])
    c_formation = max(0.0, l1 - float(lambdas[1:].sum()))
    c_assistance = float(lambdas.sum())
    r_rank = int(np.count_nonzero(lambdas > tol.rank * l1)) if l1 > 0 else 0
    return WoottersRecord(
        lambdas=tuple(float(x) for x in lambdas),
        c_formation=c_formation,
        c_assistance=c_assistance,
        r_rank=r_rank,
    )
