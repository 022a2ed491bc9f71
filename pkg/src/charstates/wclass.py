"""W-class states, product-split detection and sampling inside a support."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import DensityMatrix, PureState, ginibre, herm_eig, make_rng, reduce_pure
from src.core.linalg import SPECTRAL_FLOOR
from src.errors import NotNormalized, ShapeError

# amplitude index of |100>, |010>, |001>, |000> on three qubits
W_CLASS_INDICES = (4, 2, 1, 0)
PURITY_TOL = 1e-9


def w_class_state(l1: complex, l2: complex, l3: complex, l4: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> PureState:
    """l1|100> + l2|010> + l3|001> + l4|000>."""
    lambdas = np.array([l1, l2, l3, l4], dtype=np.complex128)
    norm2 = float(np.vdot(lambdas, lambdas).real)
    if abs(norm2 - 1.0) > tol.tr:
        raise NotNormalized(f"sum |lambda_i|^2 = {norm2!r}, expected 1")
    amplitudes = np.zeros(8, dtype=np.complex128)
    amplitudes[list(W_CLASS_INDICES)] = lambdas
    return PureState(amplitudes, (2, 2, 2), tol=tol)


def random_w_class(seed: int) -> PureState:
    lambdas = ginibre(4, 1, seed).reshape(-1)
    return w_class_state(*(lambdas / np.linalg.norm(lambdas)))


@dataclass(frozen=True)
class ProductSplit:
    """Outcome of the |chi>^{AB} ⊗ |phi>^C test; factors only when is_product."""
    is_product: bool
    purity: float
    chi: Optional[PureState] = None
    phi: Optional[PureState] = None


def product_split_check(psi: PureState, tol: float = PURITY_TOL) -> ProductSplit:
    """
    Decide whether psi = |chi>^{AB} |phi>^C from the purity of rho^C.

    Args:
        psi: Normalized state on (A, B, C)
        tol: Product when Tr[(rho^C)^2] > 1 - tol

    Returns:
        ProductSplit; chi is the AB vector conditioned on the dominant
        eigenvector phi of rho^C
    """
    if len(psi.dims) != 3:
        raise ShapeError(f"product split needs dims (d_A, d_B, d_C), got {psi.dims}")
    rho_c = reduce_pure(psi, [2]).matrix
    purity = float(np.real(np.trace(rho_c @ rho_c)))
    if purity <= 1.0 - tol:
        return ProductSplit(False, purity)
    _, v = herm_eig(rho_c)
    phi = v[:, 0]
    d_ab = psi.dims[0] * psi.dims[1]
    chi = psi.amplitudes.reshape(d_ab, psi.dims[2]) @ phi.conj()
    chi = chi / np.linalg.norm(chi)
    return ProductSplit(
        True,
        purity,
        chi=PureState(chi, psi.dims[:2]),
        phi=PureState(phi, (psi.dims[2],)),
    )


def support_projector(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    w, v = herm_eig(rho.matrix, tol)
    basis = v[:, w > SPECTRAL_FLOOR * max(w[0], 0.0)]
    return basis @ basis.conj().T


def support_leakage(rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """||(I - P) sigma (I - P)|| with P the support projector of rho."""
    outside = np.eye(rho.dim) - support_projector(rho, tol)
    return float(np.linalg.norm(outside @ sigma.matrix @ outside, 2))


def sample_in_support(rho: DensityMatrix, seed: int, tol: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """
    Random state whose support lies in supp(rho).

    The state is V G G^dagger V^dagger / trace with V an orthonormal support
    basis and G a Ginibre matrix; a pure rho is returned unchanged.
    """
    w, v = herm_eig(rho.matrix, tol)
    basis = v[:, w > SPECTRAL_FLOOR * max(w[0], 0.0)]
    k = basis.shape[1]
    if k == 1:
        return rho
    g = ginibre(k, k, make_rng(seed))
    inner = g @ g.conj().T
    sigma = basis @ inner @ basis.conj().T
    sigma = (sigma + sigma.conj().T) / 2
    return DensityMatrix(sigma / np.trace(sigma).real, rho.dims, tol=tol)
