"""Pure-state ensembles: isometric remixing and average entanglement."""
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import Cut, Decomposition, DensityMatrix, as_matrix, spectral_vectors
from src.errors import NotIsometry
from src.measures import MeasureId, resolve_cut

ISOMETRY_TOL = 1e-10


def to_cut_matrices(vectors: np.ndarray, dims: Sequence[int], cut: Cut) -> np.ndarray:
    """Stack of matrix forms (m, d_left, d_right) of the ensemble rows."""
    d_left, d_right = cut.dims_of(dims)
    m = vectors.shape[0]
    axes = [0] + [1 + i for i in cut.left + cut.right]
    return vectors.reshape((m,) + tuple(dims)).transpose(axes).reshape(m, d_left, d_right)


def from_cut_matrices(mats: np.ndarray, dims: Sequence[int], cut: Cut) -> np.ndarray:
    """Inverse of to_cut_matrices."""
    order = cut.left + cut.right
    m = mats.shape[0]
    permuted = mats.reshape((m,) + tuple(dims[i] for i in order))
    inverse = [0] + [1 + order.index(i) for i in range(len(dims))]
    return permuted.transpose(inverse).reshape(m, -1)


def _gram(mats: np.ndarray) -> Tuple[np.ndarray, bool]:
    """M M^dagger, or M^dagger M when the left factor is larger; flag tells which."""
    flipped = mats.shape[-2] > mats.shape[-1]
    if flipped:
        return np.swapaxes(mats, -1, -2).conj() @ mats, True
    return mats @ np.swapaxes(mats, -1, -2).conj(), False


def schmidt_weights(mats: np.ndarray) -> np.ndarray:
    """Squared singular values (..., min(d_left, d_right)) of each matrix form."""
    gram, _ = _gram(mats)
    return np.clip(np.linalg.eigvalsh(gram), 0.0, None)


def member_values(measure: MeasureId, mats: np.ndarray) -> np.ndarray:
    """Weighted measure of each ensemble member given in matrix form."""
    return measure.of_weights(schmidt_weights(mats))


def member_gradients(measure: MeasureId, mats: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Weighted values and their gradients with respect to the matrix forms.

    For F(M) = f(eig(M M^dagger)) the first-order change is
    Re tr(Gamma^dagger dM) with Gamma = 2 W diag(f') W^dagger M.

    Returns:
        (values (..., m), gradients shaped like mats)
    """
    gram, flipped = _gram(mats)
    p, w = np.linalg.eigh(gram)
    p = np.clip(p, 0.0, None)
    values = measure.of_weights(p)
    scaled = (w * measure.weights_gradient(p)[..., None, :]) @ np.swapaxes(w, -1, -2).conj()
    if flipped:
        grads = 2.0 * mats @ scaled
    else:
        grads = 2.0 * scaled @ mats
    return values, grads


def spectral_decomposition(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Decomposition:
    """Eigen-ensemble sqrt(lambda_j)|x_j>, descending eigenvalues."""
    return Decomposition(spectral_vectors(rho, tol), rho.dims)


def apply_isometry(root: Decomposition, u) -> Decomposition:
    """
    Remix an ensemble: |y_k> = sum_j u_kj |w_j>.

    Args:
        root: Ensemble of size r
        u: m x r isometry

    Raises:
        NotIsometry: if ||u^dagger u - I_r|| exceeds 1e-10
    """
    u = as_matrix(u)
    r = root.size
    if u.shape[1] != r:
        raise NotIsometry(f"isometry has {u.shape[1]} columns, ensemble has {r} vectors")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(r))))
    if defect > ISOMETRY_TOL:
        raise NotIsometry(f"u^dagger u deviates from identity by {defect:.3e}")
    return Decomposition(u @ root.vectors, root.dims)


def pad(dec: Decomposition, size: int) -> Decomposition:
    """Append zero vectors up to `size` members."""
    extra = size - dec.size
    if extra <= 0:
        return dec
    zeros = np.zeros((extra, dec.vectors.shape[1]), dtype=np.complex128)
    return Decomposition(np.vstack([dec.vectors, zeros]), dec.dims)


def decomposition_average(measure: MeasureId, dec: Decomposition, cut: Optional[Cut] = None) -> float:
    """sum_j p_j E(psi_j) with p_j the squared norms; members below 1e-14 weight are skipped."""
    cut = resolve_cut(dec.dims, cut)
    return float(member_values(measure, to_cut_matrices(dec.vectors, dec.dims, cut)).sum())
