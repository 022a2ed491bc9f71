"""Dense complex linear algebra on tensor-structured states."""
from typing import Iterable, Optional, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.errors import IndexOutOfRange, NotHermitian, NotPSD, ShapeError

from .states import ComplexMatrix, Cut, DensityMatrix, PureState, as_matrix

# relative eigenvalue floor below which a direction is outside the support
SPECTRAL_FLOOR = 1e-12


def tensor(a, b) -> ComplexMatrix:
    """Kronecker product a ⊗ b."""
    return np.kron(as_matrix(a), as_matrix(b))


def _check_index(i: int, n: int) -> int:
    if not 0 <= int(i) < n:
        raise IndexOutOfRange(f"subsystem {i} does not exist (have {n})")
    return int(i)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """
    Reduce rho onto the kept subsystems.

    Args:
        rho: State on len(rho.dims) subsystems
        keep: Subsystem indices to keep; output follows their original order

    Returns:
        Reduced DensityMatrix (trace preserved)
    """
    dims = rho.dims
    n = len(dims)
    kept = sorted({_check_index(i, n) for i in keep})
    if len(kept) == n:
        return rho
    t = rho.matrix.reshape(dims + dims)
    rows = list(range(n))
    cols = [i if i not in kept else n + i for i in range(n)]
    out = kept + [n + i for i in kept]
    reduced = np.einsum(t, rows + cols, out)
    d = int(np.prod([dims[i] for i in kept]))
    return DensityMatrix(reduced.reshape(d, d), tuple(dims[i] for i in kept), check=False)


def reduce_pure(psi: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state of the normalized pure state psi on the kept subsystems."""
    dims = psi.dims
    n = len(dims)
    kept = sorted({_check_index(i, n) for i in keep})
    traced = [i for i in range(n) if i not in kept]
    t = psi.amplitudes.reshape(dims).transpose(kept + traced)
    d = int(np.prod([dims[i] for i in kept]))
    m = t.reshape(d, -1)
    m = m / np.sqrt(psi.norm2)
    return DensityMatrix(m @ m.conj().T, tuple(dims[i] for i in kept), check=False)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> ComplexMatrix:
    """Transpose on one tensor factor; the result may be non-PSD."""
    return partial_transpose_group(rho, [subsystem])


def partial_transpose_group(rho: DensityMatrix, subsystems: Iterable[int]) -> ComplexMatrix:
    """Transpose on every listed factor."""
    dims = rho.dims
    n = len(dims)
    t = rho.matrix.reshape(dims + dims)
    for i in {_check_index(s, n) for s in subsystems}:
        t = np.swapaxes(t, i, n + i)
    return t.reshape(rho.dim, rho.dim)


def regroup(rho: DensityMatrix, cut: Cut) -> DensityMatrix:
    """Reorder subsystems as (left, right) and fuse each side into one factor."""
    dims = rho.dims
    d_left, d_right = cut.dims_of(dims)
    n = len(dims)
    order = list(cut.left + cut.right)
    t = rho.matrix.reshape(dims + dims).transpose(order + [n + i for i in order])
    d = d_left * d_right
    return DensityMatrix(t.reshape(d, d), (d_left, d_right), check=False)


def herm_eig(h, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[np.ndarray, ComplexMatrix]:
    """
    Eigendecomposition of a Hermitian matrix.

    Returns:
        (eigenvalues in descending order, orthonormal eigenvector columns)

    Raises:
        NotHermitian: if max |h - h^dagger| exceeds tol.herm
    """
    m = as_matrix(h, square=True)
    if m.size and float(np.max(np.abs(m - m.conj().T))) > tol.herm:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    order = np.argsort(-w, kind='stable')
    return w[order], v[:, order]


def psd_sqrt(p, tol: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    """Principal square root of a PSD matrix, clipping round-off negatives to zero."""
    w, v = herm_eig(p, tol)
    if w.size and w[-1] < -tol.psd:
        raise NotPSD(f"minimum eigenvalue {w[-1]:.3e} below -{tol.psd:g}")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root) @ v.conj().T


def bipartite_reshape(psi: PureState, cut: Optional[Cut] = None) -> Tuple[ComplexMatrix, np.ndarray]:
    """
    Matrix form X of psi with psi = (X ⊗ I)|phi+>, |phi+> = sum_i |ii> unnormalized.

    Args:
        psi: Pure state; must have exactly two factors unless a cut is given
        cut: Optional grouping of subsystems into the two factors

    Returns:
        (X of shape d_A x d_B, singular values of X in descending order)
    """
    dims = psi.dims
    if cut is None:
        if len(dims) != 2:
            raise ShapeError(f"need two factors or an explicit cut, got dims {dims}")
        x = psi.amplitudes.reshape(dims)
    else:
        d_left, d_right = cut.dims_of(dims)
        t = psi.amplitudes.reshape(dims).transpose(list(cut.left) + list(cut.right))
        x = t.reshape(d_left, d_right)
    return x, np.linalg.svd(x, compute_uv=False)


def matrix_to_state(x, normalized: bool = False) -> PureState:
    """Inverse of bipartite_reshape: vec(X) on C^{rows} ⊗ C^{cols}."""
    m = as_matrix(x)
    return PureState(m.reshape(-1), m.shape, normalized=normalized)


def trace_norm(a) -> float:
    """Sum of singular values."""
    m = as_matrix(a, square=True)
    return float(np.linalg.svd(m, compute_uv=False).sum())


def spectral_vectors(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Subnormalized eigenvectors sqrt(lambda_j)|x_j> as rows, eigenvalues above round-off.

    The rows form the spectral decomposition used as the canonical ensemble.
    """
    w, v = herm_eig(rho.matrix, tol)
    if w[-1] < -tol.psd:
        raise NotPSD(f"minimum eigenvalue {w[-1]:.3e} below -{tol.psd:g}")
    keep = w > SPECTRAL_FLOOR * max(w[0], 0.0)
    if not np.any(keep):
        raise NotPSD("state has no positive eigenvalue")
    return (v[:, keep] * np.sqrt(w[keep])).T


def rank(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    return spectral_vectors(rho, tol).shape[0]
