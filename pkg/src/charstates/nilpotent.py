"""Nilpotent matrices and linear subspaces of the nilpotent cone.

Every maximal subspace of nilpotent d x d matrices has dimension d(d-1)/2 and
is similar to the strictly upper triangular matrices, so random subspaces are
drawn as S T S^{-1} with T strictly upper triangular.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from src.core import ComplexMatrix, as_matrix, derive_seed, ginibre
from src.errors import DimensionTooLarge, OutOfRange

logger = logging.getLogger(__name__)

NILPOTENT_TOL = 1e-9
MAX_CONDITION = 1e3
_MAX_CONJUGATOR_DRAWS = 1000


def is_nilpotent(n, tol: float = NILPOTENT_TOL) -> bool:
    """
    True when n is nilpotent within tol.

    Two tests run: the characteristic polynomial coefficients c_k (from the
    eigenvalues) must satisfy |c_k| <= tol (1 + ||n||)^k, and ||n^d|| must be
    below tol (1 + ||n||)^d. A disagreement is logged and counts as False.
    """
    m = as_matrix(n, square=True)
    d = m.shape[0]
    scale = 1.0 + float(np.linalg.norm(m, 2))
    coeffs = np.poly(np.linalg.eigvals(m))[1:]
    spectral = bool(np.all(np.abs(coeffs) <= tol * scale ** np.arange(1, d + 1)))
    power = float(np.linalg.norm(np.linalg.matrix_power(m, d), 2)) <= tol * scale ** d
    if spectral != power:
        logger.warning(
            f"⚠️  Nilpotency tests disagree on a {d}x{d} matrix "
            f"(characteristic polynomial: {spectral}, d-th power: {power})"
        )
    return spectral and power


def gerstenhaber_bound(d: int) -> int:
    """Largest dimension of a linear space of d x d nilpotent matrices."""
    return d * (d - 1) // 2


def strictly_upper_basis(d: int) -> np.ndarray:
    """Matrix units E_ij, i < j, stacked as (d(d-1)/2, d, d)."""
    rows, cols = np.triu_indices(d, k=1)
    units = np.zeros((rows.size, d, d), dtype=np.complex128)
    units[np.arange(rows.size), rows, cols] = 1.0
    return units


@dataclass(frozen=True, eq=False)
class NilpotentSubspace:
    """HS-orthonormal basis of a subspace of S T S^{-1}."""
    d: int
    basis: Tuple[ComplexMatrix, ...]
    conjugator: Optional[ComplexMatrix] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combination(self, coefficients: Sequence[complex]) -> ComplexMatrix:
        coefficients = np.asarray(coefficients, dtype=np.complex128)
        if coefficients.shape != (self.dimension,):
            raise OutOfRange(f"need {self.dimension} coefficients, got shape {coefficients.shape}")
        if not self.basis:
            return np.zeros((self.d, self.d), dtype=np.complex128)
        return np.tensordot(coefficients, np.stack(self.basis), axes=1)

    def random_element(self, seed: int) -> ComplexMatrix:
        return self.combination(ginibre(max(self.dimension, 1), 1, seed).reshape(-1)[: self.dimension])

    def contains(self, z, tol: float = NILPOTENT_TOL) -> bool:
        """z lies in the enclosing maximal space S T S^{-1} (needs the conjugator)."""
        if self.conjugator is None:
            return False
        s = self.conjugator
        t = np.linalg.solve(s, as_matrix(z, square=True)) @ s
        lower = np.tril(t)
        return float(np.linalg.norm(lower)) <= tol * (1.0 + float(np.linalg.norm(t)))


def _conjugator(d: int, seed: int) -> ComplexMatrix:
    for attempt in range(_MAX_CONJUGATOR_DRAWS):
        s = ginibre(d, d, derive_seed(seed, attempt))
        if np.linalg.cond(s) <= MAX_CONDITION:
            return s
    raise OutOfRange(f"no conjugator with condition number <= {MAX_CONDITION:g} in {_MAX_CONJUGATOR_DRAWS} draws")


def nilpotent_subspace(d: int, r_minus_1: int, seed: int) -> NilpotentSubspace:
    """
    Random r_minus_1-dimensional subspace of S T S^{-1}.

    Args:
        d: Matrix size
        r_minus_1: Subspace dimension, at most d(d-1)/2
        seed: Root seed for the conjugator and the subspace

    Raises:
        DimensionTooLarge: r_minus_1 exceeds d(d-1)/2
    """
    if d < 1:
        raise OutOfRange(f"matrix size must be positive, got {d}")
    if r_minus_1 < 0:
        raise OutOfRange(f"subspace dimension must be >= 0, got {r_minus_1}")
    bound = gerstenhaber_bound(d)
    if r_minus_1 > bound:
        raise DimensionTooLarge(f"nilpotent subspaces of {d}x{d} matrices have dimension <= {bound}, asked for {r_minus_1}")

    s = _conjugator(d, derive_seed(seed, 0))
    if r_minus_1 == 0:
        return NilpotentSubspace(d, (), s)

    units = strictly_upper_basis(d)
    coords, _ = np.linalg.qr(ginibre(bound, r_minus_1, derive_seed(seed, 1)))
    uppers = np.tensordot(coords.T, units, axes=1)
    s_inv = scipy.linalg.inv(s)
    conjugated = np.stack([s @ t @ s_inv for t in uppers])

    # Hilbert-Schmidt orthonormalization stays inside the span
    q, _ = np.linalg.qr(conjugated.reshape(r_minus_1, d * d).T)
    basis = tuple(q[:, k].reshape(d, d) for k in range(r_minus_1))
    logger.debug(f"nilpotent subspace d={d} dim={r_minus_1}, cond(S)={np.linalg.cond(s):.1f}")
    return NilpotentSubspace(d, basis, s)
