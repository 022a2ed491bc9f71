"""States whose G-concurrence is the same on every pure-state decomposition.

Supports of the form X·K with K = span{I} ⊕ N0 (N0 a nilpotent subspace) give
det(X(aI + N)) = a^d det X for every member, so the average G of any ensemble
only depends on the I-components, which an isometry preserves in norm.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import ComplexMatrix, Decomposition, DensityMatrix, as_matrix, derive_seed, ginibre, make_rng
from src.errors import BadSpec

from .nilpotent import NilpotentSubspace, gerstenhaber_bound, is_nilpotent, nilpotent_subspace


@dataclass(frozen=True, eq=False)
class GMonoSpec:
    """Head W1 = cX + XZ1 and tail W_j = XZ_j, Z_j from the nilpotent subspace."""
    x: ComplexMatrix
    c: complex
    tail: NilpotentSubspace
    z1: Optional[ComplexMatrix] = None

    @property
    def d(self) -> int:
        return self.x.shape[0]

    @property
    def r(self) -> int:
        return 1 + self.tail.dimension

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        x = as_matrix(self.x, square=True)
        d = x.shape[0]
        if abs(np.linalg.det(x)) <= tol.det:
            raise BadSpec("X must be invertible")
        if self.c == 0:
            raise BadSpec("c must be nonzero")
        if self.tail.d != d:
            raise BadSpec(f"tail matrices are {self.tail.d}x{self.tail.d}, X is {d}x{d}")
        if self.tail.dimension > gerstenhaber_bound(d):
            raise BadSpec(f"tail size {self.tail.dimension} exceeds d(d-1)/2 = {gerstenhaber_bound(d)}")
        if any(not is_nilpotent(z) for z in self.tail.basis):
            raise BadSpec("tail contains a matrix that is not nilpotent")
        if self.z1 is not None:
            if not is_nilpotent(self.z1):
                raise BadSpec("Z1 is not nilpotent")
            if self.tail.dimension and not self.tail.contains(self.z1):
                raise BadSpec("Z1 must lie in the nilpotent space of the tail")

    def matrices(self) -> np.ndarray:
        """W_1, ..., W_r stacked as (r, d, d)."""
        x = as_matrix(self.x, square=True)
        z1 = np.zeros_like(x) if self.z1 is None else as_matrix(self.z1, square=True)
        head = self.c * x + x @ z1
        return np.stack([head] + [x @ z for z in self.tail.basis])


def _check_weights(spec: GMonoSpec, weights: Sequence[float]) -> np.ndarray:
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size != spec.r:
        raise BadSpec(f"need {spec.r} weights, got {w.size}")
    if np.any(w <= 0):
        raise BadSpec("weights must be positive")
    return w


def gmono_decomposition(spec: GMonoSpec, weights: Sequence[float], tol: Tolerances = DEFAULT_TOLERANCES) -> Decomposition:
    """Generating ensemble sqrt(weight_j) vec(W_j), scaled to unit total weight."""
    spec.validate(tol)
    w = _check_weights(spec, weights)
    vectors = np.sqrt(w)[:, None] * spec.matrices().reshape(spec.r, -1)
    vectors /= np.linalg.norm(vectors)
    return Decomposition(vectors, (spec.d, spec.d))


def gmono_state(spec: GMonoSpec, weights: Sequence[float], tol: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """
    Trace-one state sum_j weight_j |W_j><W_j| (up to normalization) on C^d ⊗ C^d.

    Raises:
        BadSpec: invalid spec or weights
    """
    dec = gmono_decomposition(spec, weights, tol)
    rho = dec.reconstruct()
    return DensityMatrix((rho + rho.conj().T) / 2, dec.dims, tol=tol)


def gmono_expected_average(spec: GMonoSpec, weights: Sequence[float]) -> float:
    """
    Common average G of every decomposition of gmono_state(spec, weights):
    |det X|^{2/d} |c|^2 weight_1 / sum_j weight_j ||W_j||_F^2.
    """
    w = _check_weights(spec, weights)
    norms = np.einsum('kij,kij->k', spec.matrices().conj(), spec.matrices()).real
    share = w[0] / float(np.dot(w, norms))
    d = spec.d
    return float(abs(np.linalg.det(as_matrix(spec.x))) ** (2.0 / d) * abs(spec.c) ** 2 * share)


def random_gmono_spec(d: int, r: int, seed: int) -> GMonoSpec:
    """Ginibre X, complex c and an (r-1)-dimensional nilpotent tail."""
    rng = make_rng(derive_seed(seed, 0))
    c = complex(rng.standard_normal() + 1j * rng.standard_normal())
    x = ginibre(d, d, derive_seed(seed, 1))
    tail = nilpotent_subspace(d, r - 1, derive_seed(seed, 2))
    return GMonoSpec(x=x, c=c, tail=tail)


def random_weights(r: int, seed: int) -> np.ndarray:
    """Positive weights bounded away from zero."""
    return 0.2 + make_rng(seed).random(r)
