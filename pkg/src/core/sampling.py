"""Seeded random states, isometries and Ginibre matrices.

All randomness is drawn from numpy Generators built from an explicit seed, so
equal seeds give bit-identical output.
"""
from typing import Optional, Sequence, Union

import numpy as np

from src.errors import ShapeError

from .states import ComplexMatrix, DensityMatrix, PureState

SeedLike = Union[int, np.random.Generator]

_MASK64 = (1 << 64) - 1


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(int(seed) & _MASK64))


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for counter `index`; stable across thread counts."""
    child = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=(int(index),))
    return int(child.generate_state(1, dtype=np.uint64)[0])


def ginibre(rows: int, cols: int, seed: SeedLike) -> ComplexMatrix:
    """Matrix of i.i.d. standard complex Gaussian entries."""
    if rows < 1 or cols < 1:
        raise ShapeError(f"ginibre shape must be positive, got {rows}x{cols}")
    rng = make_rng(seed)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_pure(dims: Sequence[int], seed: SeedLike) -> PureState:
    d = int(np.prod(dims))
    v = ginibre(d, 1, seed).reshape(-1)
    return PureState(v / np.linalg.norm(v), tuple(dims))


def hs_density(dims: Sequence[int], rank: int, seed: SeedLike) -> DensityMatrix:
    """Partial trace of a Haar pure state on C^D ⊗ C^rank over the environment."""
    d = int(np.prod(dims))
    if not 1 <= rank <= d:
        raise ShapeError(f"rank must lie in [1, {d}], got {rank}")
    m = ginibre(d, rank, seed)
    rho = m @ m.conj().T
    return DensityMatrix(rho / np.trace(rho).real, tuple(dims), check=False)


def random_isometry(m: int, r: int, seed: SeedLike) -> ComplexMatrix:
    """
    m x r isometry from the QR factor of a Ginibre matrix.

    Columns are rephased so diag(R) is positive, making the output a
    deterministic function of the seed.
    """
    if m < r:
        raise ShapeError(f"isometry needs m >= r, got {m} < {r}")
    q, upper = np.linalg.qr(ginibre(m, r, seed))
    phases = np.diagonal(upper).copy()
    phases[np.abs(phases) == 0] = 1.0
    return q * (phases / np.abs(phases))


def random_unitary(d: int, seed: SeedLike) -> ComplexMatrix:
    return random_isometry(d, d, seed)


def sample(
    kind: str,
    seed: SeedLike,
    dims: Optional[Sequence[int]] = None,
    rank: Optional[int] = None,
    rows: Optional[int] = None,
    cols: Optional[int] = None,
):
    """
    Dispatch to a sampler by name.

    Args:
        kind: 'haar_pure' | 'hs_density' | 'isometry' | 'ginibre'
        seed: 64-bit integer seed or Generator
        dims: Subsystem dimensions (haar_pure, hs_density)
        rank: Environment dimension for hs_density (default: full rank)
        rows, cols: Matrix shape for isometry (m = rows, r = cols) and ginibre
    """
    if kind == 'haar_pure':
        if not dims:
            raise ShapeError("haar_pure needs dims")
        return haar_pure(dims, seed)
    if kind == 'hs_density':
        if not dims:
            raise ShapeError("hs_density needs dims")
        return hs_density(dims, rank if rank is not None else int(np.prod(dims)), seed)
    if kind in ('isometry', 'ginibre'):
        if rows is None or cols is None:
            raise ShapeError(f"{kind} needs rows and cols")
        if kind == 'isometry':
            return random_isometry(rows, cols, seed)
        return ginibre(rows, cols, seed)
    raise ShapeError(f"unknown sample kind {kind!r}")
