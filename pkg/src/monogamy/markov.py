"""Quantum Markov states, strong-subadditivity deficit and flag states.

Subsystem convention: the middle party B is the ordered product
B^L ⊗ B' ⊗ B^R, where B' is the block register |j><j|. A Markov state
therefore has dims [d_A, d_BL * n * d_BR, d_C].
"""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import DensityMatrix, derive_seed, haar_pure, hs_density, make_rng, partial_trace
from src.errors import BadSpec, ShapeError
from src.measures import von_neumann_entropy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkovBlock:
    q: float
    ab_left: DensityMatrix
    right_c: DensityMatrix


@dataclass(frozen=True)
class MarkovSpec:
    """Blocks (q_j, rho_j^{A B^L}, rho_j^{B^R C}) and the four factor dimensions."""
    blocks: Tuple[MarkovBlock, ...]
    d_a: int
    d_bl: int
    d_br: int
    d_c: int

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        if not self.blocks:
            raise BadSpec("a Markov spec needs at least one block")
        if min(self.d_a, self.d_bl, self.d_br, self.d_c) < 1:
            raise BadSpec("factor dimensions must be positive")
        weights = np.array([b.q for b in self.blocks], dtype=float)
        if np.any(weights < 0):
            raise BadSpec(f"block weights must be non-negative, got {weights.tolist()}")
        if abs(weights.sum() - 1.0) > tol.tr:
            raise BadSpec(f"block weights sum to {weights.sum()!r}, not 1")
        for j, block in enumerate(self.blocks):
            if block.ab_left.dim != self.d_a * self.d_bl:
                raise BadSpec(f"block {j}: rho^(A B^L) has dimension {block.ab_left.dim}, expected {self.d_a * self.d_bl}")
            if block.right_c.dim != self.d_br * self.d_c:
                raise BadSpec(f"block {j}: rho^(B^R C) has dimension {block.right_c.dim}, expected {self.d_br * self.d_c}")

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self.d_a, self.d_bl * len(self.blocks) * self.d_br, self.d_c


def markov_build(spec: MarkovSpec, tol: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """
    sum_j q_j rho_j^{A B^L} ⊗ |j><j|^{B'} ⊗ rho_j^{B^R C}.

    Raises:
        BadSpec: inconsistent weights or block dimensions
    """
    spec.validate(tol)
    n = len(spec.blocks)
    total = np.zeros((int(np.prod(spec.dims)),) * 2, dtype=np.complex128)
    for j, block in enumerate(spec.blocks):
        flag = np.zeros((n, n))
        flag[j, j] = 1.0
        total += block.q * reduce(np.kron, [block.ab_left.matrix, flag, block.right_c.matrix])
    return DensityMatrix(total, spec.dims, tol=tol)


def random_markov_spec(
    seed: int,
    n_blocks: int = 2,
    factor_dims: Sequence[int] = (2, 2, 2, 2),
    pure_blocks: bool = True,
) -> MarkovSpec:
    """
    Seeded random spec with Dirichlet block weights.

    Pure blocks keep rho^{ABC} at rank n_blocks, which keeps convex-roof
    evaluations of the A|BC cut small.
    """
    d_a, d_bl, d_br, d_c = (int(d) for d in factor_dims)
    rng = make_rng(seed)
    q = rng.dirichlet(np.ones(n_blocks))

    def draw(dims: Tuple[int, int], counter: int) -> DensityMatrix:
        child = derive_seed(seed, counter)
        if pure_blocks:
            return DensityMatrix.from_pure(haar_pure(dims, child))
        return hs_density(dims, dims[0] * dims[1], child)

    blocks = tuple(
        MarkovBlock(float(q[j]), draw((d_a, d_bl), 2 * j), draw((d_br, d_c), 2 * j + 1))
        for j in range(n_blocks)
    )
    # Dirichlet draws sum to one only up to round-off
    total = sum(b.q for b in blocks)
    blocks = tuple(MarkovBlock(b.q / total, b.ab_left, b.right_c) for b in blocks)
    return MarkovSpec(blocks, d_a, d_bl, d_br, d_c)


def _check_tripartite(rho: DensityMatrix) -> None:
    if len(rho.dims) != 3:
        raise ShapeError(f"need a tripartite state, got dims {rho.dims}")


def ssa_deficit(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """S(AB) + S(BC) - S(ABC) - S(B); zero exactly for Markov states."""
    _check_tripartite(rho)

    def s(keep: List[int]) -> float:
        return von_neumann_entropy(partial_trace(rho, keep), tol)

    return s([0, 1]) + s([1, 2]) - s([0, 1, 2]) - s([1])


def flag_state(
    ensemble: Sequence[Tuple[float, DensityMatrix]],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """
    sum_j p_j |j><j|^{A'} ⊗ sigma_j^{AB} with dims [n, d_A, d_B].

    Raises:
        BadSpec: weights not a distribution, or members of different shape
    """
    if not ensemble:
        raise BadSpec("flag state needs at least one member")
    dims = ensemble[0][1].dims
    if len(dims) != 2:
        raise BadSpec(f"members must be bipartite, got dims {dims}")
    weights = np.array([p for p, _ in ensemble], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > tol.tr:
        raise BadSpec(f"flag weights must form a distribution, got {weights.tolist()}")
    n = len(ensemble)
    total = np.zeros((n * ensemble[0][1].dim,) * 2, dtype=np.complex128)
    for j, (p, sigma) in enumerate(ensemble):
        if sigma.dims != dims:
            raise BadSpec(f"member {j} has dims {sigma.dims}, expected {dims}")
        flag = np.zeros((n, n))
        flag[j, j] = 1.0
        total += p * np.kron(flag, sigma.matrix)
    return DensityMatrix(total, (n,) + dims, tol=tol)
