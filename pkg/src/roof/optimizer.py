"""Convex-roof optimization over pure-state decompositions.

Entanglement of formation (mode 'min') and of assistance (mode 'max') are
searched over ensembles y = V w obtained from the spectral ensemble w by
m x r isometries V. Each start runs Riemannian conjugate gradient on the
set of isometries: the Euclidean gradient comes from the Schmidt weights of
the members, is projected onto the tangent space at V, and a ladder of step
lengths along the search direction is tried at once, mapped back onto the
isometries by the polar factor. Starts are optimized in fixed blocks so the
outcome does not depend on the worker count.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import Cut, Decomposition, DensityMatrix, derive_seed, random_isometry
from src.errors import BadSpec
from src.measures import MeasureId, resolve_cut

from .decomposition import (
    decomposition_average,
    member_gradients,
    member_values,
    spectral_decomposition,
    to_cut_matrices,
)

logger = logging.getLogger(__name__)

MODES = ('min', 'max')

# starts optimized together
_BLOCK = 8
# trial step lengths relative to the current one
_LADDER = 2.0 ** np.arange(1, -6, -1)
_INITIAL_STEP = 0.25
_MAX_STEP = 2.0
# consecutive sweeps without real gain before a start counts as converged
_STALL_SWEEPS = 3
_GRADIENT_TOL = 1e-13


@dataclass(frozen=True)
class RoofConfig:
    """Optimizer settings; ensemble_size None means rank(rho)^2."""
    ensemble_size: Optional[int] = None
    restarts: int = 20
    max_iterations: int = 2000
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-10
    seed: int = 0
    threads: int = 1

    def size_for(self, rank: int) -> int:
        m = self.ensemble_size if self.ensemble_size is not None else rank * rank
        if m < rank:
            raise BadSpec(f"ensemble size {m} is smaller than rank {rank}")
        return m


@dataclass(frozen=True)
class RoofResult:
    """Best decomposition found and its average entanglement."""
    value: float
    decomposition: Decomposition
    mode: str
    converged: bool
    restarts_used: int


def _dagger(a: np.ndarray) -> np.ndarray:
    return np.swapaxes(a, -1, -2).conj()


def _inner(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Real inner product Re tr(a^dagger b) over the last two axes."""
    return np.einsum('...ij,...ij->...', a.conj(), b).real


def _project(v: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Tangent part of z at the isometry v."""
    s = _dagger(v) @ z
    return z - v @ ((s + _dagger(s)) / 2.0)


def _polar(x: np.ndarray) -> np.ndarray:
    """Closest isometry x (x^dagger x)^(-1/2); x^dagger x >= 1 along tangent steps."""
    lam, q = np.linalg.eigh(_dagger(x) @ x)
    return x @ ((q / np.sqrt(lam)[..., None, :]) @ _dagger(q))


class _Objective:
    """sign * sum_k E(y_k) as a function of the mixing isometries."""

    def __init__(self, root_mats: np.ndarray, measure: MeasureId, sign: float):
        self.r, self.d_left, self.d_right = root_mats.shape
        self.flat = root_mats.reshape(self.r, -1)
        self.measure = measure
        self.sign = sign

    def members(self, v: np.ndarray) -> np.ndarray:
        mats = v @ self.flat
        return mats.reshape(mats.shape[:-1] + (self.d_left, self.d_right))

    def value(self, v: np.ndarray) -> np.ndarray:
        with np.errstate(divide='ignore', invalid='ignore'):
            return self.sign * member_values(self.measure, self.members(v)).sum(axis=-1)

    def value_and_gradient(self, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Objective and its Riemannian gradient at v."""
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            values, grads = member_gradients(self.measure, self.members(v))
        flat = grads.reshape(grads.shape[:-2] + (-1,))
        euclidean = self.sign * (flat @ self.flat.conj().T)
        return self.sign * values.sum(axis=-1), _project(v, euclidean)


def _descend(v: np.ndarray, objective: _Objective, cfg: RoofConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Conjugate gradient on a block of starts.

    Args:
        v: (b, m, r) starting isometries

    Returns:
        (final isometries, converged flags)
    """
    b = v.shape[0]
    f, grad = objective.value_and_gradient(v)
    direction = -grad
    step = np.full(b, _INITIAL_STEP)
    active = np.ones(b, dtype=bool)
    converged = np.zeros(b, dtype=bool)
    stall = np.zeros(b, dtype=int)
    rows = np.arange(b)

    for sweep in range(cfg.max_iterations):
        small = np.sqrt(_inner(grad, grad)) <= _GRADIENT_TOL
        converged |= active & small
        active &= ~small
        if not active.any():
            break

        # fall back to steepest descent when the direction stopped descending
        downhill = _inner(grad, direction) < 0.0
        direction = np.where(downhill[:, None, None], direction, -grad)
        length = np.sqrt(_inner(direction, direction))
        unit = direction / np.where(length > 0.0, length, 1.0)[:, None, None]

        trials = np.minimum(step[None, :] * _LADDER[:, None], _MAX_STEP)
        points = _polar(v[None] + trials[..., None, None] * unit[None])
        values = objective.value(points)
        pick = np.argmin(values, axis=0)
        best = values[pick, rows]
        gain = f - best
        moved = active & (gain > 0.0)

        # next ladder starts just below the bottom of this one
        step = np.where(moved, trials[pick, rows], step * _LADDER[-1] / 4.0)
        tiny = active & ~moved & (step < cfg.step_tolerance)
        converged |= tiny
        active &= ~tiny

        flat = active & (gain <= cfg.value_tolerance * np.maximum(1.0, np.abs(f)))
        stall = np.where(flat, stall + 1, 0)
        done = stall >= _STALL_SWEEPS
        converged |= done
        active &= ~done

        if moved.any():
            new_v = np.where(moved[:, None, None], points[pick, rows], v)
            new_f, new_grad = objective.value_and_gradient(new_v)
            old_grad = _project(new_v, grad)
            old_dir = _project(new_v, direction)
            norm = _inner(grad, grad)
            beta = np.maximum(0.0, _inner(new_grad, new_grad - old_grad) / np.where(norm > 0.0, norm, 1.0))
            new_dir = -new_grad + beta[:, None, None] * old_dir
            v = new_v
            f = np.where(moved, new_f, f)
            grad = np.where(moved[:, None, None], new_grad, grad)
            direction = np.where(moved[:, None, None], new_dir, -grad)
        else:
            direction = -grad
        logger.debug(f"sweep {sweep}: best objective {f.min():.12g}, {int(active.sum())} starts active")

    return v, converged


def _start(index: int, r: int, size: int, cfg: RoofConfig) -> np.ndarray:
    """Start 0 is the spectral ensemble padded with zero members; the rest are seeded isometries."""
    if index == 0:
        return np.eye(size, r, dtype=np.complex128)
    return random_isometry(size, r, derive_seed(cfg.seed, index))


def roof_optimize(
    rho: DensityMatrix,
    measure: MeasureId,
    cut: Optional[Cut] = None,
    mode: str = 'min',
    cfg: RoofConfig = RoofConfig(),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> RoofResult:
    """
    Local optimum of the decomposition average, best of cfg.restarts starts.

    The first start is the spectral decomposition (padded with zero vectors);
    the others are random isometric remixes seeded from cfg.seed. Blocks of
    starts may run on cfg.threads workers; the merge keeps the best value
    with ties going to the lower restart index.

    Args:
        rho: State to decompose
        measure: Pure-state functional
        cut: Bipartition (optional for two-factor states)
        mode: 'min' for formation, 'max' for assistance
        cfg: Optimizer settings
        tol: Tolerances for the spectral decomposition of rho

    Returns:
        RoofResult; non-convergence is reported through the flag, not raised
    """
    if mode not in MODES:
        raise BadSpec(f"mode must be 'min' or 'max', got {mode!r}")
    cut = resolve_cut(rho.dims, cut)
    root = spectral_decomposition(rho, tol)
    size = cfg.size_for(root.size)
    sign = 1.0 if mode == 'min' else -1.0
    restarts = 1 if root.size == 1 else max(1, cfg.restarts)
    objective = _Objective(to_cut_matrices(root.vectors, root.dims, cut), measure, sign)

    def run(first: int) -> Tuple[np.ndarray, np.ndarray]:
        block = np.stack([_start(i, root.size, size, cfg) for i in range(first, min(first + _BLOCK, restarts))])
        if size == 1:
            return block, np.ones(len(block), dtype=bool)
        return _descend(block, objective, cfg)

    firsts = list(range(0, restarts, _BLOCK))
    if cfg.threads > 1 and len(firsts) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            blocks: List[Tuple[np.ndarray, np.ndarray]] = list(pool.map(run, firsts))
    else:
        blocks = [run(first) for first in firsts]
    isometries = np.concatenate([v for v, _ in blocks])
    flags = np.concatenate([c for _, c in blocks])

    best_index, best_value, best_dec = 0, None, None
    for i in range(restarts):
        dec = Decomposition(isometries[i] @ root.vectors, root.dims)
        value = decomposition_average(measure, dec, cut)
        if best_value is None or sign * value < sign * best_value:
            best_index, best_value, best_dec = i, value, dec

    converged = bool(flags[best_index])
    if not converged:
        logger.warning(
            f"roof_optimize({measure}, {mode}) hit max_iterations={cfg.max_iterations} "
            f"on the best restart {best_index}"
        )
    return RoofResult(
        value=float(best_value),
        decomposition=best_dec,
        mode=mode,
        converged=converged,
        restarts_used=restarts,
    )
