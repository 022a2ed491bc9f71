"""Empirical monogamy exponent over a population of tripartite pure states."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from src.core import DensityMatrix, PureState, derive_seed, haar_pure
from src.errors import ShapeError

from .evaluators import MonogamyEvaluators
from .report import MonogamyReport, open_question_candidate, report_from_values

logger = logging.getLogger(__name__)

HISTOGRAM_BINS = 20


@dataclass
class ExponentScanResult:
    """Largest gamma found, the state attaining it and the gamma histogram."""
    alpha_hat: float
    worst_state: Optional[PureState]
    worst_label: str
    worst_index: int
    evaluated: int
    skipped: int
    witnesses: int
    histogram: List[int] = field(default_factory=list)
    bin_edges: List[float] = field(default_factory=list)


def _basis_state(dims: Sequence[int], amplitudes) -> PureState:
    v = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    t = v.reshape(dims)
    for index, amp in amplitudes:
        t[index] = amp
    return PureState(v / np.linalg.norm(v), tuple(dims))


def special_states(dims: Sequence[int]) -> List[Tuple[str, PureState]]:
    """W, GHZ, product and A|B-entangled biseparable states on the given dims."""
    if len(dims) != 3 or min(dims) < 2:
        raise ShapeError(f"special states need three subsystems of dimension >= 2, got {tuple(dims)}")
    k = min(dims)
    return [
        ('w', _basis_state(dims, [((1, 0, 0), 1.0), ((0, 1, 0), 1.0), ((0, 0, 1), 1.0)])),
        ('ghz', _basis_state(dims, [((i, i, i), 1.0) for i in range(k)])),
        ('product', _basis_state(dims, [((0, 0, 0), 1.0)])),
        ('biseparable', _basis_state(dims, [((0, 0, 0), 1.0), ((1, 1, 0), 1.0)])),
    ]


def exponent_scan(
    dims: Sequence[int],
    evaluators: MonogamyEvaluators,
    n_samples: int,
    seed: int,
    include_special: bool = True,
    threads: int = 1,
    progress: bool = False,
) -> ExponentScanResult:
    """
    Maximum of the per-state exponent gamma over sampled tripartite pure states.

    The special roster (when included) comes first, then Haar samples whose
    seeds are derive_seed(seed, i). States with E(A|BC) below 1e-8 are
    skipped; a state with one ratio equal to one and the other positive
    counts as gamma = inf. Ties go to the lower index.

    Args:
        dims: Three subsystem dimensions
        evaluators: Evaluator triple for the measure family
        n_samples: Number of Haar samples (may be 0 with include_special)
        seed: Root seed
        include_special: Prepend the W, GHZ, product and biseparable roster
        threads: Worker count; the result does not depend on it
        progress: Show a tqdm progress bar

    Returns:
        ExponentScanResult
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3:
        raise ShapeError(f"exponent_scan needs three subsystems, got {dims}")
    roster = special_states(dims) if include_special else []
    total = len(roster) + max(0, int(n_samples))

    def state_at(i: int) -> Tuple[str, PureState]:
        if i < len(roster):
            return roster[i]
        j = i - len(roster)
        return f"haar[{j}]", haar_pure(dims, derive_seed(seed, j))

    def evaluate(i: int) -> Tuple[str, PureState, MonogamyReport]:
        label, psi = state_at(i)
        rho = DensityMatrix.from_pure(psi)
        report = report_from_values(*evaluators.evaluate(rho))
        open_question_candidate(rho, report)
        return label, psi, report

    logger.info(f"🚀 Exponent scan: {evaluators.measure} on dims {dims}, {total} states")
    with tqdm(total=total, desc=f"exponent {evaluators.measure}", disable=not progress) as bar:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                outcomes = []
                for outcome in pool.map(evaluate, range(total)):
                    outcomes.append(outcome)
                    bar.update(1)
        else:
            outcomes = []
            for i in range(total):
                outcomes.append(evaluate(i))
                bar.update(1)

    best, best_index, best_state, best_label = 0.0, -1, None, ''
    gammas: List[float] = []
    skipped = witnesses = 0
    for i, (label, psi, report) in enumerate(outcomes):
        if report.e_abc < 1e-8:
            skipped += 1
            continue
        if math.isinf(report.gamma):
            witnesses += 1
            logger.warning(f"⚠️  Non-monogamous witness at {label}: x1={report.x1:.10g}, x2={report.x2:.10g}")
        else:
            gammas.append(report.gamma)
        if best_index < 0 or report.gamma > best:
            best, best_index, best_state, best_label = report.gamma, i, psi, label

    counts, edges = (np.histogram(gammas, bins=HISTOGRAM_BINS) if gammas else (np.array([]), np.array([])))
    logger.info(
        f"📊 alpha_hat={best:.10g} at {best_label or 'none'} "
        f"({len(gammas)} finite, {witnesses} witnesses, {skipped} skipped)"
    )
    return ExponentScanResult(
        alpha_hat=float(best),
        worst_state=best_state,
        worst_label=best_label,
        worst_index=best_index,
        evaluated=total - skipped,
        skipped=skipped,
        witnesses=witnesses,
        histogram=[int(c) for c in counts],
        bin_edges=[float(e) for e in edges],
    )
