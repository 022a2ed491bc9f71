"""Disentangling condition and power-law monogamy deficits."""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

from src.core import DensityMatrix, partial_trace
from src.errors import NonMonogamousWitness, OutOfRange
from src.measures import negativity

from .evaluators import MonogamyEvaluators
from .exponent import ZERO_FLOOR, gamma_exponent, ratios

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-6
# slack for E(A|BC) >= E(AB), E(AC); larger gaps point at an optimizer failure
MONOTONICITY_SLACK = 1e-8


@dataclass
class MonogamyReport:
    """Measure values on the three cuts of one tripartite state, and the verdicts."""
    e_abc: float
    e_ab: float
    e_ac: float
    x1: float
    x2: float
    gamma: float
    disentangling_satisfied: bool
    monogamy_verdict: bool
    tolerance: float
    monotonicity_ok: bool = True
    deficit: Optional[float] = None
    alpha: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def report_from_values(e_abc: float, e_ab: float, e_ac: float, tol: float = DEFAULT_TOLERANCE) -> MonogamyReport:
    """
    Build the report from already computed cut values.

    gamma is 0 when every positive exponent works (including e_abc = 0) and
    inf when one ratio is one and the other positive.
    """
    monotone = e_abc >= e_ab - MONOTONICITY_SLACK and e_abc >= e_ac - MONOTONICITY_SLACK
    if not monotone:
        logger.warning(
            f"⚠️  Monotonicity under discarding violated: E(A|BC)={e_abc:.10g}, "
            f"E(AB)={e_ab:.10g}, E(AC)={e_ac:.10g}"
        )
    x1, x2 = ratios(e_abc, e_ab, e_ac)
    try:
        gamma = gamma_exponent(x1, x2)
    except NonMonogamousWitness:
        gamma = math.inf
    satisfied = abs(e_abc - e_ab) <= tol * max(1.0, e_abc)
    # without the condition there is nothing for monogamy to forbid
    verdict = e_ac <= tol if satisfied else True
    return MonogamyReport(
        e_abc=e_abc,
        e_ab=e_ab,
        e_ac=e_ac,
        x1=x1,
        x2=x2,
        gamma=gamma,
        disentangling_satisfied=satisfied,
        monogamy_verdict=verdict,
        tolerance=tol,
        monotonicity_ok=monotone,
    )


def disentangling_check(
    rho: DensityMatrix,
    evaluators: MonogamyEvaluators,
    tol: float = DEFAULT_TOLERANCE,
) -> MonogamyReport:
    """
    Test E(A|BC) = E(AB) and, when it holds, whether E(AC) vanishes.

    Args:
        rho: State on subsystems (A, B, C)
        evaluators: One evaluator per cut
        tol: Relative tolerance of the equality, absolute for E(AC)

    Returns:
        MonogamyReport
    """
    return report_from_values(*evaluators.evaluate(rho), tol=tol)


def deficit_from_values(e_abc: float, e_ab: float, e_ac: float, alpha: float) -> float:
    if alpha <= 0:
        raise OutOfRange(f"alpha must be > 0, got {alpha!r}")
    e_abc, e_ab, e_ac = (max(0.0, e) for e in (e_abc, e_ab, e_ac))
    return e_abc ** alpha - e_ab ** alpha - e_ac ** alpha


def monogamy_deficit(rho: DensityMatrix, evaluators: MonogamyEvaluators, alpha: float) -> float:
    """E(A|BC)^alpha - E(AB)^alpha - E(AC)^alpha; non-negative iff the alpha-relation holds."""
    return deficit_from_values(*evaluators.evaluate(rho), alpha=alpha)


def open_question_candidate(rho: DensityMatrix, report: MonogamyReport) -> bool:
    """
    Log a state that satisfies the disentangling condition while its AC
    marginal has positive negativity.
    """
    if not report.disentangling_satisfied:
        return False
    n_ac = negativity(partial_trace(rho, [0, 2]))
    if n_ac > ZERO_FLOOR:
        logger.warning(
            f"🔎 Disentangling condition holds but N(rho^AC)={n_ac:.3e} "
            f"(E(A|BC)={report.e_abc:.10g}, E(AB)={report.e_ab:.10g})"
        )
        return True
    return False


def evaluate_with_deficit(
    rho: DensityMatrix,
    evaluators: MonogamyEvaluators,
    alpha: Optional[float] = None,
    tol: float = DEFAULT_TOLERANCE,
) -> Tuple[MonogamyReport, Optional[float]]:
    """Report plus the alpha-deficit from a single evaluation of the three cuts."""
    values = evaluators.evaluate(rho)
    report = report_from_values(*values, tol=tol)
    if alpha is None:
        return report, None
    deficit = deficit_from_values(*values, alpha=alpha)
    report.deficit = deficit
    report.alpha = alpha
    return report, deficit
