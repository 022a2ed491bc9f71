"""Smallest exponent gamma with x1^gamma + x2^gamma <= 1."""
import logging
from typing import Tuple

from scipy.optimize import bisect

from src.errors import NonMonogamousWitness, OutOfRange

logger = logging.getLogger(__name__)

# measure values below this count as zero
ZERO_FLOOR = 1e-8
GAMMA_TOLERANCE = 1e-10
_RATIO_SLACK = 1e-12


def ratios(e_abc: float, e_ab: float, e_ac: float) -> Tuple[float, float]:
    """
    x1 = E(AB)/E(A|BC) and x2 = E(AC)/E(A|BC).

    Values below ZERO_FLOOR are snapped to zero first; ratios above one (a
    monotonicity failure of the numerics) are clamped to one.
    """
    e_abc, e_ab, e_ac = (e if e >= ZERO_FLOOR else 0.0 for e in (e_abc, e_ab, e_ac))
    if e_abc == 0.0:
        return 0.0, 0.0
    return min(1.0, e_ab / e_abc), min(1.0, e_ac / e_abc)


def gamma_exponent(x1: float, x2: float) -> float:
    """
    Root of x1^gamma + x2^gamma = 1.

    The bracket starts at [0, 1] and doubles until the sum drops to one, then
    bisection runs to |d gamma| < 1e-10. Returns 0 when the inequality holds
    for every positive exponent.

    Args:
        x1: Ratio in [0, 1]
        x2: Ratio in [0, 1]

    Raises:
        NonMonogamousWitness: one ratio is 1 and the other positive
        OutOfRange: a ratio outside [0, 1]
    """
    for x in (x1, x2):
        if not -_RATIO_SLACK <= x <= 1.0 + _RATIO_SLACK:
            raise OutOfRange(f"ratios must lie in [0, 1], got ({x1!r}, {x2!r})")
    x1 = min(max(float(x1), 0.0), 1.0)
    x2 = min(max(float(x2), 0.0), 1.0)
    hi, lo = max(x1, x2), min(x1, x2)
    if hi == 1.0:
        if lo > 0.0:
            raise NonMonogamousWitness(x1, x2)
        return 0.0
    if lo == 0.0:
        return 0.0

    def excess(gamma: float) -> float:
        return x1 ** gamma + x2 ** gamma - 1.0

    upper = 1.0
    while excess(upper) > 0.0:
        upper *= 2.0
    lower = upper / 2.0 if upper > 1.0 else 0.0
    return float(bisect(excess, lower, upper, xtol=GAMMA_TOLERANCE))
