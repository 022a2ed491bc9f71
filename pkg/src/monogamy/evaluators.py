"""Measure evaluators for the three cuts A|BC, A|B and A|C.

A family name such as 'concurrence' or 'renyi:2' is turned into one function
per cut. Each function receives a two-factor density matrix and picks the
cheapest exact route that applies:

- family 'negativity': the partial-transpose formula
- rank-one state: the pure functional of its eigenvector
- two-qubit state with concurrence, tangle, g_concurrence or entropy:
  the Wootters closed form
- anything else: roof_optimize in 'min' mode
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Tuple, Union

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import Cut, DensityMatrix, PureState, partial_trace, regroup, spectral_vectors
from src.errors import ShapeError
from src.measures import MeasureId, negativity, pure_measure, wootters_analysis
from src.roof import RoofConfig, roof_optimize

logger = logging.getLogger(__name__)

Evaluator = Callable[[DensityMatrix], float]

NEGATIVITY = 'negativity'

# value of each measure as a function of the two-qubit concurrence of formation
_WOOTTERS_ROUTES = {
    'concurrence': lambda c, rec: c,
    'tangle': lambda c, rec: c * c,
    'g_concurrence': lambda c, rec: c / 2.0,
    'entropy': lambda c, rec: rec.eof,
}


def bipartite_value(
    rho: DensityMatrix,
    measure: MeasureId,
    roof: RoofConfig = RoofConfig(),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Mixed-state extension of a pure functional on a two-factor state.

    Args:
        rho: State with exactly two subsystems
        measure: Pure-state functional; 'negativity' uses the PPT formula
        roof: Settings for the roof fallback

    Returns:
        E(rho)
    """
    if len(rho.dims) != 2:
        raise ShapeError(f"bipartite_value needs two factors, got dims {rho.dims}")
    if measure.name == NEGATIVITY:
        return negativity(rho)
    vectors = spectral_vectors(rho, tol)
    if vectors.shape[0] == 1:
        top = PureState(vectors[0] / np.linalg.norm(vectors[0]), rho.dims)
        return pure_measure(measure, top)
    if rho.dims == (2, 2) and measure.name in _WOOTTERS_ROUTES:
        record = wootters_analysis(rho, tol)
        return float(_WOOTTERS_ROUTES[measure.name](record.c_formation, record))
    return roof_optimize(rho, measure, mode='min', cfg=roof, tol=tol).value


def _fixed(measure: MeasureId, roof: RoofConfig, tol: Tolerances) -> Evaluator:
    def evaluate(rho: DensityMatrix) -> float:
        return bipartite_value(rho, measure, roof, tol)
    return evaluate


@dataclass
class MonogamyEvaluators:
    """One evaluator per cut, all for the same measure family."""
    measure: MeasureId
    abc: Evaluator
    ab: Evaluator
    ac: Evaluator
    tol: Tolerances = field(default=DEFAULT_TOLERANCES)

    def evaluate(self, rho: DensityMatrix) -> Tuple[float, float, float]:
        """
        E(A|BC), E(AB), E(AC) of a tripartite state.

        Raises:
            ShapeError: rho does not have exactly three subsystems
        """
        if len(rho.dims) != 3:
            raise ShapeError(f"monogamy needs a tripartite state, got dims {rho.dims}")
        e_abc = self.abc(regroup(rho, Cut((0,), (1, 2))))
        e_ab = self.ab(partial_trace(rho, [0, 1]))
        e_ac = self.ac(partial_trace(rho, [0, 2]))
        return float(e_abc), float(e_ab), float(e_ac)


def standard_evaluators(
    family: Union[str, MeasureId],
    roof: RoofConfig = RoofConfig(),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MonogamyEvaluators:
    """
    Evaluator triple for a measure family.

    Args:
        family: MeasureId or its text form ('concurrence', 'negativity', 'renyi:2', ...)
        roof: Settings for cuts that need the roof optimizer
    """
    measure = MeasureId.parse(family) if isinstance(family, str) else family
    evaluate = _fixed(measure, roof, tol)
    return MonogamyEvaluators(measure=measure, abc=evaluate, ab=evaluate, ac=evaluate, tol=tol)
