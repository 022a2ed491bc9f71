"""Pure-state entanglement functionals evaluated on the Schmidt spectrum."""
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core import Cut, PureState, bipartite_reshape
from src.errors import BadCut, OutOfRange

# weights below this are treated as absent ensemble members
MIN_WEIGHT = 1e-14
# cut-offs for the derivative near product members
PROBABILITY_FLOOR = 1e-16
CONCURRENCE_FLOOR = 1e-12

PARAMETRIC = ('renyi', 'tsallis')
NAMES = ('concurrence', 'g_concurrence', 'entropy', 'negativity', 'tangle') + PARAMETRIC


@dataclass(frozen=True)
class MeasureId:
    """Names a pure-state functional for the roof engine.

    Every functional depends on the Schmidt spectrum only, so it is invariant
    under local unitaries. On a subnormalized vector w the value is
    ||w||^2 · E(w / ||w||), i.e. homogeneous of degree 2.
    """
    name: str
    parameter: Optional[float] = None

    homogeneity_degree = 2

    def __post_init__(self):
        if self.name not in NAMES:
            raise OutOfRange(f"unknown measure {self.name!r}; choose from {', '.join(NAMES)}")
        if self.name in PARAMETRIC:
            if self.parameter is None or self.parameter <= 0 or self.parameter == 1:
                raise OutOfRange(f"{self.name} needs a parameter > 0 and != 1, got {self.parameter!r}")
        elif self.parameter is not None:
            raise OutOfRange(f"{self.name} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> 'MeasureId':
        """Accepts 'concurrence', 'renyi:2', 'renyi(0.5)', 'tsallis=2'."""
        match = re.fullmatch(r'\s*([a-z_]+)\s*(?:[:=(]\s*([-+0-9.eE]+)\s*\)?)?\s*', text)
        if not match:
            raise OutOfRange(f"cannot parse measure {text!r}")
        name, param = match.group(1), match.group(2)
        return cls(name, float(param) if param is not None else None)

    def __str__(self) -> str:
        return self.name if self.parameter is None else f"{self.name}:{self.parameter:g}"

    def of_probabilities(self, p: np.ndarray) -> np.ndarray:
        """
        Value on normalized Schmidt probabilities.

        Args:
            p: array (..., k), rows summing to one, k = min(d_A, d_B)
        """
        p = np.clip(p, 0.0, None)
        if self.name == 'entropy':
            safe = np.where(p > 0, p, 1.0)
            return -np.sum(p * np.log2(safe), axis=-1)
        if self.name == 'renyi':
            a = self.parameter
            return np.log2(np.sum(p ** a, axis=-1)) / (1.0 - a)
        if self.name == 'tsallis':
            q = self.parameter
            return (1.0 - np.sum(p ** q, axis=-1)) / (q - 1.0)
        purity = np.sum(p * p, axis=-1)
        if self.name == 'concurrence':
            return np.sqrt(np.clip(2.0 * (1.0 - purity), 0.0, None))
        if self.name == 'tangle':
            return np.clip(2.0 * (1.0 - purity), 0.0, None)
        if self.name == 'negativity':
            return (np.sum(np.sqrt(p), axis=-1) ** 2 - 1.0) / 2.0
        # g_concurrence: geometric mean of the d_min Schmidt probabilities
        k = p.shape[-1]
        return np.prod(p, axis=-1) ** (1.0 / k)

    def of_singular_values(self, s: np.ndarray) -> np.ndarray:
        """
        Weighted value ||w||^2 E(w/||w||) from singular values of the matrix form.

        Args:
            s: array (..., k) of singular values of X; members with squared
               norm below MIN_WEIGHT contribute zero
        """
        return self.of_weights(np.asarray(s, dtype=float) ** 2)

    def of_weights(self, p: np.ndarray) -> np.ndarray:
        """Weighted value from unnormalized Schmidt weights p (squared singular values)."""
        p = np.clip(np.asarray(p, dtype=float), 0.0, None)
        weight = p.sum(axis=-1)
        live = weight >= MIN_WEIGHT
        q = p / np.where(live, weight, 1.0)[..., None]
        return np.where(live, weight * self.of_probabilities(q), 0.0)

    def weights_gradient(self, p: np.ndarray) -> np.ndarray:
        """
        Partial derivatives of of_weights with respect to each unnormalized weight.

        With s = sum(p) and q = p/s the weighted value is s E(q), so the
        derivative is E(q) + dE/dq_i - sum_j q_j dE/dq_j. Singular derivatives
        at vanishing Schmidt weights are cut off at PROBABILITY_FLOOR.
        """
        p = np.clip(np.asarray(p, dtype=float), 0.0, None)
        weight = p.sum(axis=-1)
        live = weight >= MIN_WEIGHT
        q = p / np.where(live, weight, 1.0)[..., None]
        value = self.of_probabilities(q)
        dq = self._probability_gradient(np.clip(q, PROBABILITY_FLOOR, None))
        grad = value[..., None] + dq - np.sum(q * dq, axis=-1, keepdims=True)
        return np.where(live[..., None], grad, 0.0)

    def _probability_gradient(self, q: np.ndarray) -> np.ndarray:
        if self.name == 'entropy':
            return -(np.log2(q) + 1.0 / np.log(2.0))
        if self.name == 'renyi':
            a = self.parameter
            total = np.sum(q ** a, axis=-1, keepdims=True)
            return a * q ** (a - 1.0) / ((1.0 - a) * np.log(2.0) * total)
        if self.name == 'tsallis':
            t = self.parameter
            return -t * q ** (t - 1.0) / (t - 1.0)
        if self.name == 'concurrence':
            c = self.of_probabilities(q)[..., None]
            return -2.0 * q / np.maximum(c, CONCURRENCE_FLOOR)
        if self.name == 'tangle':
            return -4.0 * q
        if self.name == 'negativity':
            root = np.sqrt(q)
            return np.sum(root, axis=-1, keepdims=True) / (2.0 * root)
        k = q.shape[-1]
        return self.of_probabilities(q)[..., None] / (k * q)


def resolve_cut(dims, cut: Optional[Cut]) -> Cut:
    """Default cut for two-factor states; multipartite states need an explicit one."""
    if cut is None:
        if len(dims) != 2:
            raise BadCut(f"state with dims {tuple(dims)} needs an explicit cut")
        return Cut((0,), (1,))
    cut.validate(len(dims))
    return cut


def pure_measure(m: MeasureId, psi: PureState, cut: Optional[Cut] = None) -> float:
    """
    Entanglement of psi across the cut.

    Normalized input gives E(psi); subnormalized input gives ||psi||^2 E(psi/||psi||).
    """
    _, schmidt = bipartite_reshape(psi, resolve_cut(psi.dims, cut))
    return float(m.of_singular_values(schmidt))
