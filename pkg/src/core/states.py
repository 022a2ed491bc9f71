"""State containers: pure states, density matrices, decompositions and cuts."""
from dataclasses import InitVar, dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.errors import BadCut, InvariantViolation, NotNormalized, ShapeError

ComplexMatrix = np.ndarray


def as_matrix(a, square: bool = False) -> ComplexMatrix:
    """
    Coerce to a finite complex128 2-D array.

    Args:
        a: array-like input
        square: Require rows == cols

    Raises:
        ShapeError: wrong rank, non-square when required, or non-finite entries
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got array of shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix has NaN or infinite entries")
    return m


def _dims(dims: Iterable[int]) -> Tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if any(d < 1 for d in out):
        raise ShapeError(f"subsystem dimensions must be positive, got {out}")
    return out


@dataclass(frozen=True, eq=False)
class PureState:
    """State vector tagged with subsystem dimensions.

    `normalized` selects the contract: unit norm, or squared norm at most one.
    """
    amplitudes: np.ndarray
    dims: Tuple[int, ...]
    normalized: bool = True
    tol: InitVar[Tolerances] = DEFAULT_TOLERANCES

    def __post_init__(self, tol: Tolerances):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = _dims(self.dims)
        if int(np.prod(dims)) != amps.size:
            raise ShapeError(f"dims {dims} do not match {amps.size} amplitudes")
        if not np.all(np.isfinite(amps)):
            raise ShapeError("amplitudes contain NaN or infinite entries")
        norm2 = float(np.vdot(amps, amps).real)
        if self.normalized and abs(norm2 - 1.0) > tol.tr:
            raise NotNormalized(f"squared norm {norm2!r} is not 1")
        if not self.normalized and norm2 > 1.0 + tol.tr:
            raise NotNormalized(f"subnormalized vector has squared norm {norm2!r} > 1")
        object.__setattr__(self, 'amplitudes', amps)
        object.__setattr__(self, 'dims', dims)

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def projector(self) -> ComplexMatrix:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def normalize(self) -> 'PureState':
        return PureState(self.amplitudes / np.sqrt(self.norm2), self.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density operator tagged with subsystem dimensions."""
    matrix: ComplexMatrix
    dims: Tuple[int, ...]
    check: InitVar[bool] = True
    tol: InitVar[Tolerances] = DEFAULT_TOLERANCES

    def __post_init__(self, check: bool, tol: Tolerances):
        m = as_matrix(self.matrix, square=True)
        dims = _dims(self.dims)
        if int(np.prod(dims)) != m.shape[0]:
            raise ShapeError(f"dims {dims} do not match a {m.shape[0]}x{m.shape[0]} matrix")
        object.__setattr__(self, 'matrix', m)
        object.__setattr__(self, 'dims', dims)
        if check:
            self.assert_valid(tol)

    def assert_valid(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        """Raise InvariantViolation naming the first failed invariant."""
        m = self.matrix
        herm_err = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if herm_err > tol.herm:
            raise InvariantViolation('hermitian', f"max |rho - rho^dagger| = {herm_err:.3e}")
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > tol.tr:
            raise InvariantViolation('trace', f"trace = {trace!r}")
        min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())
        if min_eig < -tol.psd:
            raise InvariantViolation('psd', f"minimum eigenvalue {min_eig:.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, psi: PureState) -> 'DensityMatrix':
        """Projector onto a normalized pure state."""
        return cls(psi.normalize().projector(), psi.dims, check=False)

    @classmethod
    def maximally_mixed(cls, dims: Sequence[int]) -> 'DensityMatrix':
        d = int(np.prod(dims))
        return cls(np.eye(d, dtype=np.complex128) / d, tuple(dims), check=False)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Pure-state ensemble stored as rows of subnormalized vectors.

    rho = sum_j |w_j><w_j|; the squared row norms are the ensemble weights.
    """
    vectors: np.ndarray
    dims: Tuple[int, ...]

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=np.complex128)
        if v.ndim == 1:
            v = v.reshape(1, -1)
        dims = _dims(self.dims)
        if v.ndim != 2 or v.shape[1] != int(np.prod(dims)):
            raise ShapeError(f"vectors of shape {v.shape} do not match dims {dims}")
        object.__setattr__(self, 'vectors', v)
        object.__setattr__(self, 'dims', dims)

    @classmethod
    def from_states(cls, states: Sequence[PureState]) -> 'Decomposition':
        if not states:
            raise ShapeError("a decomposition needs at least one vector")
        dims = states[0].dims
        if any(s.dims != dims for s in states):
            raise ShapeError("all vectors of a decomposition must share dims")
        return cls(np.stack([s.amplitudes for s in states]), dims)

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @property
    def states(self) -> List[PureState]:
        return [PureState(v, self.dims, normalized=False) for v in self.vectors]

    def weights(self) -> np.ndarray:
        return np.einsum('ij,ij->i', self.vectors.conj(), self.vectors).real

    def reconstruct(self) -> ComplexMatrix:
        return self.vectors.T @ self.vectors.conj()

    def reconstruction_error(self, rho: 'DensityMatrix') -> float:
        """Frobenius distance between the ensemble sum and rho."""
        return float(np.linalg.norm(self.reconstruct() - rho.matrix))

    def check_against(self, rho: 'DensityMatrix', tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        """Raise InvariantViolation if the ensemble does not reproduce rho."""
        err = self.reconstruction_error(rho)
        if err > tol.rec:
            raise InvariantViolation('reconstruction', f"Frobenius error {err:.3e}")
        total = float(self.weights().sum())
        if abs(total - 1.0) > max(tol.tr, tol.rec):
            raise InvariantViolation('trace', f"weights sum to {total!r}")


@dataclass(frozen=True)
class Cut:
    """Bipartition of subsystem indices, written "i,j|k,l"."""
    left: Tuple[int, ...]
    right: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str, n_subsystems: int) -> 'Cut':
        """
        Parse cut syntax.

        "0,1|2" groups explicitly; a single side such as "0" or "0,2" means
        that group against all remaining subsystems.
        """
        try:
            if '|' in text:
                lhs, rhs = text.split('|', 1)
                left = tuple(int(t) for t in lhs.split(',') if t.strip())
                right = tuple(int(t) for t in rhs.split(',') if t.strip())
            else:
                left = tuple(int(t) for t in text.split(',') if t.strip())
                right = tuple(i for i in range(n_subsystems) if i not in left)
        except ValueError:
            raise BadCut(f"cannot parse cut {text!r}")
        cut = cls(left, right)
        cut.validate(n_subsystems)
        return cut

    @classmethod
    def first(cls, n_subsystems: int) -> 'Cut':
        """Subsystem 0 against the rest."""
        return cls((0,), tuple(range(1, n_subsystems)))

    def validate(self, n_subsystems: int) -> None:
        everything = self.left + self.right
        if not self.left or not self.right:
            raise BadCut(f"both sides of cut {self} must be non-empty")
        if len(set(everything)) != len(everything):
            raise BadCut(f"cut {self} repeats a subsystem")
        if sorted(everything) != list(range(n_subsystems)):
            raise BadCut(f"cut {self} does not cover subsystems 0..{n_subsystems - 1}")

    def dims_of(self, dims: Sequence[int]) -> Tuple[int, int]:
        self.validate(len(dims))
        d_left = int(np.prod([dims[i] for i in self.left]))
        d_right = int(np.prod([dims[i] for i in self.right]))
        return d_left, d_right

    def __str__(self) -> str:
        return f"{','.join(map(str, self.left))}|{','.join(map(str, self.right))}"
