"""Dense complex linear algebra over finite-dimensional Hilbert spaces

Subsystem 0 is the most significant digit of a basis index (row-major), the
same ordering numpy.kron produces with the first operand on the left.
"""

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple, TypeVar, Union

import numpy as np

from config.config import Config
from src.utils.errors import ArgumentError, CapacityError, NumericalError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Dims = Tuple[int, ...]


def _check_dims(dims: Sequence[int]) -> Dims:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d <= 0 for d in dims):
        raise ArgumentError(f"dims must be a non-empty list of positive integers, got {dims}")
    return dims


def _check_capacity(total: int) -> None:
    if total > Config.MAX_TOTAL_DIM:
        raise CapacityError(
            f"total dimension {total} exceeds the configured maximum {Config.MAX_TOTAL_DIM}"
        )


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class StateVector:
    """Pure state: complex amplitudes over the product basis of `dims`"""

    dims: Dims
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amplitudes = _frozen(np.ravel(self.amplitudes))
        if amplitudes.size != int(np.prod(dims)):
            raise ArgumentError(
                f"{amplitudes.size} amplitudes do not match dims {dims}"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise NumericalError("state vector contains NaN or Inf")
        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> bool:
        """True iff the squared norm is within STATE_TOLERANCE of one"""
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= Config.STATE_TOLERANCE

    def renormalize(self) -> 'StateVector':
        """
        Return the state scaled to unit norm

        Raises:
            NumericalError: For the zero vector
        """
        norm = self.norm()
        if norm == 0.0:
            raise NumericalError("cannot normalize the zero vector")
        return StateVector(self.dims, self.amplitudes / norm)


@dataclass(frozen=True)
class LinearOperator:
    """Square matrix acting on the product space of `dims`"""

    dims: Dims
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        matrix = _frozen(self.matrix)
        side = int(np.prod(dims))
        if matrix.shape != (side, side):
            raise ArgumentError(f"matrix shape {matrix.shape} does not match dims {dims}")
        if not np.all(np.isfinite(matrix)):
            raise NumericalError("operator contains NaN or Inf")
        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, state: StateVector) -> StateVector:
        """Matrix-vector product (result is not renormalized)"""
        if state.dims != self.dims:
            raise ArgumentError(f"operator dims {self.dims} do not match state dims {state.dims}")
        return StateVector(self.dims, self.matrix @ state.amplitudes)

    def adjoint(self) -> 'LinearOperator':
        return LinearOperator(self.dims, self.matrix.conj().T)

    def __matmul__(self, other: 'LinearOperator') -> 'LinearOperator':
        if self.dims != other.dims:
            raise ArgumentError(f"cannot compose operators with dims {self.dims} and {other.dims}")
        return LinearOperator(self.dims, self.matrix @ other.matrix)

    def is_hermitian(self, tol: float = None) -> bool:
        tol = Config.STATE_TOLERANCE if tol is None else tol
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) <= tol)


@dataclass(frozen=True)
class DensityOperator:
    """Mixed state: Hermitian, unit-trace, positive semidefinite matrix"""

    dims: Dims
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        matrix = _frozen(self.matrix)
        side = int(np.prod(dims))
        if matrix.shape != (side, side):
            raise ArgumentError(f"matrix shape {matrix.shape} does not match dims {dims}")
        if not np.all(np.isfinite(matrix)):
            raise NumericalError("density operator contains NaN or Inf")

        tol = Config.STATE_TOLERANCE
        if np.max(np.abs(matrix - matrix.conj().T)) > tol:
            raise ArgumentError("density operator is not Hermitian")
        trace = np.trace(matrix)
        if abs(trace.real - 1.0) > tol or abs(trace.imag) > tol:
            raise ArgumentError(f"density operator trace {trace} is not 1")
        eigenvalues = np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)
        if eigenvalues.min() < -Config.PSD_TOLERANCE:
            raise ArgumentError(
                f"density operator has negative eigenvalue {eigenvalues.min():.3e}"
            )

        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_state(cls, state: StateVector) -> 'DensityOperator':
        """
        Build |ψ⟩⟨ψ| from a normalized state vector

        Args:
            state: Normalized pure state

        Returns:
            Rank-one density operator
        """
        if not state.normalized():
            raise ArgumentError("state vector is not normalized")
        a = state.amplitudes
        return cls(state.dims, np.outer(a, a.conj()))

    @classmethod
    def mixture(cls, weights: Sequence[float], states: Sequence['DensityOperator']) -> 'DensityOperator':
        """
        Convex combination of density operators with identical dims

        Args:
            weights: Nonnegative weights summing to one
            states: Components

        Returns:
            Σ wᵢ ρᵢ
        """
        if len(weights) != len(states) or not states:
            raise ArgumentError("weights and states must be non-empty and of equal length")
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > Config.STATE_TOLERANCE:
            raise ArgumentError("mixture weights must be nonnegative and sum to 1")
        dims = states[0].dims
        if any(s.dims != dims for s in states):
            raise ArgumentError("all mixture components must share dims")
        matrix = sum(w * s.matrix for w, s in zip(weights, states))
        return cls(dims, matrix)


Operand = TypeVar('Operand', StateVector, LinearOperator, DensityOperator)
AnyState = Union[StateVector, DensityOperator]


def tensor_product(a: Operand, b: Operand) -> Operand:
    """
    Tensor product with the first operand as the most significant index block

    Args:
        a: First operand
        b: Second operand, of the same kind

    Returns:
        a ⊗ b with dims concatenated

    Raises:
        ArgumentError: If the operands are of different kinds
        CapacityError: If the product dimension exceeds Config.MAX_TOTAL_DIM
    """
    if type(a) is not type(b):
        raise ArgumentError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")
    dims = a.dims + b.dims
    _check_capacity(int(np.prod(dims)))
    if isinstance(a, StateVector):
        return StateVector(dims, np.kron(a.amplitudes, b.amplitudes))
    return type(a)(dims, np.kron(a.matrix, b.matrix))


def _subsystem_indices(keep: Iterable[int], n: int) -> Tuple[int, ...]:
    keep = tuple(int(i) for i in keep)
    if not keep:
        raise ArgumentError("keep set must not be empty")
    if len(set(keep)) != len(keep) or any(i < 0 or i >= n for i in keep):
        raise ArgumentError(f"invalid subsystem indices {keep} for {n} subsystems")
    return keep


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """
    Trace out every subsystem not listed in `keep`

    Args:
        rho: Density operator
        keep: 0-based subsystem positions to keep

    Returns:
        Reduced density operator; kept subsystems stay in their original order
    """
    n = len(rho.dims)
    kept = sorted(_subsystem_indices(keep, n))
    traced = [i for i in range(n) if i not in kept]

    tensor = rho.matrix.reshape(rho.dims + rho.dims)
    remaining = n
    for axis in reversed(traced):
        tensor = np.trace(tensor, axis1=axis, axis2=axis + remaining)
        remaining -= 1

    kept_dims = tuple(rho.dims[i] for i in kept)
    side = int(np.prod(kept_dims))
    return DensityOperator(kept_dims, tensor.reshape(side, side))


def permute_subsystems(x: Operand, order: Sequence[int]) -> Operand:
    """
    Reorder subsystems: new subsystem j is old subsystem order[j]

    Args:
        x: State vector, operator or density operator
        order: Permutation of range(len(x.dims))

    Returns:
        Same kind of object on the permuted tensor factors
    """
    n = len(x.dims)
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(n)):
        raise ArgumentError(f"{order} is not a permutation of {n} subsystems")
    dims = tuple(x.dims[i] for i in order)

    if isinstance(x, StateVector):
        amplitudes = np.transpose(x.amplitudes.reshape(x.dims), order)
        return StateVector(dims, amplitudes.reshape(-1))

    axes = order + tuple(n + i for i in order)
    side = x.matrix.shape[0]
    matrix = np.transpose(x.matrix.reshape(x.dims + x.dims), axes).reshape(side, side)
    return type(x)(dims, matrix)


def purity(rho: DensityOperator) -> float:
    """
    Purity tr(ρ²)

    Args:
        rho: Density operator

    Returns:
        Real purity in [1/d, 1]
    """
    # tr(ρ²) = Σ|ρ_ij|² for Hermitian ρ
    return float(np.sum(np.abs(rho.matrix) ** 2))


def linear_entropy(rho: DensityOperator) -> float:
    """Linear entropy 1 − tr(ρ²)"""
    return 1.0 - purity(rho)


def expectation(state: AnyState, op: LinearOperator) -> complex:
    """
    Expectation value ⟨ψ|O|ψ⟩ or tr(ρO)

    Args:
        state: Pure or mixed state
        op: Operator with matching dims

    Returns:
        Complex expectation value

    Raises:
        ArgumentError: On a dimension mismatch
    """
    if state.dims != op.dims:
        raise ArgumentError(f"state dims {state.dims} do not match operator dims {op.dims}")
    if isinstance(state, StateVector):
        value = np.vdot(state.amplitudes, op.matrix @ state.amplitudes)
    else:
        value = np.trace(state.matrix @ op.matrix)
    return complex(value)


def identity_operator(dims: Sequence[int]) -> LinearOperator:
    dims = _check_dims(dims)
    return LinearOperator(dims, np.eye(int(np.prod(dims))))


def projector(state: StateVector) -> LinearOperator:
    """Rank-one projector |ψ⟩⟨ψ| (ψ need not be normalized)"""
    a = state.amplitudes
    return LinearOperator(state.dims, np.outer(a, a.conj()))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """
    Haar-random unitary from the QR (Gram-Schmidt) decomposition of a Ginibre matrix

    Args:
        dim: Matrix side
        rng: Seeded generator

    Returns:
        dim x dim unitary matrix
    """
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_density_operator(dims: Sequence[int], rng: np.random.Generator) -> DensityOperator:
    """Random full-rank density operator G G† / tr(G G†)"""
    dims = _check_dims(dims)
    side = int(np.prod(dims))
    g = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityOperator(dims, m / np.trace(m).real)
