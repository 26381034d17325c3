"""Qubit model of pion charge: Bell pairs, detector re-pairing and the purity witness

Charge convention: |0⟩ is a positive pion, |1⟩ a negative pion.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence, Tuple

import numpy as np

from config.config import Config
from src.linalg_core import (
    DensityOperator,
    LinearOperator,
    StateVector,
    expectation,
    identity_operator,
    partial_trace,
    permute_subsystems,
    purity,
    tensor_product,
)
from src.utils.errors import ArgumentError, DomainError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

_SQRT_HALF = 1.0 / np.sqrt(2.0)
QUBIT = 2


class BellKind(Enum):
    """The four Bell states"""
    PSI_PLUS = "psi-plus"
    PSI_MINUS = "psi-minus"
    PHI_PLUS = "phi-plus"
    PHI_MINUS = "phi-minus"


_BELL_AMPLITUDES = {
    BellKind.PSI_PLUS: (0.0, _SQRT_HALF, _SQRT_HALF, 0.0),
    BellKind.PSI_MINUS: (0.0, _SQRT_HALF, -_SQRT_HALF, 0.0),
    BellKind.PHI_PLUS: (_SQRT_HALF, 0.0, 0.0, _SQRT_HALF),
    BellKind.PHI_MINUS: (_SQRT_HALF, 0.0, 0.0, -_SQRT_HALF),
}


@dataclass(frozen=True)
class PairingScheme:
    """Which of the qubits 1..4 reach detector A and detector B"""

    detector_a: Tuple[int, int]
    detector_b: Tuple[int, int]

    def __post_init__(self):
        a = tuple(int(i) for i in self.detector_a)
        b = tuple(int(i) for i in self.detector_b)
        if len(a) != 2 or len(b) != 2 or sorted(a + b) != [1, 2, 3, 4]:
            raise ArgumentError(
                f"pairing {a},{b} is not a permutation of qubits 1..4"
            )
        object.__setattr__(self, 'detector_a', a)
        object.__setattr__(self, 'detector_b', b)

    @classmethod
    def parse(cls, text: str) -> 'PairingScheme':
        """
        Parse the "13,24" notation

        Args:
            text: Two comma-separated digit pairs

        Returns:
            PairingScheme
        """
        parts = [p.strip() for p in text.split(',')]
        if len(parts) != 2 or any(len(p) != 2 or not p.isdigit() for p in parts):
            raise ArgumentError(f"cannot parse pairing {text!r}; expected e.g. '13,24'")
        return cls((int(parts[0][0]), int(parts[0][1])), (int(parts[1][0]), int(parts[1][1])))

    @property
    def order(self) -> Tuple[int, ...]:
        """0-based subsystem order placing detector A's qubits first"""
        return tuple(i - 1 for i in self.detector_a + self.detector_b)

    def __str__(self) -> str:
        return "{}{},{}{}".format(*self.detector_a, *self.detector_b)


DETECTED_PAIRING = PairingScheme((1, 3), (2, 4))


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of the purity-based entanglement witness"""

    global_purity: float
    local_purity_a: float
    local_purity_b: float
    p_symmetric_global: float
    entangled: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "global_purity": self.global_purity,
            "local_purity_a": self.local_purity_a,
            "local_purity_b": self.local_purity_b,
            "p_symmetric_global": self.p_symmetric_global,
            "entangled": self.entangled,
        }


class ExpansionTerm(Enum):
    """Basis of the detected qubit pairs (detector A first)"""
    A00_B11 = "00_A11_B"
    A11_B00 = "11_A00_B"
    PSI_PLUS_PSI_PLUS = "psi_plus_A_psi_plus_B"
    PSI_MINUS_PSI_MINUS = "psi_minus_A_psi_minus_B"


@dataclass(frozen=True)
class DetectedExpansion:
    """Coefficients of a 4-qubit state in the detected basis plus the leftover component"""

    pairing: PairingScheme
    coefficients: Dict[ExpansionTerm, complex]
    residual: StateVector

    @property
    def residual_norm(self) -> float:
        return self.residual.norm()

    def resum(self) -> StateVector:
        """Rebuild the input state (qubit order 1234) from coefficients and residual"""
        total = self.residual.amplitudes.copy()
        for term, coefficient in self.coefficients.items():
            total = total + coefficient * _detected_basis_vector(term).amplitudes
        detected = StateVector((QUBIT,) * 4, total)
        return permute_subsystems(detected, np.argsort(self.pairing.order))

    def to_dict(self) -> Dict[str, object]:
        table = {}
        for term, c in self.coefficients.items():
            table[term.value] = {"re": float(c.real), "im": float(c.imag)}
        return {
            "pairing": str(self.pairing),
            "coefficients": table,
            "residual": self.residual_norm,
        }


def bell_state(kind: BellKind) -> StateVector:
    """
    Normalized Bell state

    Args:
        kind: Which Bell state

    Returns:
        Two-qubit state vector
    """
    return StateVector((QUBIT, QUBIT), np.array(_BELL_AMPLITUDES[kind], dtype=complex))


def product_state(bits: Sequence[int]) -> StateVector:
    """Computational basis state |b₁b₂…⟩"""
    if not bits or any(b not in (0, 1) for b in bits):
        raise ArgumentError(f"bits must be a non-empty sequence of 0/1, got {bits}")
    amplitudes = np.zeros(2 ** len(bits), dtype=complex)
    amplitudes[int("".join(str(b) for b in bits), 2)] = 1.0
    return StateVector((QUBIT,) * len(bits), amplitudes)


def werner_state(p: float) -> DensityOperator:
    """
    Werner state p|Ψ⁺⟩⟨Ψ⁺| + (1 − p) I/4

    Args:
        p: Mixing parameter in [0, 1]

    Returns:
        Two-qubit density operator
    """
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"Werner parameter must lie in [0, 1], got {p}")
    psi = DensityOperator.from_state(bell_state(BellKind.PSI_PLUS))
    return DensityOperator((QUBIT, QUBIT), p * psi.matrix + (1.0 - p) * np.eye(4) / 4.0)


def _detected_basis_vector(term: ExpansionTerm) -> StateVector:
    if term is ExpansionTerm.A00_B11:
        return product_state((0, 0, 1, 1))
    if term is ExpansionTerm.A11_B00:
        return product_state((1, 1, 0, 0))
    kind = BellKind.PSI_PLUS if term is ExpansionTerm.PSI_PLUS_PSI_PLUS else BellKind.PSI_MINUS
    return tensor_product(bell_state(kind), bell_state(kind))


def detected_basis_expansion(state: StateVector, pairing: PairingScheme = DETECTED_PAIRING) -> DetectedExpansion:
    """
    Expand a 4-qubit state in the basis of the detected pairs

    The four basis vectors are orthonormal, so each coefficient is an inner
    product; whatever they do not capture is returned as the residual.

    Args:
        state: Normalized state over qubits 1234
        pairing: Qubits reaching detector A and detector B

    Returns:
        DetectedExpansion with coefficients keyed by ExpansionTerm
    """
    if state.dims != (QUBIT,) * 4:
        raise ArgumentError(f"expected a 4-qubit state, got dims {state.dims}")
    if not state.normalized():
        raise ArgumentError("input state is not normalized")

    detected = permute_subsystems(state, pairing.order)
    coefficients = {}
    residual = detected.amplitudes.copy()
    for term in ExpansionTerm:
        basis = _detected_basis_vector(term).amplitudes
        c = complex(np.vdot(basis, detected.amplitudes))
        coefficients[term] = c
        residual = residual - c * basis

    return DetectedExpansion(pairing, coefficients, StateVector(detected.dims, residual))


def _charge_sector_projectors() -> Dict[str, LinearOperator]:
    def diag(entries):
        return LinearOperator((QUBIT, QUBIT), np.diag(np.array(entries, dtype=complex)))
    return {
        "p_plusminus_both": diag([0, 1, 1, 0]),
        "p_plusplus_A": diag([1, 0, 0, 0]),
        "p_minusminus_A": diag([0, 0, 0, 1]),
    }


def _detected_joint_state(rho12: DensityOperator, rho34: DensityOperator,
                          pairing: PairingScheme) -> DensityOperator:
    if rho12.dims != (QUBIT, QUBIT) or rho34.dims != (QUBIT, QUBIT):
        raise ArgumentError(
            f"expected two-qubit density operators, got dims {rho12.dims} and {rho34.dims}"
        )
    return permute_subsystems(tensor_product(rho12, rho34), pairing.order)


def coincidence_probabilities(rho12: DensityOperator, rho34: DensityOperator,
                              pairing: PairingScheme = DETECTED_PAIRING) -> Dict[str, float]:
    """
    Charge content of detector A for two emitted pairs

    Args:
        rho12: State of pair 12
        rho34: State of pair 34
        pairing: Qubits reaching detector A and detector B

    Returns:
        Dictionary with p_plusminus_both, p_plusplus_A and p_minusminus_A
    """
    joint = _detected_joint_state(rho12, rho34, pairing)
    identity_b = identity_operator((QUBIT, QUBIT))
    probabilities = {}
    for name, sector in _charge_sector_projectors().items():
        value = expectation(joint, tensor_product(sector, identity_b))
        probabilities[name] = float(value.real)
    return probabilities


def swap_operator(local_dim: int = QUBIT) -> LinearOperator:
    """SWAP on two copies of a local_dim-dimensional system"""
    side = local_dim * local_dim
    matrix = np.zeros((side, side), dtype=complex)
    for i in range(local_dim):
        for j in range(local_dim):
            matrix[j * local_dim + i, i * local_dim + j] = 1.0
    return LinearOperator((local_dim, local_dim), matrix)


def symmetric_projector(num_qubits: int = 2, local_dim: int = QUBIT) -> LinearOperator:
    """
    Projector onto the symmetric subspace of two copies, (I + SWAP)/2

    Args:
        num_qubits: Number of copies; only two are supported
        local_dim: Dimension of each copy

    Returns:
        Projector of rank local_dim (local_dim + 1) / 2
    """
    if num_qubits != 2:
        raise ArgumentError(f"symmetric projector is defined for two copies, got {num_qubits}")
    swap = swap_operator(local_dim)
    return LinearOperator(swap.dims, (np.eye(swap.dim) + swap.matrix) / 2.0)


def interference_probability(rho12: DensityOperator, rho34: DensityOperator,
                             pairing: PairingScheme = DETECTED_PAIRING) -> float:
    """
    Probability that both detected pairs are found symmetric, tr{P_A ⊗ P_B (ρ₁₂ ⊗ ρ₃₄)}

    Args:
        rho12: State of pair 12
        rho34: State of pair 34
        pairing: Qubits reaching detector A and detector B

    Returns:
        Joint symmetric-projection probability
    """
    joint = _detected_joint_state(rho12, rho34, pairing)
    p_sym = symmetric_projector()
    return float(expectation(joint, tensor_product(p_sym, p_sym)).real)


def two_copy_symmetric_probability(rho: DensityOperator) -> float:
    """
    Swap-test acceptance probability tr(P_sym (ρ ⊗ ρ)) = (1 + tr ρ²)/2

    Args:
        rho: Density operator, treated as a single system

    Returns:
        Symmetric-outcome probability
    """
    flat = DensityOperator((rho.dim,), rho.matrix)
    copies = tensor_product(flat, flat)
    return float(expectation(copies, symmetric_projector(2, rho.dim)).real)


def purity_from_symmetric_probability(p_sym: float) -> float:
    """
    Invert the swap-test relation p_sym = (1 + tr ρ²)/2

    Args:
        p_sym: Measured symmetric-outcome probability

    Returns:
        Purity 2 p_sym − 1 clamped to [0, 1]

    Raises:
        DomainError: If p_sym lies outside [0.5, 1] beyond a 1e-9 slack
    """
    slack = 1e-9
    if not (0.5 - slack <= p_sym <= 1.0 + slack):
        raise DomainError(f"symmetric probability {p_sym} outside [0.5, 1]")
    return min(1.0, max(0.0, 2.0 * p_sym - 1.0))


def _verdict(global_purity: float, local_a: float, local_b: float) -> bool:
    margin = Config.WITNESS_MARGIN
    return global_purity > local_a + margin and global_purity > local_b + margin


def witness_verdict(rho: DensityOperator) -> WitnessReport:
    """
    Purity witness: entangled if the global purity exceeds both local purities

    A positive verdict certifies entanglement; a negative one is inconclusive.

    Args:
        rho: Bipartite density operator

    Returns:
        WitnessReport
    """
    if len(rho.dims) != 2:
        raise ArgumentError(f"witness needs a bipartite state, got dims {rho.dims}")

    global_purity = purity(rho)
    local_a = purity(partial_trace(rho, [0]))
    local_b = purity(partial_trace(rho, [1]))
    report = WitnessReport(
        global_purity=global_purity,
        local_purity_a=local_a,
        local_purity_b=local_b,
        p_symmetric_global=two_copy_symmetric_probability(rho),
        entangled=_verdict(global_purity, local_a, local_b),
    )
    logger.debug(f"Witness: global {global_purity:.6f}, local {local_a:.6f}/{local_b:.6f}")
    return report


def witness_from_swap_tests(p_sym_global: float, p_sym_a: float, p_sym_b: float) -> WitnessReport:
    """
    Witness verdict from three measured swap-test probabilities

    Args:
        p_sym_global: Symmetric probability for two copies of the whole state
        p_sym_a: Same for subsystem A
        p_sym_b: Same for subsystem B

    Returns:
        WitnessReport built from the inferred purities
    """
    global_purity = purity_from_symmetric_probability(p_sym_global)
    local_a = purity_from_symmetric_probability(p_sym_a)
    local_b = purity_from_symmetric_probability(p_sym_b)
    return WitnessReport(
        global_purity=global_purity,
        local_purity_a=local_a,
        local_purity_b=local_b,
        p_symmetric_global=p_sym_global,
        entangled=_verdict(global_purity, local_a, local_b),
    )
