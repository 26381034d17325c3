"""Pair production, detector field operators and the 8-point coincidence correlation

Field conventions on the label grid (φ_k = k·x − ω_k·t, k = label × spacing):

    ψ⁺(x,t)    = Σ_k a_k  e^{+iφ_k}    annihilates π⁺
    (ψ†)⁻(x,t) = Σ_k a†_k e^{−iφ_k}    creates π⁺
    (ψ†)⁺(x,t) = Σ_k b_k  e^{−iφ_k}    annihilates π⁻
    ψ⁻(x,t)    = Σ_k b†_k e^{+iφ_k}    creates π⁻
"""

import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from config.config import Config
from src.linalg_core import LinearOperator, StateVector
from src.fock_dynamics.fock_space import FockSpace, ModeGrid, Species
from src.source_optics import CoherenceCurve, check_baselines
from src.utils.errors import ArgumentError, NumericalError, PerturbativeRegimeWarning
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

_NORM_TOLERANCE = 1e-12
_SUPPORT_THRESHOLD = 1e-12


class FieldPart(Enum):
    """Positive-frequency (annihilation) or negative-frequency (creation) part"""
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True)
class PairSourceSpec:
    """
    A ρ at rest label q_rho decaying into π⁺(q) π⁻(q_rho − q)

    Attributes:
        q_rho: ρ momentum label
        position: Source location (m), the phase reference e^{i q_rho·spacing·position}
        weights: Amplitude per π⁺ label; Σ|w|² must be 1
        omega_rho: ρ energy; when given, every weighted splitting must conserve energy
    """

    q_rho: int
    weights: Mapping[int, complex] = field(repr=False)
    position: float = 0.0
    omega_rho: Optional[float] = None

    def __post_init__(self):
        weights = {int(q): complex(w) for q, w in dict(self.weights).items()}
        if not weights:
            raise ArgumentError("pair source needs at least one splitting")
        total = sum(abs(w) ** 2 for w in weights.values())
        if abs(total - 1.0) > _NORM_TOLERANCE:
            raise ArgumentError(f"splitting weights must satisfy Σ|w|² = 1, got {total}")
        if not np.isfinite(self.position):
            raise ArgumentError("source position must be finite")
        object.__setattr__(self, 'q_rho', int(self.q_rho))
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def uniform(cls, q_rho: int, plus_labels: Sequence[int], position: float = 0.0,
                omega_rho: Optional[float] = None) -> 'PairSourceSpec':
        """Equal weights over the given π⁺ labels"""
        plus_labels = list(plus_labels)
        if not plus_labels:
            raise ArgumentError("at least one π⁺ label is required")
        weight = 1.0 / np.sqrt(len(plus_labels))
        return cls(q_rho, {q: weight for q in plus_labels}, position, omega_rho)

    def splittings(self) -> Dict[Tuple[int, int], complex]:
        """(π⁺ label, π⁻ label) → weight; labels always sum to q_rho"""
        return {(q, self.q_rho - q): w for q, w in self.weights.items()}


@dataclass(frozen=True)
class HamiltonianConfig:
    """Coupling g of the ρ → π⁺π⁻ vertex and the evolution step dt"""

    g: float
    dt: float

    def __post_init__(self):
        if not np.isfinite(self.g):
            raise ArgumentError(f"coupling must be a finite real, got {self.g}")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ArgumentError(f"dt must be positive, got {self.dt}")


@dataclass(frozen=True)
class FirstOrderResult:
    """c0|ρ⟩ + c1|pair⟩ with the two amplitudes reported separately"""

    state: StateVector
    c0: complex
    c1: complex


@dataclass(frozen=True)
class DetectorAcceptance:
    """Momentum labels seen by each detector"""

    detector_1: Tuple[int, ...]
    detector_2: Tuple[int, ...]

    @classmethod
    def directional(cls, grid: ModeGrid) -> 'DetectorAcceptance':
        """Detector 1 sees left-movers (label < 0), detector 2 right-movers (label > 0)"""
        return cls(
            tuple(q for q in grid.labels if q < 0),
            tuple(q for q in grid.labels if q > 0),
        )

    @classmethod
    def full(cls, grid: ModeGrid) -> 'DetectorAcceptance':
        return cls(grid.labels, grid.labels)


@dataclass(frozen=True)
class ChargeProbabilities:
    """Normalized weights of the three charge assignments at the two detectors"""

    p_mixed_both: float
    p_plusplus_at_1: float
    p_minusminus_at_1: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "p_mixed_both": self.p_mixed_both,
            "p_plusplus_at_1": self.p_plusplus_at_1,
            "p_minusminus_at_1": self.p_minusminus_at_1,
        }


def _check_state(state: StateVector, space: FockSpace) -> None:
    if state.dims != space.dims:
        raise ArgumentError(f"state dims {state.dims} do not match Fock space dims {space.dims}")


def _check_splittings(spec: PairSourceSpec, space: FockSpace) -> None:
    grid = space.grid
    for (plus, minus), weight in spec.splittings().items():
        if plus not in grid or minus not in grid:
            raise ArgumentError(
                f"splitting ({plus}, {minus}) of q_rho {spec.q_rho} is off the grid {grid.labels}"
            )
        if spec.omega_rho is not None and weight != 0:
            energy = grid.omega(plus) + grid.omega(minus)
            if abs(energy - spec.omega_rho) > 1e-12 * max(1.0, abs(spec.omega_rho)):
                raise ArgumentError(
                    f"splitting ({plus}, {minus}) carries energy {energy}, not omega_rho {spec.omega_rho}"
                )


def _apply_pair_creation(spec: PairSourceSpec, space: FockSpace, amplitudes: np.ndarray) -> np.ndarray:
    """Σ_q f(q) a†_q b†_{q_rho−q} with the source-position phase"""
    _check_splittings(spec, space)
    phase = np.exp(1j * space.grid.momentum(spec.q_rho) * spec.position)
    out = np.zeros(space.dim, dtype=complex)
    for (plus, minus), weight in spec.splittings().items():
        if weight == 0:
            continue
        created = space.apply_ladder(amplitudes, Species.PI_MINUS, minus, raising=True)
        created = space.apply_ladder(created, Species.PI_PLUS, plus, raising=True)
        out += weight * created
    return phase * out


def pair_state(spec: PairSourceSpec, space: FockSpace) -> StateVector:
    """
    Normalized π⁺π⁻ pair from one source

    Args:
        spec: Source specification
        space: Fock space whose grid holds every splitting

    Returns:
        Σ_q f(q) a†_q b†_{q_rho−q}|0⟩ e^{i q_rho·position}, normalized

    Raises:
        ArgumentError: If a splitting is off the grid or violates energy conservation
    """
    vacuum = space.vacuum().amplitudes
    return StateVector(space.dims, _apply_pair_creation(spec, space, vacuum)).renormalize()


def two_source_state(spec_a: PairSourceSpec, spec_b: PairSourceSpec, space: FockSpace) -> StateVector:
    """
    Two pairs, one from each source: P_a† P_b† |0⟩, normalized

    Raises:
        NumericalError: If the truncation removes the whole two-pair product
    """
    vacuum = space.vacuum().amplitudes
    amplitudes = _apply_pair_creation(spec_b, space, vacuum)
    amplitudes = _apply_pair_creation(spec_a, space, amplitudes)
    if not np.any(amplitudes):
        raise NumericalError(f"two-pair state vanishes in a space with n_max {space.n_max}")
    return StateVector(space.dims, amplitudes).renormalize()


def first_order_state(config: HamiltonianConfig, spec: PairSourceSpec, space: FockSpace) -> FirstOrderResult:
    """
    First-order evolution of a single ρ quantum under the decay vertex

    Keeps only the c a† b† term of (1 − iH dt)|ρ, 0, 0⟩ and renormalizes:
    c0 = 1/√(1 + x²), c1 = −i x/√(1 + x²) with x = g·dt·(collective coupling).

    Args:
        config: Coupling and time step
        spec: Pair source; its q_rho must be one of the space's ρ modes
        space: Fock space with a ρ mode at spec.q_rho

    Returns:
        FirstOrderResult
    """
    rho = space.apply_ladder(space.vacuum().amplitudes, Species.RHO, spec.q_rho, raising=True)
    decayed = space.apply_ladder(rho, Species.RHO, spec.q_rho, raising=False)
    pair = _apply_pair_creation(spec, space, decayed)
    coupling = float(np.linalg.norm(pair))
    if coupling == 0.0:
        raise NumericalError("pair creation vanishes in the truncated space")

    x = config.g * config.dt * coupling
    scale = 1.0 / np.sqrt(1.0 + x * x)
    c0 = complex(scale)
    c1 = complex(-1j * x * scale)
    if abs(c1) > Config.PERTURBATIVE_LIMIT:
        message = f"|c1| = {abs(c1):.3f} exceeds {Config.PERTURBATIVE_LIMIT}; first-order result is unreliable"
        logger.warning(message)
        warnings.warn(message, PerturbativeRegimeWarning, stacklevel=2)

    amplitudes = c0 * rho + c1 * pair / coupling
    logger.debug(f"First-order state: g*dt = {config.g * config.dt:.3e}, |c1| = {abs(c1):.3e}")
    return FirstOrderResult(StateVector(space.dims, amplitudes), c0, c1)


def pion_component(state: StateVector, space: FockSpace) -> StateVector:
    """Projection onto basis states without ρ quanta (not renormalized)"""
    _check_state(state, space)
    return StateVector(space.dims, np.where(space.pion_mask(), state.amplitudes, 0.0))


def _phases(space: FockSpace, labels: Sequence[int], x: float, t: float) -> np.ndarray:
    grid = space.grid
    return np.array([grid.momentum(q) * x - grid.omega(q) * t for q in labels])


def _field_terms(space: FockSpace, species: Species, part: FieldPart, x: float, t: float,
                 labels: Optional[Sequence[int]]):
    """(label, coefficient, raising) for every mode in the field sum"""
    if species is Species.RHO:
        raise ArgumentError("field operators are defined for π⁺ and π⁻ only")
    if not (np.isfinite(x) and np.isfinite(t)):
        raise ArgumentError("x and t must be finite")
    labels = space.grid.labels if labels is None else tuple(labels)
    raising = part is FieldPart.NEGATIVE
    # π⁺ annihilation and π⁻ creation carry e^{+iφ}; their adjoints e^{−iφ}
    sign = 1.0 if (species is Species.PI_PLUS) != raising else -1.0
    coefficients = np.exp(sign * 1j * _phases(space, labels, x, t))
    return [(q, c, raising) for q, c in zip(labels, coefficients)]


def _apply_field(space: FockSpace, amplitudes: np.ndarray, species: Species, part: FieldPart,
                 x: float, t: float, labels: Optional[Sequence[int]] = None) -> np.ndarray:
    out = np.zeros(space.dim, dtype=complex)
    for label, coefficient, raising in _field_terms(space, species, part, x, t, labels):
        out += coefficient * space.apply_ladder(amplitudes, species, label, raising)
    return out


def field_operator(space: FockSpace, species: Species, part: FieldPart, x: float, t: float,
                   labels: Optional[Sequence[int]] = None) -> LinearOperator:
    """
    Detector field operator as a dense matrix on the truncated basis

    Args:
        space: Fock space
        species: Species.PI_PLUS or Species.PI_MINUS
        part: FieldPart.POSITIVE (annihilation) or FieldPart.NEGATIVE (creation)
        x: Detector position (m)
        t: Time (s)
        labels: Restrict the mode sum to these labels (default: whole grid)

    Returns:
        LinearOperator
    """
    matrix = np.zeros((space.dim, space.dim), dtype=complex)
    for label, coefficient, raising in _field_terms(space, species, part, x, t, labels):
        matrix += coefficient * space.ladder_matrix(species, label, raising)
    return LinearOperator(space.dims, matrix)


def g4_observable(space: FockSpace, x1: float, x2: float, t: float) -> LinearOperator:
    """
    The 8-point operator ψ⁻(2)(ψ†)⁻(2)ψ⁻(1)(ψ†)⁻(1)(ψ†)⁺(2)ψ⁺(2)(ψ†)⁺(1)ψ⁺(1)

    Built as the printed product of dense field matrices; intended as a
    brute-force reference for small spaces.
    """
    plus, minus = Species.PI_PLUS, Species.PI_MINUS
    pos, neg = FieldPart.POSITIVE, FieldPart.NEGATIVE
    sequence = [
        (minus, neg, x2), (plus, neg, x2), (minus, neg, x1), (plus, neg, x1),
        (minus, pos, x2), (plus, pos, x2), (minus, pos, x1), (plus, pos, x1),
    ]
    matrix = np.eye(space.dim, dtype=complex)
    for species, part, x in sequence:
        matrix = matrix @ field_operator(space, species, part, x, t).matrix
    return LinearOperator(space.dims, matrix)


def _normalized_pions(state: StateVector, space: FockSpace) -> Optional[np.ndarray]:
    _check_state(state, space)
    if not state.normalized():
        raise ArgumentError("state must be normalized")
    pions = pion_component(state, space)
    if pions.norm() == 0.0:
        return None
    return pions.renormalize().amplitudes


def _coincidence_norm(space: FockSpace, psi: np.ndarray, x1: float, x2: float, t: float,
                      acceptance: DetectorAcceptance) -> float:
    plus, minus, pos = Species.PI_PLUS, Species.PI_MINUS, FieldPart.POSITIVE
    v = _apply_field(space, psi, plus, pos, x1, t, acceptance.detector_1)
    v = _apply_field(space, v, minus, pos, x1, t, acceptance.detector_1)
    v = _apply_field(space, v, plus, pos, x2, t, acceptance.detector_2)
    v = _apply_field(space, v, minus, pos, x2, t, acceptance.detector_2)
    return float(np.vdot(v, v).real)


def g4_coincidence(state: StateVector, space: FockSpace, x1: float, x2: float, t: float = 0.0,
                   acceptance: Optional[DetectorAcceptance] = None) -> float:
    """
    Expectation of the 8-point coincidence operator on the pion component

    Evaluated as ||(ψ†)⁺(2)ψ⁺(2)(ψ†)⁺(1)ψ⁺(1)|ψ⟩||², which equals the normal-
    ordered expectation and is real and nonnegative by construction.

    Args:
        state: Normalized state over the space's basis
        space: Fock space
        x1: First detector position (m)
        x2: Second detector position (m)
        t: Time (s)
        acceptance: Labels each detector sees (default: whole grid at both)

    Returns:
        g4 value; 0.0 when the state has no pion component
    """
    psi = _normalized_pions(state, space)
    if psi is None:
        return 0.0
    acceptance = acceptance or DetectorAcceptance.full(space.grid)
    return _coincidence_norm(space, psi, x1, x2, t, acceptance)


def normalized_g4_scan(state: StateVector, space: FockSpace, x1: float, baselines: Sequence[float],
                       t: float = 0.0, acceptance: Optional[DetectorAcceptance] = None) -> CoherenceCurve:
    """
    g4(x1, x1 + b) / g4(x1, x1) over a baseline grid

    Returns:
        Unbounded CoherenceCurve with b = x2 − x1

    Raises:
        NumericalError: If the zero-separation rate vanishes
    """
    b = check_baselines(baselines)
    reference = g4_coincidence(state, space, x1, x1, t, acceptance)
    if reference <= 0.0:
        raise NumericalError("coincidence rate at zero separation is zero; cannot normalize")
    values = [g4_coincidence(state, space, x1, x1 + d, t, acceptance) / reference for d in b]
    logger.info(f"Computed g4 scan over {b.size} separations")
    return CoherenceCurve(b, values, bounded=False)


def _check_two_pair_sector(state: StateVector, space: FockSpace) -> np.ndarray:
    _check_state(state, space)
    sector = space.sector_mask(2, 2, 0)
    support = np.abs(state.amplitudes) > _SUPPORT_THRESHOLD
    if not np.any(support) or np.any(support & ~sector):
        raise ArgumentError("charge-resolved probabilities need a state with exactly two π⁺π⁻ pairs")
    return StateVector(space.dims, np.where(sector, state.amplitudes, 0.0)).renormalize().amplitudes


def _charge_correlators(space: FockSpace, psi: np.ndarray, x1: float, x2: float, t: float,
                        acceptance: DetectorAcceptance) -> Tuple[float, float, float]:
    plus, minus, pos = Species.PI_PLUS, Species.PI_MINUS, FieldPart.POSITIVE
    at_1, at_2 = acceptance.detector_1, acceptance.detector_2

    mixed = _coincidence_norm(space, psi, x1, x2, t, acceptance)

    v = _apply_field(space, psi, plus, pos, x1, t, at_1)
    v = _apply_field(space, v, plus, pos, x1, t, at_1)
    v = _apply_field(space, v, minus, pos, x2, t, at_2)
    v = _apply_field(space, v, minus, pos, x2, t, at_2)
    plusplus = float(np.vdot(v, v).real)

    v = _apply_field(space, psi, minus, pos, x1, t, at_1)
    v = _apply_field(space, v, minus, pos, x1, t, at_1)
    v = _apply_field(space, v, plus, pos, x2, t, at_2)
    v = _apply_field(space, v, plus, pos, x2, t, at_2)
    minusminus = float(np.vdot(v, v).real)

    # Two identical annihilators at each detector count every detection 2!·2! times
    multiplicity = 16.0
    return mixed, plusplus / multiplicity, minusminus / multiplicity


def window_offsets(grid: ModeGrid, window: Tuple[float, float] = (0.0, 2.0 * np.pi),
                   n_points: Optional[int] = None) -> np.ndarray:
    """
    Detector-1 position offsets covering a phase window uniformly

    The phase is measured in units of spacing·x, so (0, 2π) spans one full
    period of every grid harmonic.
    """
    lo, hi = window
    if not hi > lo:
        raise ArgumentError(f"acceptance window must have hi > lo, got {window}")
    largest = max(abs(q) for q in grid.labels)
    n = n_points or max(Config.FOCK_WINDOW_POINTS, 8 * largest + 1)
    phases = lo + (hi - lo) * np.arange(n) / n
    return phases / grid.spacing


def charge_resolved_probs(state: StateVector, space: FockSpace, x1: float, x2: float, t: float = 0.0,
                          acceptance: Optional[DetectorAcceptance] = None,
                          window: Tuple[float, float] = (0.0, 2.0 * np.pi)) -> ChargeProbabilities:
    """
    Weights of the three charge assignments seen by two detectors

    Each correlator is averaged uniformly over detector-1 positions spanning
    the acceptance window, then the three are normalized to sum to one.

    Args:
        state: State supported on the n⁺ = n⁻ = 2 sector
        space: Fock space
        x1: Detector 1 position (m), start of the acceptance window
        x2: Detector 2 position (m)
        t: Time (s)
        acceptance: Labels each detector sees (default: directional split)
        window: Phase interval in spacing·x

    Returns:
        ChargeProbabilities

    Raises:
        ArgumentError: If the state leaves the two-pair sector
        NumericalError: If no charge assignment has any weight
    """
    psi = _check_two_pair_sector(state, space)
    acceptance = acceptance or DetectorAcceptance.directional(space.grid)
    offsets = window_offsets(space.grid, window)

    totals = np.zeros(3)
    for offset in offsets:
        totals += _charge_correlators(space, psi, x1 + offset, x2, t, acceptance)
    totals /= offsets.size

    norm = float(totals.sum())
    if norm <= 0.0:
        raise NumericalError("no charge assignment reaches the detectors")
    mixed, plusplus, minusminus = (float(v) for v in totals / norm)
    logger.debug(f"Charge probabilities: mixed {mixed:.6f}, ++ {plusplus:.6f}, -- {minusminus:.6f}")
    return ChargeProbabilities(mixed, plusplus, minusminus)


def minimal_two_source_specs(plus_label: int, minus_labels: Tuple[int, int],
                             positions: Tuple[float, float] = (0.0, 0.0)) -> Tuple[PairSourceSpec, PairSourceSpec]:
    """
    Two single-splitting sources sharing the π⁺ label

    Source A emits (p, s), source B emits (p, u); their ρ labels are p + s
    and p + u.
    """
    s, u = minus_labels
    spec_a = PairSourceSpec(plus_label + s, {plus_label: 1.0}, positions[0])
    spec_b = PairSourceSpec(plus_label + u, {plus_label: 1.0}, positions[1])
    return spec_a, spec_b


def entangled_two_source_specs(labels: Tuple[int, int],
                               positions: Tuple[float, float] = (0.0, 0.0)) -> Tuple[PairSourceSpec, PairSourceSpec]:
    """
    Two ρ at rest, each decaying into back-to-back pions with either charge leading

    Args:
        labels: Distinct positive momentum magnitudes (q1, q2)
        positions: Source positions (m)

    Returns:
        Pair of specs with weights {−q: 1/√2, +q: 1/√2}
    """
    q1, q2 = (abs(int(q)) for q in labels)
    if q1 == 0 or q2 == 0 or q1 == q2:
        raise ArgumentError(f"entangled sources need distinct nonzero labels, got {labels}")
    weight = 1.0 / np.sqrt(2.0)
    return (
        PairSourceSpec(0, {-q1: weight, q1: weight}, positions[0]),
        PairSourceSpec(0, {-q2: weight, q2: weight}, positions[1]),
    )


def equivalent_path_wavenumbers(spec_a: PairSourceSpec, spec_b: PairSourceSpec,
                                grid: ModeGrid) -> Tuple[float, float, float, float]:
    """
    Four wavenumbers whose four-path amplitude reproduces the minimal-configuration g4

    Returns:
        (q_rho_A, q_rho_B, −s, −u) × spacing, satisfying k1 + k3 = k2 + k4
    """
    if len(spec_a.weights) != 1 or len(spec_b.weights) != 1:
        raise ArgumentError("path mapping needs single-splitting sources")
    (plus_a, s), = spec_a.splittings().keys()
    (plus_b, u), = spec_b.splittings().keys()
    if plus_a != plus_b:
        raise ArgumentError(f"sources must share the π⁺ label, got {plus_a} and {plus_b}")
    return tuple(grid.momentum(q) for q in (spec_a.q_rho, spec_b.q_rho, -s, -u))
