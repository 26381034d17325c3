"""Truncated bosonic Fock space over discrete momentum modes

Momenta are integer labels on a uniform grid; the physical wavenumber is
label x spacing, so conservation laws are checked in exact integer arithmetic.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.config import Config
from src.linalg_core import StateVector
from src.utils.errors import ArgumentError, CapacityError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class Species(Enum):
    """Particle species with their own mode sets"""
    PI_PLUS = "pi+"
    PI_MINUS = "pi-"
    RHO = "rho"


@dataclass(frozen=True)
class Dispersion:
    """Energy-momentum relation; mass 0 is the massless ω = |k|"""

    mass: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.mass) and self.mass >= 0):
            raise ArgumentError(f"mass must be finite and nonnegative, got {self.mass}")

    @property
    def massless(self) -> bool:
        return self.mass == 0.0

    def omega(self, k):
        k = np.asarray(k, dtype=float)
        return np.sqrt(k ** 2 + self.mass ** 2)


MASSLESS = Dispersion()


@dataclass(frozen=True)
class ModeGrid:
    """
    Discrete momentum modes shared by π⁺ and π⁻

    Attributes:
        labels: Strictly increasing integer momentum labels
        spacing: Wavenumber per label (rad/m)
        dispersion: ω(k)
    """

    labels: Tuple[int, ...]
    spacing: float = 1.0
    dispersion: Dispersion = MASSLESS

    def __post_init__(self):
        labels = tuple(int(q) for q in self.labels)
        if not labels:
            raise ArgumentError("mode grid needs at least one mode")
        if any(b <= a for a, b in zip(labels, labels[1:])):
            raise ArgumentError("mode labels must be strictly increasing")
        if not (np.isfinite(self.spacing) and self.spacing > 0):
            raise ArgumentError(f"spacing must be positive, got {self.spacing}")
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'spacing', float(self.spacing))

    @classmethod
    def symmetric(cls, n_modes: Optional[int] = None, spacing: Optional[float] = None,
                  dispersion: Dispersion = MASSLESS) -> 'ModeGrid':
        """
        Grid ±1, ±2, ... without the zero mode

        Args:
            n_modes: Even number of modes (default Config.FOCK_N_MODES)
            spacing: Wavenumber per label (default Config.FOCK_MOMENTUM_SPACING)
            dispersion: ω(k)

        Returns:
            ModeGrid
        """
        n_modes = Config.FOCK_N_MODES if n_modes is None else n_modes
        spacing = Config.FOCK_MOMENTUM_SPACING if spacing is None else spacing
        if n_modes < 2 or n_modes % 2:
            raise ArgumentError(f"symmetric grid needs an even number of modes >= 2, got {n_modes}")
        half = n_modes // 2
        labels = tuple(range(-half, 0)) + tuple(range(1, half + 1))
        return cls(labels, spacing, dispersion)

    @property
    def momenta(self) -> np.ndarray:
        return np.array(self.labels, dtype=float) * self.spacing

    def momentum(self, label: int) -> float:
        return label * self.spacing

    def omega(self, label: int) -> float:
        return float(self.dispersion.omega(label * self.spacing))

    def __contains__(self, label: int) -> bool:
        return label in self.labels

    def position(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ArgumentError(f"momentum label {label} is not on the grid {self.labels}") from None


@dataclass(frozen=True)
class FockBasisState:
    """Occupation numbers per mode for π⁺, π⁻ and ρ"""

    occ_plus: Tuple[int, ...]
    occ_minus: Tuple[int, ...]
    occ_rho: Tuple[int, ...] = ()

    @property
    def n_plus(self) -> int:
        return sum(self.occ_plus)

    @property
    def n_minus(self) -> int:
        return sum(self.occ_minus)

    @property
    def n_rho(self) -> int:
        return sum(self.occ_rho)

    @property
    def total(self) -> int:
        return self.n_plus + self.n_minus + self.n_rho

    def occupations(self, species: Species) -> Tuple[int, ...]:
        if species is Species.PI_PLUS:
            return self.occ_plus
        if species is Species.PI_MINUS:
            return self.occ_minus
        return self.occ_rho

    def shifted(self, species: Species, mode: int, delta: int) -> 'FockBasisState':
        occ = list(self.occupations(species))
        occ[mode] += delta
        occ = tuple(occ)
        if species is Species.PI_PLUS:
            return FockBasisState(occ, self.occ_minus, self.occ_rho)
        if species is Species.PI_MINUS:
            return FockBasisState(self.occ_plus, occ, self.occ_rho)
        return FockBasisState(self.occ_plus, self.occ_minus, occ)


def _occupation_vectors(n_modes: int, max_particles: int) -> List[Tuple[int, ...]]:
    vectors = []
    for n in range(max_particles + 1):
        for modes in combinations_with_replacement(range(n_modes), n):
            occ = [0] * n_modes
            for m in modes:
                occ[m] += 1
            vectors.append(tuple(occ))
    return vectors


# (source indices, destination indices, matrix elements) of one ladder operator
LadderMap = Tuple[np.ndarray, np.ndarray, np.ndarray]


class FockSpace:
    """
    Enumerated truncated Fock basis

    Pions of each charge are capped at n_max // 2 quanta, ρ quanta at rho_cap,
    and the total at n_max. ρ modes exist only for the listed rho_labels.
    """

    def __init__(self, grid: ModeGrid, n_max: Optional[int] = None,
                 rho_labels: Sequence[int] = (), rho_cap: int = 1):
        """
        Initialize FockSpace

        Args:
            grid: Pion momentum grid
            n_max: Total particle cap (default Config.FOCK_N_MAX)
            rho_labels: Momentum labels that carry a ρ mode
            rho_cap: Maximum number of ρ quanta
        """
        self.grid = grid
        self.n_max = Config.FOCK_N_MAX if n_max is None else int(n_max)
        if self.n_max < 0:
            raise ArgumentError(f"n_max must be nonnegative, got {self.n_max}")
        self.rho_labels = tuple(sorted(set(int(q) for q in rho_labels)))
        self.rho_cap = int(rho_cap) if self.rho_labels else 0
        self.pion_cap = self.n_max // 2

        n_modes = len(grid.labels)
        pion_vectors = _occupation_vectors(n_modes, self.pion_cap)
        rho_vectors = _occupation_vectors(len(self.rho_labels), min(self.rho_cap, self.n_max))

        states = []
        for occ_rho in rho_vectors:
            for occ_plus in pion_vectors:
                for occ_minus in pion_vectors:
                    if sum(occ_rho) + sum(occ_plus) + sum(occ_minus) <= self.n_max:
                        states.append(FockBasisState(occ_plus, occ_minus, occ_rho))
        states.sort(key=lambda s: (s.total, s.n_rho, s.n_plus, s.occ_rho, s.occ_plus, s.occ_minus))

        if len(states) > Config.MAX_TOTAL_DIM:
            raise CapacityError(
                f"Fock basis of {len(states)} states exceeds the configured maximum {Config.MAX_TOTAL_DIM}"
            )
        self.states: Tuple[FockBasisState, ...] = tuple(states)
        self.index: Dict[FockBasisState, int] = {s: i for i, s in enumerate(states)}
        self._ladder_cache: Dict[Tuple[Species, int, bool], LadderMap] = {}
        logger.debug(f"Fock space: {len(states)} states, {n_modes} modes, n_max {self.n_max}")

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def dims(self) -> Tuple[int]:
        return (self.dim,)

    def vacuum(self) -> StateVector:
        return self.basis_vector(self.states[0])

    def basis_vector(self, state: FockBasisState) -> StateVector:
        if state not in self.index:
            raise ArgumentError(f"{state} is outside the truncated basis")
        amplitudes = np.zeros(self.dim, dtype=complex)
        amplitudes[self.index[state]] = 1.0
        return StateVector(self.dims, amplitudes)

    def mode_index(self, species: Species, label: int) -> int:
        if species is Species.RHO:
            if label not in self.rho_labels:
                raise ArgumentError(f"no ρ mode at label {label}; available {self.rho_labels}")
            return self.rho_labels.index(label)
        return self.grid.position(label)

    def _ladder(self, species: Species, mode: int, raising: bool) -> LadderMap:
        key = (species, mode, raising)
        if key not in self._ladder_cache:
            src, dst, coef = [], [], []
            delta = 1 if raising else -1
            for i, state in enumerate(self.states):
                n = state.occupations(species)[mode]
                if not raising and n == 0:
                    continue
                target = self.index.get(state.shifted(species, mode, delta))
                if target is None:
                    continue
                src.append(i)
                dst.append(target)
                coef.append(np.sqrt(n + 1) if raising else np.sqrt(n))
            self._ladder_cache[key] = (
                np.array(src, dtype=int), np.array(dst, dtype=int), np.array(coef, dtype=float)
            )
        return self._ladder_cache[key]

    def apply_ladder(self, amplitudes: np.ndarray, species: Species, label: int,
                     raising: bool) -> np.ndarray:
        """
        Apply a†_label (raising) or a_label to an amplitude vector

        Args:
            amplitudes: Vector over this basis
            species: Which particle
            label: Momentum label of the mode
            raising: Creation if True, annihilation otherwise

        Returns:
            New amplitude vector (creation beyond the cap is dropped)
        """
        src, dst, coef = self._ladder(species, self.mode_index(species, label), raising)
        out = np.zeros(self.dim, dtype=complex)
        np.add.at(out, dst, coef * amplitudes[src])
        return out

    def ladder_matrix(self, species: Species, label: int, raising: bool) -> np.ndarray:
        """Dense matrix of a single creation or annihilation operator"""
        src, dst, coef = self._ladder(species, self.mode_index(species, label), raising)
        matrix = np.zeros((self.dim, self.dim), dtype=complex)
        matrix[dst, src] = coef
        return matrix

    def sector_mask(self, n_plus: int, n_minus: int, n_rho: int = 0) -> np.ndarray:
        """Boolean mask of basis states with the given particle numbers"""
        return np.array([
            s.n_plus == n_plus and s.n_minus == n_minus and s.n_rho == n_rho
            for s in self.states
        ])

    def pion_mask(self) -> np.ndarray:
        """Boolean mask of basis states without ρ quanta"""
        return np.array([s.n_rho == 0 for s in self.states])
