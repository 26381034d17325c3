"""1-D source intensity profiles"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from src.utils.errors import ArgumentError

# (lower angle, upper angle, intensity density) of a uniform piece
Segment = Tuple[float, float, float]
# (angle, weight) of a point emitter
Point = Tuple[float, float]


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0:
        raise ArgumentError(f"{name} must be positive, got {value}")
    return value


class SourceProfile(ABC):
    """Angular intensity distribution I(θ), normalized to unit total intensity"""

    @abstractmethod
    def intensity(self, theta: np.ndarray) -> np.ndarray:
        """Intensity density at the given angles (rad)"""


class UniformPieces(SourceProfile):
    """Profile made of uniform angular segments"""

    @abstractmethod
    def segments(self) -> List[Segment]:
        """Uniform pieces whose densities integrate to one in total"""

    def intensity(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        total = np.zeros_like(theta)
        for lo, hi, density in self.segments():
            total = total + np.where((theta >= lo) & (theta <= hi), density, 0.0)
        return total


@dataclass(frozen=True)
class TopHat(UniformPieces):
    """Uniform source of angular width alpha centred on zero"""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _positive("alpha", self.alpha))

    def segments(self) -> List[Segment]:
        half = self.alpha / 2.0
        return [(-half, half, 1.0 / self.alpha)]


@dataclass(frozen=True)
class DoubleTopHat(UniformPieces):
    """Two top-hats of angular width `width` whose centres are `separation` apart"""

    separation: float
    width: float

    def __post_init__(self):
        object.__setattr__(self, 'separation', _positive("separation", self.separation))
        object.__setattr__(self, 'width', _positive("width", self.width))

    def segments(self) -> List[Segment]:
        half_w = self.width / 2.0
        density = 0.5 / self.width
        centres = (-self.separation / 2.0, self.separation / 2.0)
        return [(c - half_w, c + half_w, density) for c in centres]


@dataclass(frozen=True)
class DeltaPair(SourceProfile):
    """Two point sources at ±alpha/2"""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _positive("alpha", self.alpha))

    def points(self) -> List[Point]:
        return [(-self.alpha / 2.0, 0.5), (self.alpha / 2.0, 0.5)]

    def intensity(self, theta: np.ndarray) -> np.ndarray:
        # Point masses have no density; only the 2-term transform is meaningful
        return np.zeros_like(np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class SampledProfile(SourceProfile):
    """Tabulated intensity on a strictly increasing angle grid; weights renormalized to sum 1"""

    angles: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        angles = np.array(self.angles, dtype=float).ravel()
        weights = np.array(self.weights, dtype=float).ravel()
        if angles.size < 3:
            raise ArgumentError(f"sampled profile needs at least 3 points, got {angles.size}")
        if angles.size != weights.size:
            raise ArgumentError("angles and weights differ in length")
        if np.any(np.diff(angles) <= 0):
            raise ArgumentError("sample angles must be strictly increasing")
        if np.any(weights < 0) or weights.sum() <= 0:
            raise ArgumentError("weights must be nonnegative with a positive sum")
        weights = weights / weights.sum()
        angles.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, 'angles', angles)
        object.__setattr__(self, 'weights', weights)

    def intensity(self, theta: np.ndarray) -> np.ndarray:
        return np.interp(np.asarray(theta, dtype=float), self.angles, self.weights, left=0.0, right=0.0)
