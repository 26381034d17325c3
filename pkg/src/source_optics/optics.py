"""Plane-wave path amplitudes, closed-form coherence and the numerical van Cittert-Zernike transform

Far-field mapping: a source at angle θ contributes phase kθb at baseline b.
Angles in radians, baselines in meters, wavenumbers in rad/m.
"""

from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np
from scipy.integrate import quad, simpson

from config.config import Config
from src.source_optics.curve import CoherenceCurve, check_baselines
from src.source_optics.profiles import DeltaPair, SampledProfile, SourceProfile, UniformPieces
from src.utils.errors import ArgumentError, NumericalError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]

# Rows of the (baseline x angle) phase matrix evaluated at once
_CHUNK_ELEMENTS = 4_000_000
# Segments spanning more oscillation cycles than this use the Fourier-weighted rule
_SIMPSON_MAX_CYCLES = 64


@dataclass(frozen=True)
class OpticalContext:
    """Wavenumber k (rad/m) with its wavelength 2π/k"""

    k: float

    def __post_init__(self):
        k = float(self.k)
        if not (np.isfinite(k) and k > 0):
            raise ArgumentError(f"wavenumber must be positive, got {k}")
        object.__setattr__(self, 'k', k)

    @property
    def wavelength(self) -> float:
        return 2.0 * np.pi / self.k

    @classmethod
    def from_wavelength(cls, wavelength: float) -> 'OpticalContext':
        if not wavelength > 0:
            raise ArgumentError(f"wavelength must be positive, got {wavelength}")
        return cls(2.0 * np.pi / wavelength)


@dataclass(frozen=True)
class DetectorPair:
    """Two detector positions (m)"""

    x1: float
    x2: float

    @property
    def baseline(self) -> float:
        return abs(self.x2 - self.x1)


def _as_output(values: np.ndarray, like: ArrayLike):
    return float(values) if np.ndim(like) == 0 else values


def _sinc_squared(u: np.ndarray) -> np.ndarray:
    """sin²(u)/u² with a series expansion near zero"""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < Config.SERIES_THRESHOLD
    safe = np.where(small, 1.0, u)
    exact = (np.sin(safe) / safe) ** 2
    series = 1.0 - u ** 2 / 3.0 + 2.0 * u ** 4 / 45.0
    return np.where(small, series, exact)


def _check_angle(name: str, value: float) -> None:
    if not value > 0:
        raise ArgumentError(f"{name} must be positive, got {value}")


def _check_nonnegative(b: np.ndarray) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if np.any(b < 0):
        raise ArgumentError("baseline must be nonnegative")
    return b


def two_path_amplitude(k1: float, k2: float, det: DetectorPair) -> complex:
    """
    Exchange-symmetric amplitude for two identical particles reaching two detectors

    Args:
        k1: Wavenumber of the first particle
        k2: Wavenumber of the second particle
        det: Detector positions

    Returns:
        e^{ik₁x₁}e^{ik₂x₂} + e^{ik₁x₂}e^{ik₂x₁} (unnormalized)
    """
    x1, x2 = det.x1, det.x2
    return complex(np.exp(1j * (k1 * x1 + k2 * x2)) + np.exp(1j * (k1 * x2 + k2 * x1)))


def two_path_intensity(k1: float, k2: float, det: DetectorPair) -> float:
    """|two_path_amplitude|² = 2 + 2 cos(δk δx)"""
    return abs(two_path_amplitude(k1, k2, det)) ** 2


def four_path_amplitude(k: Sequence[float], det: DetectorPair) -> complex:
    """
    Amplitude for two pairs with one particle of each charge at each detector

    The first term sends k₁, k₃ to x₁ and k₂, k₄ to x₂; the second exchanges
    the detector attributions of k₃ and k₄.

    Args:
        k: Four wavenumbers (k₁, k₂, k₃, k₄) with k₁ + k₃ = k₂ + k₄
        det: Detector positions

    Returns:
        Sum of the two four-phase products

    Raises:
        ArgumentError: If the pairing constraint is violated
    """
    if len(k) != 4:
        raise ArgumentError(f"expected four wavenumbers, got {len(k)}")
    k1, k2, k3, k4 = (float(v) for v in k)
    scale = max(1.0, max(abs(v) for v in (k1, k2, k3, k4)))
    if abs((k1 + k3) - (k2 + k4)) > 1e-9 * scale:
        raise ArgumentError(
            f"momentum constraint k1+k3 = k2+k4 violated: {k1 + k3} != {k2 + k4}"
        )
    x1, x2 = det.x1, det.x2
    direct = np.exp(1j * (k1 * x1 + k2 * x2 + k3 * x1 + k4 * x2))
    exchanged = np.exp(1j * (k1 * x1 + k2 * x2 + k4 * x1 + k3 * x2))
    return complex(direct + exchanged)


def coherence_single_tophat(ctx: OpticalContext, alpha: float, b: ArrayLike):
    """
    Coherence of a uniform source of angular size alpha

    Args:
        ctx: Optical context
        alpha: Angular width (rad)
        b: Baseline(s) in meters

    Returns:
        sin²(kαb/2)/(kαb/2)², exactly 1 at b = 0
    """
    _check_angle("alpha", alpha)
    baselines = _check_nonnegative(b)
    return _as_output(_sinc_squared(ctx.k * alpha * baselines / 2.0), b)


def coherence_double_source(ctx: OpticalContext, alpha: float, beta: float, b: ArrayLike):
    """
    Coherence of two extended sources, in the closed form sin²(kαb)/(kαb)² · cos²(kβb)

    Args:
        ctx: Optical context
        alpha: Angle inside the sinc factor (rad)
        beta: Angle inside the cosine factor (rad)
        b: Baseline(s) in meters

    Returns:
        Coherence, 1 at b = 0
    """
    _check_angle("alpha", alpha)
    _check_angle("beta", beta)
    baselines = _check_nonnegative(b)
    values = _sinc_squared(ctx.k * alpha * baselines) * np.cos(ctx.k * beta * baselines) ** 2
    return _as_output(values, b)


def _segment_transform(lo: float, hi: float, density: float, kb: np.ndarray, n_points: int) -> np.ndarray:
    """Simpson estimate of ∫_lo^hi density·e^{iθkb} dθ for every kb"""
    theta = np.linspace(lo, hi, n_points)
    rows_per_chunk = max(1, _CHUNK_ELEMENTS // n_points)
    out = np.empty(kb.size, dtype=complex)
    for start in range(0, kb.size, rows_per_chunk):
        phase = np.outer(kb[start:start + rows_per_chunk], theta)
        re = simpson(np.cos(phase), x=theta, axis=-1)
        im = simpson(np.sin(phase), x=theta, axis=-1)
        out[start:start + rows_per_chunk] = density * (re + 1j * im)
    return out


def _uniform_pieces_coherence(profile: UniformPieces, kb: np.ndarray, n_points: int) -> np.ndarray:
    numerator = np.zeros(kb.size, dtype=complex)
    total = 0.0
    for lo, hi, density in profile.segments():
        numerator += _segment_transform(lo, hi, density, kb, n_points)
        total += density * (hi - lo)
    return np.abs(numerator) ** 2 / total ** 2


def _oscillatory_coherence(profile: UniformPieces, kb: np.ndarray) -> np.ndarray:
    """QUADPACK cos/sin-weighted rule for baselines too oscillatory for the Simpson grid"""
    out = np.empty(kb.size)
    total = sum(density * (hi - lo) for lo, hi, density in profile.segments())
    for i, w in enumerate(kb):
        amplitude = 0.0 + 0.0j
        for lo, hi, density in profile.segments():
            re, re_err = quad(lambda _: density, lo, hi, weight='cos', wvar=w)
            im, im_err = quad(lambda _: density, lo, hi, weight='sin', wvar=w)
            if max(re_err, im_err) > Config.QUADRATURE_TOLERANCE * total:
                raise NumericalError(f"oscillatory quadrature failed at kb = {w:.6e}")
            amplitude += re + 1j * im
        out[i] = abs(amplitude) ** 2 / total ** 2
    return out


def _uniform_coherence(profile: UniformPieces, kb: np.ndarray) -> np.ndarray:
    widest = max(hi - lo for lo, hi, _ in profile.segments())
    oscillatory = kb * widest / (2.0 * np.pi) > _SIMPSON_MAX_CYCLES
    values = np.empty(kb.size)
    if np.any(~oscillatory):
        values[~oscillatory] = _converged_coherence(profile, kb[~oscillatory])
    if np.any(oscillatory):
        logger.debug(f"{int(oscillatory.sum())} baselines use the oscillatory rule")
        values[oscillatory] = _oscillatory_coherence(profile, kb[oscillatory])
    return values


def _converged_coherence(profile: UniformPieces, kb: np.ndarray) -> np.ndarray:
    n_points = Config.QUADRATURE_START_POINTS
    previous = _uniform_pieces_coherence(profile, kb, n_points)
    for doubling in range(1, Config.QUADRATURE_MAX_DOUBLINGS + 1):
        n_points = 2 * n_points - 1
        current = _uniform_pieces_coherence(profile, kb, n_points)
        change = float(np.max(np.abs(current - previous)))
        logger.debug(f"Quadrature doubling {doubling}: {n_points} points, change {change:.3e}")
        if change <= Config.QUADRATURE_TOLERANCE:
            return current
        previous = current
    raise NumericalError(
        f"quadrature did not converge after {Config.QUADRATURE_MAX_DOUBLINGS} grid doublings"
    )


def _sampled_coherence(profile: SampledProfile, kb: np.ndarray) -> np.ndarray:
    theta = profile.angles
    denominator = simpson(profile.weights, x=theta)
    phase = np.outer(kb, theta)
    re = simpson(profile.weights * np.cos(phase), x=theta, axis=-1)
    im = simpson(profile.weights * np.sin(phase), x=theta, axis=-1)
    return (re ** 2 + im ** 2) / denominator ** 2


def _point_coherence(points: List, kb: np.ndarray) -> np.ndarray:
    total = sum(w for _, w in points)
    amplitude = sum(w * np.exp(1j * theta * kb) for theta, w in points)
    return np.abs(amplitude) ** 2 / total ** 2


def vcz_numeric_coherence(profile: SourceProfile, ctx: OpticalContext,
                          baselines: Sequence[float]) -> CoherenceCurve:
    """
    Coherence as the normalized squared Fourier transform of the source intensity

    C(b) = |∫ I(θ) e^{ikθb} dθ|² / |∫ I(θ) dθ|²; uniform pieces use composite
    Simpson quadrature with grid doubling (baselines whose phase winds more
    than _SIMPSON_MAX_CYCLES times across a segment go to QUADPACK's
    Fourier-weighted rule), point pairs are summed exactly and sampled
    profiles are integrated on their own grid.

    Args:
        profile: Source intensity profile
        ctx: Optical context
        baselines: Strictly increasing, nonnegative baselines (m)

    Returns:
        CoherenceCurve

    Raises:
        NumericalError: If successive grid doublings keep disagreeing
    """
    b = check_baselines(baselines)
    kb = ctx.k * b

    if isinstance(profile, DeltaPair):
        values = _point_coherence(profile.points(), kb)
    elif isinstance(profile, SampledProfile):
        values = _sampled_coherence(profile, kb)
    elif isinstance(profile, UniformPieces):
        values = _uniform_coherence(profile, kb)
    else:
        raise ArgumentError(f"unsupported profile type {type(profile).__name__}")

    values = np.clip(values, 0.0, None)
    logger.debug(f"Computed numeric coherence for {type(profile).__name__} at {b.size} baselines")
    return CoherenceCurve(b, values)
