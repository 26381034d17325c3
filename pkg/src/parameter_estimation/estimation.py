"""Recover source geometry from sampled coherence curves"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from config.config import Config
from src.source_optics import (
    CoherenceCurve,
    OpticalContext,
    check_baselines,
    coherence_double_source,
    coherence_single_tophat,
)
from src.utils.errors import ArgumentError, NumericalError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# An RSS at or below this per sample counts as an exact fit
_EXACT_FIT_RSS = 1e-30
_MAX_DAMPING = 1e16

# Noise streams are fixed by this generator and the seed alone
RNG_ALGORITHM = "Philox-4x64"


class ModelKind(Enum):
    """Forward models: uniform disc (α) or two extended sources (α, β)"""
    SINGLE_TOPHAT = "tophat"
    DOUBLE_SOURCE = "double"


@dataclass(frozen=True)
class FitModel:
    """Forward coherence model bound to an optical context"""

    kind: ModelKind
    ctx: OpticalContext

    @property
    def n_params(self) -> int:
        return 1 if self.kind is ModelKind.SINGLE_TOPHAT else 2

    @property
    def param_names(self) -> List[str]:
        return ["alpha"] if self.kind is ModelKind.SINGLE_TOPHAT else ["alpha", "beta"]

    def check_params(self, params: Sequence[float]) -> np.ndarray:
        params = np.asarray(params, dtype=float).ravel()
        if params.size != self.n_params:
            raise ArgumentError(
                f"{self.kind.value} model takes {self.n_params} parameter(s), got {params.size}"
            )
        if not np.all(np.isfinite(params)) or np.any(params <= 0):
            raise ArgumentError(f"parameters must be positive and finite, got {params.tolist()}")
        return params

    def evaluate(self, params: Sequence[float], baselines: np.ndarray) -> np.ndarray:
        params = self.check_params(params)
        baselines = np.asarray(baselines, dtype=float)
        if self.kind is ModelKind.SINGLE_TOPHAT:
            return np.asarray(coherence_single_tophat(self.ctx, params[0], baselines), dtype=float)
        return np.asarray(coherence_double_source(self.ctx, params[0], params[1], baselines), dtype=float)


@dataclass(frozen=True)
class NoiseSpec:
    """Additive Gaussian noise with a 64-bit seed"""

    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma >= 0):
            raise ArgumentError(f"sigma must be nonnegative, got {self.sigma}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ArgumentError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class InitialGuess:
    """Starting parameters and whether the configured defaults had to be used"""

    params: np.ndarray
    used_fallback: bool


@dataclass(frozen=True)
class FitResult:
    """
    Outcome of a damped least-squares fit

    Attributes:
        params: Best parameters found (rad)
        residual_rss: Sum of squared residuals at params
        iterations: Jacobian evaluations performed
        converged: Whether a convergence criterion was met
        param_stderr: Standard errors from the linearized covariance
        rss_history: RSS after every accepted step, starting with the guess
    """

    params: np.ndarray
    residual_rss: float
    iterations: int
    converged: bool
    param_stderr: np.ndarray
    rss_history: List[float] = field(default_factory=list, repr=False)

    def to_dict(self, rng_algorithm: Optional[str] = None, seed: Optional[int] = None) -> Dict[str, Any]:
        return {
            "params": [float(p) for p in self.params],
            "residual_rss": float(self.residual_rss),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "param_stderr": [float(s) for s in self.param_stderr],
            "rng_algorithm": rng_algorithm or RNG_ALGORITHM,
            "seed": seed,
        }


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; the seed alone fixes the stream"""
    return np.random.Generator(np.random.Philox(int(seed)))


def synthesize_curve(model: FitModel, params: Sequence[float], baselines: Sequence[float],
                     noise: Optional[NoiseSpec] = None) -> CoherenceCurve:
    """
    Forward model plus optional seeded Gaussian noise, clamped to [0, 1]

    Args:
        model: Forward model
        params: Model parameters (rad)
        baselines: Strictly increasing baselines (m)
        noise: Noise level and seed (default noiseless)

    Returns:
        CoherenceCurve
    """
    noise = noise or NoiseSpec()
    b = check_baselines(baselines)
    clean = model.evaluate(params, b)
    values = clean
    if noise.sigma > 0:
        values = clean + make_rng(noise.seed).normal(0.0, noise.sigma, size=b.size)
    logger.debug(f"Synthesized {b.size} samples, sigma {noise.sigma}, seed {noise.seed}")
    return CoherenceCurve(b, np.clip(values, 0.0, 1.0))


def _first_minimum_below(values: np.ndarray, threshold: float) -> Optional[int]:
    for i in range(1, values.size - 1):
        if values[i] <= values[i - 1] and values[i] <= values[i + 1] and values[i] < threshold:
            return i
    return None


def _vertex(b: np.ndarray, values: np.ndarray, i: int) -> float:
    """Abscissa of the parabola through samples i−1, i, i+1"""
    x = b[i - 1:i + 2]
    y = values[i - 1:i + 2]
    a, c, _ = np.polyfit(x, y, 2)
    if a == 0:
        return float(b[i])
    vertex = -c / (2.0 * a)
    return float(np.clip(vertex, x[0], x[2]))


def _rss(model: FitModel, params: Sequence[float], b: np.ndarray, values: np.ndarray) -> float:
    r = model.evaluate(params, b) - values
    return float(r @ r)


def _scan_free_parameter(objective, upper: float, span: float) -> float:
    """
    Minimize a one-parameter RSS over [upper/span, upper]

    A log-spaced grid finds the basin, a bounded scalar search polishes the
    best grid point between its neighbours.
    """
    grid = np.geomspace(upper / span, upper, Config.FIT_SCAN_POINTS)
    scores = np.array([objective(x) for x in grid])
    i = int(np.argmin(scores))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    if lo == hi:
        return float(grid[i])
    polished = minimize_scalar(lambda t: objective(np.exp(t)), bounds=(np.log(lo), np.log(hi)),
                               method="bounded", options={"xatol": 1e-12})
    best = float(np.exp(polished.x))
    return best if objective(best) <= scores[i] else float(grid[i])


def _double_source_seed(model: FitModel, b: np.ndarray, values: np.ndarray, b_zero: float) -> np.ndarray:
    """
    Seed both readings of the first zero and keep the one with lower RSS

    The first zero is either the first cosine zero (kβb = π/2) or the first
    sinc zero (kαb = π). Whichever factor it fixes, the other one has its
    first zero at or beyond b_zero and is scanned below that bound.
    """
    k = model.ctx.k
    span = Config.FIT_SCAN_SPAN * float(b[-1]) / b_zero

    cosine_beta = np.pi / (2.0 * k * b_zero)
    sinc_alpha = np.pi / (k * b_zero)
    free_alpha = _scan_free_parameter(lambda a: _rss(model, (a, cosine_beta), b, values), sinc_alpha, span)
    cosine_first = np.array([free_alpha, cosine_beta])

    free_beta = _scan_free_parameter(lambda c: _rss(model, (sinc_alpha, c), b, values), cosine_beta, span)
    sinc_first = np.array([sinc_alpha, free_beta])

    rss_cosine = _rss(model, cosine_first, b, values)
    rss_sinc = _rss(model, sinc_first, b, values)
    logger.debug(f"Double-source seeds: cosine-first rss {rss_cosine:.3e}, sinc-first rss {rss_sinc:.3e}")
    return cosine_first if rss_cosine <= rss_sinc else sinc_first


def initial_guess(curve: CoherenceCurve, model: FitModel) -> InitialGuess:
    """
    Starting point read off the first zero of the curve

    For the single top-hat the first zero sits at kαb/2 = π. For two sources
    the first zero may belong to either factor, so both assignments are
    seeded and the one that explains the data better wins.

    Args:
        curve: Sampled coherence, at least 8 points
        model: Forward model

    Returns:
        InitialGuess, flagged when no zero lies within the sampled range
    """
    if len(curve) < 8:
        raise ArgumentError(f"initial guess needs at least 8 samples, got {len(curve)}")
    b, values = curve.baselines, curve.values
    k = model.ctx.k
    fallback = np.array([Config.FIT_DEFAULT_ALPHA, Config.FIT_DEFAULT_BETA][:model.n_params])

    zero = _first_minimum_below(values, Config.FIT_ZERO_THRESHOLD)
    if zero is None or b[zero] <= 0:
        logger.warning("No zero crossing within the sampled baselines; using default guess")
        return InitialGuess(fallback, True)
    b_zero = _vertex(b, values, zero)

    if model.kind is ModelKind.SINGLE_TOPHAT:
        return InitialGuess(np.array([2.0 * np.pi / (k * b_zero)]), False)
    return InitialGuess(_double_source_seed(model, b, values, b_zero), False)


def _jacobian(residual, theta: np.ndarray, step: float) -> np.ndarray:
    """Central differences in log-parameter space"""
    columns = []
    for j in range(theta.size):
        shift = np.zeros_like(theta)
        shift[j] = step
        columns.append((residual(theta + shift) - residual(theta - shift)) / (2.0 * step))
    return np.column_stack(columns)


def _solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"normal equations are singular: {e}") from e


def fit(curve: CoherenceCurve, model: FitModel, guess: Sequence[float],
        max_iter: Optional[int] = None) -> FitResult:
    """
    Levenberg-Marquardt least squares on log-parameters

    Args:
        curve: Sampled coherence data
        model: Forward model
        guess: Positive starting parameters
        max_iter: Jacobian evaluations allowed (default Config.FIT_MAX_ITER)

    Returns:
        FitResult; converged is False when max_iter runs out

    Raises:
        ArgumentError: Too few samples or invalid guess
        NumericalError: Singular normal equations
    """
    max_iter = Config.FIT_MAX_ITER if max_iter is None else max_iter
    guess = model.check_params(guess)
    if len(curve) < 2 * model.n_params:
        raise ArgumentError(
            f"fit needs at least {2 * model.n_params} samples for {model.n_params} parameter(s), got {len(curve)}"
        )
    b, y = curve.baselines, curve.values

    def residual(theta: np.ndarray) -> np.ndarray:
        params = np.exp(theta)
        if not np.all(np.isfinite(params)) or np.any(params <= 0):
            return np.full(b.size, np.inf)
        return model.evaluate(params, b) - y

    theta = np.log(guess)
    r = residual(theta)
    rss = float(r @ r)
    history = [rss]
    damping = Config.FIT_INITIAL_DAMPING
    converged = False
    iterations = 0
    exact = _EXACT_FIT_RSS * b.size

    while iterations < max_iter and not converged:
        if rss <= exact:
            converged = True
            break
        iterations += 1
        J = _jacobian(residual, theta, Config.FIT_FD_STEP)
        A = J.T @ J
        g = J.T @ r
        scale = np.diag(np.diag(A))

        while True:
            delta = _solve(A + damping * scale, -g)
            relative_step = float(np.max(np.abs(np.expm1(delta))))
            candidate = theta + delta
            r_new = residual(candidate)
            rss_new = float(r_new @ r_new)

            if rss_new <= rss:
                change = (rss - rss_new) / rss if rss > 0 else 0.0
                theta, r, rss = candidate, r_new, rss_new
                history.append(rss)
                damping = max(damping / 10.0, 1e-12)
                converged = (relative_step < Config.FIT_PARAM_TOL
                             or change < Config.FIT_RSS_TOL
                             or rss <= exact)
                break

            damping *= 10.0
            if relative_step < Config.FIT_PARAM_TOL or damping > _MAX_DAMPING:
                # No step, however short, lowers the RSS: theta is a minimum
                converged = True
                break

    params = np.exp(theta)
    stderr = _standard_errors(residual, theta, rss, b.size)
    logger.info(
        f"Fit {model.kind.value}: params {params.tolist()}, rss {rss:.3e}, "
        f"{iterations} iterations, converged {converged}"
    )
    return FitResult(params, rss, iterations, converged, stderr, history)


def _standard_errors(residual, theta: np.ndarray, rss: float, n_samples: int) -> np.ndarray:
    """p·sqrt(diag(s²(JᵀJ)⁻¹)) with s² = RSS/(n − p), J taken in log-parameters"""
    J = _jacobian(residual, theta, Config.FIT_FD_STEP)
    dof = n_samples - theta.size
    covariance = _solve(J.T @ J, np.eye(theta.size)) * (rss / dof)
    return np.exp(theta) * np.sqrt(np.clip(np.diag(covariance), 0.0, None))
