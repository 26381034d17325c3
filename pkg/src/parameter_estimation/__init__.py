"""Parameter Estimation Module"""

from .estimation import (
    ModelKind,
    FitModel,
    NoiseSpec,
    InitialGuess,
    FitResult,
    RNG_ALGORITHM,
    make_rng,
    synthesize_curve,
    initial_guess,
    fit,
)

__all__ = [
    'ModelKind',
    'FitModel',
    'NoiseSpec',
    'InitialGuess',
    'FitResult',
    'RNG_ALGORITHM',
    'make_rng',
    'synthesize_curve',
    'initial_guess',
    'fit',
]
