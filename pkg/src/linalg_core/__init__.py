"""Linear Algebra Core Module"""

from .hilbert import (
    StateVector,
    DensityOperator,
    LinearOperator,
    tensor_product,
    partial_trace,
    permute_subsystems,
    purity,
    linear_entropy,
    expectation,
    identity_operator,
    projector,
    random_unitary,
    random_density_operator,
)

__all__ = [
    'StateVector',
    'DensityOperator',
    'LinearOperator',
    'tensor_product',
    'partial_trace',
    'permute_subsystems',
    'purity',
    'linear_entropy',
    'expectation',
    'identity_operator',
    'projector',
    'random_unitary',
    'random_density_operator',
]
