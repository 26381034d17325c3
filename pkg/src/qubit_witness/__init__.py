"""Qubit Witness Module"""

from .witness import (
    BellKind,
    PairingScheme,
    DETECTED_PAIRING,
    WitnessReport,
    ExpansionTerm,
    DetectedExpansion,
    bell_state,
    product_state,
    werner_state,
    detected_basis_expansion,
    coincidence_probabilities,
    swap_operator,
    symmetric_projector,
    interference_probability,
    two_copy_symmetric_probability,
    purity_from_symmetric_probability,
    witness_verdict,
    witness_from_swap_tests,
)

__all__ = [
    'BellKind',
    'PairingScheme',
    'DETECTED_PAIRING',
    'WitnessReport',
    'ExpansionTerm',
    'DetectedExpansion',
    'bell_state',
    'product_state',
    'werner_state',
    'detected_basis_expansion',
    'coincidence_probabilities',
    'swap_operator',
    'symmetric_projector',
    'interference_probability',
    'two_copy_symmetric_probability',
    'purity_from_symmetric_probability',
    'witness_verdict',
    'witness_from_swap_tests',
]
