"""Fock Dynamics Module"""

from .fock_space import Species, Dispersion, MASSLESS, ModeGrid, FockBasisState, FockSpace
from .dynamics import (
    FieldPart,
    PairSourceSpec,
    HamiltonianConfig,
    FirstOrderResult,
    DetectorAcceptance,
    ChargeProbabilities,
    pair_state,
    two_source_state,
    first_order_state,
    pion_component,
    field_operator,
    g4_observable,
    g4_coincidence,
    normalized_g4_scan,
    window_offsets,
    charge_resolved_probs,
    minimal_two_source_specs,
    entangled_two_source_specs,
    equivalent_path_wavenumbers,
)

__all__ = [
    'Species',
    'Dispersion',
    'MASSLESS',
    'ModeGrid',
    'FockBasisState',
    'FockSpace',
    'FieldPart',
    'PairSourceSpec',
    'HamiltonianConfig',
    'FirstOrderResult',
    'DetectorAcceptance',
    'ChargeProbabilities',
    'pair_state',
    'two_source_state',
    'first_order_state',
    'pion_component',
    'field_operator',
    'g4_observable',
    'g4_coincidence',
    'normalized_g4_scan',
    'window_offsets',
    'charge_resolved_probs',
    'minimal_two_source_specs',
    'entangled_two_source_specs',
    'equivalent_path_wavenumbers',
]
