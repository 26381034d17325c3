"""Source Optics Module"""

from .curve import CoherenceCurve, check_baselines
from .profiles import SourceProfile, TopHat, DoubleTopHat, DeltaPair, SampledProfile
from .optics import (
    OpticalContext,
    DetectorPair,
    two_path_amplitude,
    two_path_intensity,
    four_path_amplitude,
    coherence_single_tophat,
    coherence_double_source,
    vcz_numeric_coherence,
)

__all__ = [
    'CoherenceCurve',
    'check_baselines',
    'SourceProfile',
    'TopHat',
    'DoubleTopHat',
    'DeltaPair',
    'SampledProfile',
    'OpticalContext',
    'DetectorPair',
    'two_path_amplitude',
    'two_path_intensity',
    'four_path_amplitude',
    'coherence_single_tophat',
    'coherence_double_source',
    'vcz_numeric_coherence',
]
