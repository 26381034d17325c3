"""Sampled coherence curves and their CSV schema"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from src.utils.data_io import DataIO
from src.utils.errors import ArgumentError

CSV_HEADER = ("b", "C")
RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class CoherenceCurve:
    """
    Sampled (baseline, coherence) pairs

    Attributes:
        baselines: Detector separations in meters, strictly increasing
        values: Coherence values; kept within [0, 1] up to RANGE_SLACK when bounded
        bounded: Set False for normalized correlation scans, which may exceed one
    """

    baselines: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    bounded: bool = True

    def __post_init__(self):
        baselines = np.array(self.baselines, dtype=float).ravel()
        values = np.array(self.values, dtype=float).ravel()
        if baselines.size != values.size:
            raise ArgumentError(
                f"{baselines.size} baselines but {values.size} values"
            )
        if baselines.size > 1 and np.any(np.diff(baselines) <= 0):
            raise ArgumentError("baselines must be strictly increasing")
        if not (np.all(np.isfinite(baselines)) and np.all(np.isfinite(values))):
            raise ArgumentError("curve contains NaN or Inf")
        if self.bounded and values.size and (
                values.min() < -RANGE_SLACK or values.max() > 1.0 + RANGE_SLACK):
            raise ArgumentError(
                f"coherence values must lie in [0, 1], got [{values.min()}, {values.max()}]"
            )
        baselines.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, 'baselines', baselines)
        object.__setattr__(self, 'values', values)

    def __len__(self) -> int:
        return self.baselines.size

    def to_csv_text(self) -> str:
        return DataIO.csv_text(CSV_HEADER, list(zip(self.baselines, self.values)))

    @classmethod
    def from_csv_text(cls, text: str, bounded: bool = True) -> 'CoherenceCurve':
        columns = DataIO.parse_csv(text, CSV_HEADER)
        return cls(np.array(columns["b"]), np.array(columns["C"]), bounded)

    def write_csv(self, path: Union[str, Path]) -> Path:
        return DataIO.write_text_atomic(path, self.to_csv_text())

    @classmethod
    def read_csv(cls, path: Union[str, Path], bounded: bool = True) -> 'CoherenceCurve':
        columns = DataIO.read_csv(path, CSV_HEADER)
        return cls(np.array(columns["b"]), np.array(columns["C"]), bounded)


def check_baselines(baselines: Sequence[float]) -> np.ndarray:
    """
    Validate a baseline grid

    Args:
        baselines: Candidate baselines in meters

    Returns:
        Baselines as a float array

    Raises:
        ArgumentError: If empty, negative or not strictly increasing
    """
    b = np.array(baselines, dtype=float).ravel()
    if b.size == 0:
        raise ArgumentError("baseline grid is empty")
    if np.any(b < 0):
        raise ArgumentError("baselines must be nonnegative")
    if np.any(np.diff(b) <= 0):
        raise ArgumentError("baselines must be strictly increasing")
    return b
