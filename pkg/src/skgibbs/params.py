"""Shared parameter containers: model parameters and scan grids."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModelParams:
    """Inverse temperature and external field (both dimensionless).

    beta >= 0; both entries finite.
    """

    beta: float
    h: float

    def __post_init__(self):
        if not (np.isfinite(self.beta) and np.isfinite(self.h)):
            raise ValueError(f"non-finite parameters: beta={self.beta}, h={self.h}")
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid q_min..q_max with `points` nodes (endpoints included)."""

    q_min: float
    q_max: float
    points: int

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.points}")
        if not self.q_min < self.q_max:
            raise ValueError(f"need q_min < q_max, got [{self.q_min}, {self.q_max}]")

    def values(self):
        return np.linspace(self.q_min, self.q_max, self.points)

    @classmethod
    def parse(cls, text):
        """Parse 'q_min:q_max:points', e.g. '0.005:0.995:199'."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be 'q_min:q_max:points', got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))
