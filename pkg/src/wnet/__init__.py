"""Exploratory analysis of dense weighted directed networks."""

from .model import (
    Network,
    NetworkError,
    NodeRecord,
    WeightMatrix,
    density,
    from_matrix,
    induced_subnetwork,
    to_matrix,
    weight_range,
    weighted_degrees,
)

__version__ = "0.1.0"
