from .topology import Topology, complete_topology, path_topology
from .weights import (WeightMatrix, metropolis_weights, mix_all, neighbor_sum,
                      spectral_gap, validate_weights)


__all__ = [
    "Topology",
    "WeightMatrix",
    "complete_topology",
    "metropolis_weights",
    "mix_all",
    "neighbor_sum",
    "path_topology",
    "spectral_gap",
    "validate_weights",
]
