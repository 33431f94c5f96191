from .model import (EfficiencySet, EnergyVector, HubParameters,
                    QuadraticCoeffs, TradePrice, cost, local_welfare, utility)
from .operators import (CouplingOperators, compose, coupling_matrix,
                        coupling_operators, in_omega, lift, recover,
                        violations)


__all__ = [
    "CouplingOperators",
    "EfficiencySet",
    "EnergyVector",
    "HubParameters",
    "QuadraticCoeffs",
    "TradePrice",
    "compose",
    "cost",
    "coupling_matrix",
    "coupling_operators",
    "in_omega",
    "lift",
    "local_welfare",
    "recover",
    "utility",
    "violations",
]
