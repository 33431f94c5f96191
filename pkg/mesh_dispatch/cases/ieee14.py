"""Fourteen energy hubs on the IEEE 14-bus network.

Branches are the standard IEEE 14-bus branch list; line impedances and
bus data play no role here. Per-hub coefficients are tabulated below,
bounds are given in units of 10 pu and apply to ``r``, ``s`` and ``d``
alike. The merged constant of the four quadratics is carried by the
electricity cost.
"""
import numpy as np

from ..coordination import RunConfig
from ..hub import (EfficiencySet, EnergyVector, HubParameters,
                   QuadraticCoeffs, TradePrice)
from ..network import Topology
from .model import CaseStudy


BRANCHES = (
    (1, 2), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5), (4, 7), (4, 9),
    (5, 6), (6, 11), (6, 12), (6, 13), (7, 8), (7, 9), (9, 10), (9, 14),
    (10, 11), (12, 13), (13, 14),
)

EFFICIENCIES = EfficiencySet(eta_ee=0.9, eta_ce=0.7, eta_ch=0.5, eta_gh=0.4)
ZETA = TradePrice(zeta_e=1.1, zeta_g=0.6)
BOUND_SCALE = 10.0

# columns: a1_e, a2_e, a1_g, a2_g, g1_e, g2_e, g1_g, g2_g, constant
COEFFICIENTS = np.array([
    [0.11, 12.0, 0.033, 5.6, 0.13, 7.2, 0.023, 3.4, 0.57],
    [0.05, 13.5, 0.042, 5.0, 0.14, 7.3, 0.024, 3.3, 0.33],
    [0.08, 11.5, 0.033, 5.5, 0.11, 8.5, 0.030, 4.5, 0.50],
    [0.03, 12.5, 0.021, 6.6, 0.09, 7.4, 0.028, 3.7, 0.58],
    [0.06, 11.7, 0.034, 5.7, 0.15, 7.7, 0.015, 3.8, 0.21],
    [0.07, 11.9, 0.025, 5.5, 0.16, 8.1, 0.017, 4.1, 0.24],
    [0.04, 12.6, 0.028, 5.3, 0.10, 8.2, 0.020, 3.2, 0.72],
    [0.12, 12.8, 0.036, 6.1, 0.12, 7.9, 0.022, 3.9, 0.15],
    [0.11, 11.6, 0.030, 6.4, 0.13, 8.0, 0.016, 4.3, 0.78],
    [0.06, 13.3, 0.029, 6.0, 0.08, 7.5, 0.018, 3.6, 0.22],
    [0.09, 13.2, 0.023, 5.8, 0.11, 7.6, 0.021, 3.8, 0.40],
    [0.05, 13.0, 0.027, 5.9, 0.07, 7.4, 0.017, 4.0, 0.56],
    [0.07, 12.7, 0.026, 5.1, 0.11, 7.8, 0.026, 3.9, 0.42],
    [0.08, 12.1, 0.031, 5.2, 0.10, 8.3, 0.010, 3.9, 0.53],
])

# columns: lo_e, hi_e, lo_g, hi_g (10 pu)
BOUNDS = np.array([
    [2, 9, 3, 10],
    [4, 15, 2, 16],
    [1, 10, 1, 12],
    [2, 14, 2, 14],
    [2, 14, 3, 16],
    [3, 15, 4, 17],
    [3, 15, 3, 15],
    [4, 16, 3, 16],
    [2, 15, 2, 14],
    [0, 9, 0, 10],
    [5, 13, 5, 15],
    [2, 15, 1, 14],
    [2, 15, 2, 16],
    [3, 16, 3, 16],
], dtype=float)

DEFAULTS = RunConfig(rho=0.1, epsilon=0.05, n_min=300, n_max=1000, seed=42,
                     inner_tol=1e-8)


def _hub(coeffs, bounds):
    a1_e, a2_e, a1_g, a2_g, g1_e, g2_e, g1_g, g2_g, const = coeffs
    lo_e, hi_e, lo_g, hi_g = BOUND_SCALE * bounds
    lo = EnergyVector(lo_e, lo_g)
    hi = EnergyVector(hi_e, hi_g)
    return HubParameters(
        efficiencies=EFFICIENCIES,
        r_lo=lo, r_hi=hi, s_lo=lo, s_hi=hi, d_lo=lo, d_hi=hi,
        cost_e=QuadraticCoeffs(a1_e, a2_e, const),
        cost_g=QuadraticCoeffs(a1_g, a2_g),
        util_e=QuadraticCoeffs(g1_e, g2_e),
        util_g=QuadraticCoeffs(g1_g, g2_g),
    )


def ieee14_case():
    """Build the 14-hub case study."""
    hubs = [_hub(coeffs, bounds)
            for coeffs, bounds in zip(COEFFICIENTS.tolist(), BOUNDS)]
    return CaseStudy(topology=Topology.from_edges(14, BRANCHES), hubs=hubs,
                     zeta=ZETA, defaults=DEFAULTS, name="ieee14")
