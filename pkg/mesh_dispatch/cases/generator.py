"""Seeded random case studies for property tests.

Coefficients are drawn uniformly from intervals shaped like the ieee14
ones, so costs stay strictly convex and utilities strictly concave.
Bounds are resampled until the hub's feasible set is non-empty.
"""
import logging

import numpy as np

from ..coordination import RunConfig
from ..exceptions import ModelError
from ..hub import EnergyVector, HubParameters, QuadraticCoeffs
from ..network import Topology
from ..solver import check_feasible
from .ieee14 import EFFICIENCIES, ZETA
from .model import CaseStudy


logger = logging.getLogger(__name__)

DEFAULT_RANGES = {
    "a1_e": (0.03, 0.12),
    "a2_e": (11.5, 13.5),
    "a1_g": (0.021, 0.042),
    "a2_g": (5.0, 6.6),
    "g1_e": (0.07, 0.16),
    "g2_e": (7.2, 8.5),
    "g1_g": (0.010, 0.030),
    "g2_g": (3.2, 4.5),
    "const": (0.15, 0.78),
    "lo_e": (0.0, 50.0),
    "hi_e": (90.0, 160.0),
    "lo_g": (0.0, 50.0),
    "hi_g": (100.0, 170.0),
    "extra_edges": 0.2,
}

MAX_ATTEMPTS = 100


def _uniform(rng, ranges, key):
    lo, hi = ranges[key]
    return float(rng.uniform(lo, hi))


def _random_topology(n, rng, p):
    """Random spanning tree plus every other pair with probability ``p``."""
    edges = {(int(rng.integers(1, i)), i) for i in range(2, n + 1)}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) not in edges and rng.random() < p:
                edges.add((i, j))
    return Topology.from_edges(n, sorted(edges))


def _random_hub(rng, ranges):
    for _ in range(MAX_ATTEMPTS):
        lo = EnergyVector(_uniform(rng, ranges, "lo_e"),
                          _uniform(rng, ranges, "lo_g"))
        hi = EnergyVector(_uniform(rng, ranges, "hi_e"),
                          _uniform(rng, ranges, "hi_g"))
        if hi.g < 2.5 * lo.g:
            continue
        hub = HubParameters(
            efficiencies=EFFICIENCIES,
            r_lo=lo, r_hi=hi, s_lo=lo, s_hi=hi, d_lo=lo, d_hi=hi,
            cost_e=QuadraticCoeffs(_uniform(rng, ranges, "a1_e"),
                                   _uniform(rng, ranges, "a2_e"),
                                   _uniform(rng, ranges, "const")),
            cost_g=QuadraticCoeffs(_uniform(rng, ranges, "a1_g"),
                                   _uniform(rng, ranges, "a2_g")),
            util_e=QuadraticCoeffs(_uniform(rng, ranges, "g1_e"),
                                   _uniform(rng, ranges, "g2_e")),
            util_g=QuadraticCoeffs(_uniform(rng, ranges, "g1_g"),
                                   _uniform(rng, ranges, "g2_g")),
        )
        try:
            check_feasible(hub)
        except ModelError:
            logger.debug("Resampling a hub with an empty feasible set")
            continue
        return hub
    raise ModelError("Can't sample a feasible hub from the given ranges")


def random_case(n, seed=0, ranges=None):
    """Build a connected ``n``-hub case from ``seed``.

    ``ranges`` overrides entries of :data:`DEFAULT_RANGES`.
    """
    if n < 1:
        raise ValueError("At least one hub is required")
    merged = dict(DEFAULT_RANGES)
    if ranges:
        unknown = set(ranges) - set(merged)
        if unknown:
            raise ValueError("Unknown ranges: {}".format(
                ", ".join(sorted(unknown))))
        merged.update(ranges)

    rng = np.random.default_rng(seed)
    topology = _random_topology(n, rng, merged["extra_edges"])
    hubs = [_random_hub(rng, merged) for _ in range(n)]
    defaults = RunConfig(seed=seed)
    return CaseStudy(topology=topology, hubs=hubs, zeta=ZETA,
                     defaults=defaults, name="random-{}-{}".format(n, seed))
