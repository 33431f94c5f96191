"""Energy hub parameters and welfare functions.

An energy hub takes electricity and gas on its supply side and serves
electricity and heat on its demand side. All physical quantities are in
per-unit (pu), money in the case study's monetary unit.
"""
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class EnergyVector:
    """Pair of per-unit quantities, electricity first."""

    e: float
    g: float

    def __post_init__(self):
        object.__setattr__(self, "e", float(self.e))
        object.__setattr__(self, "g", float(self.g))
        if not (math.isfinite(self.e) and math.isfinite(self.g)):
            raise ValueError("Energy vector components shall be finite")

    @classmethod
    def of(cls, values):
        if isinstance(values, cls):
            return values
        e, g = values
        return cls(e, g)

    def as_array(self):
        return np.array([self.e, self.g], dtype=float)

    def __iter__(self):
        yield self.e
        yield self.g


@dataclass(frozen=True)
class EfficiencySet:
    """Conversion efficiencies of the transformer, CHP and furnace."""

    eta_ee: float
    eta_ce: float
    eta_ch: float
    eta_gh: float

    def __post_init__(self):
        for value in self.as_tuple():
            if not 0.0 < value <= 1.0:
                raise ValueError("Efficiencies shall be in (0, 1]")

    def as_tuple(self):
        return (self.eta_ee, self.eta_ce, self.eta_ch, self.eta_gh)


@dataclass(frozen=True)
class QuadraticCoeffs:
    """Coefficients of ``c2 * x**2 + c1 * x + c0``."""

    c2: float
    c1: float
    c0: float = 0.0

    def __post_init__(self):
        for value in (self.c2, self.c1, self.c0):
            if not math.isfinite(value):
                raise ValueError("Quadratic coefficients shall be finite")

    def __call__(self, x):
        return self.c2 * x * x + self.c1 * x + self.c0

    def derivative(self, x):
        return 2.0 * self.c2 * x + self.c1


@dataclass(frozen=True)
class TradePrice:
    """Price of energy traded between hubs (money/pu)."""

    zeta_e: float
    zeta_g: float

    def __post_init__(self):
        if self.zeta_e < 0 or self.zeta_g < 0:
            raise ValueError("Trade prices can't be negative")

    def as_array(self):
        return np.array([self.zeta_e, self.zeta_g], dtype=float)


@dataclass(frozen=True)
class HubParameters:
    """Everything one hub knows about itself.

    Cost is a quadratic per supply carrier and must be convex, utility
    is a quadratic per demand carrier and must be concave. An optional
    Taguchi loss ``taguchi_theta * ||d - d_hat||^2`` is subtracted from
    the utility.
    """

    efficiencies: EfficiencySet
    r_lo: EnergyVector
    r_hi: EnergyVector
    s_lo: EnergyVector
    s_hi: EnergyVector
    d_lo: EnergyVector
    d_hi: EnergyVector
    cost_e: QuadraticCoeffs
    cost_g: QuadraticCoeffs
    util_e: QuadraticCoeffs
    util_g: QuadraticCoeffs
    taguchi_theta: float = 0.0
    d_hat: EnergyVector = field(default=None)

    def __post_init__(self):
        for name in ("r", "s", "d"):
            lo = getattr(self, name + "_lo")
            hi = getattr(self, name + "_hi")
            if lo.e > hi.e or lo.g > hi.g:
                raise ValueError(
                    "Lower bound of {} exceeds its upper bound".format(name))
        if self.cost_e.c2 <= 0 or self.cost_g.c2 <= 0:
            raise ValueError("Cost functions shall be strictly convex")
        if self.util_e.c2 <= 0 or self.util_g.c2 <= 0:
            raise ValueError("Utility functions shall be strictly concave")
        if self.taguchi_theta < 0:
            raise ValueError("Taguchi parameter can't be negative")
        if self.taguchi_theta > 0 and self.d_hat is None:
            raise ValueError("Expected demand is required by the Taguchi loss")

    def bounds(self, name):
        """Return ``(lo, hi)`` arrays for ``'r'``, ``'s'`` or ``'d'``."""
        return (getattr(self, name + "_lo").as_array(),
                getattr(self, name + "_hi").as_array())


def cost(p, r):
    """Supply-side cost ``Ce(r_e) + Cg(r_g)``."""
    r_e, r_g = r
    return p.cost_e(r_e) + p.cost_g(r_g)


def utility(p, d):
    """Demand-side utility, less the Taguchi dissatisfaction if set."""
    d_e, d_g = d
    value = p.util_e.c0 - p.util_e.c2 * d_e * d_e + p.util_e.c1 * d_e
    value += p.util_g.c0 - p.util_g.c2 * d_g * d_g + p.util_g.c1 * d_g
    if p.taguchi_theta > 0:
        gap = np.asarray(d, dtype=float) - p.d_hat.as_array()
        value -= p.taguchi_theta * float(gap @ gap)
    return value


def local_welfare(p, zeta, r, s, d):
    """Welfare of one hub: utility minus cost minus the trade bill.

    ``s - r`` is what the hub buys from the other hubs; the trade terms
    cancel across the system because the traded amounts sum to zero.
    """
    trade = np.asarray(s, dtype=float) - np.asarray(r, dtype=float)
    return utility(p, d) - cost(p, r) - float(zeta.as_array() @ trade)
