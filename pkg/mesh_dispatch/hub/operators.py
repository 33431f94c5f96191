"""Coupling physics of an energy hub.

The gas input is split into two hypothetical ports, ``alpha * s_g``
feeding the CHP and ``(1 - alpha) * s_g`` feeding the furnace. With the
extended decision ``u = (l1, l2, l3, d_e, d_h)`` the bilinear coupling
``d = A(alpha) s`` becomes the fixed linear map ``B l = d``.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


TIEBREAK_TOL = 1e-9


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


# supply side s = M u
M = _frozen([[1, 0, 0, 0, 0],
             [0, 1, 1, 0, 0]])
# demand side d = M1 u
M1 = _frozen([[0, 0, 0, 1, 0],
              [0, 0, 0, 0, 1]])
# CHP port
M2 = _frozen([[0, 1, 0, 0, 0]])
# furnace port
M3 = _frozen([[0, 0, 1, 0, 0]])


@dataclass(frozen=True, eq=False)
class CouplingOperators:
    """The fixed matrices of one efficiency set (read-only arrays)."""

    B: np.ndarray
    B_bar: np.ndarray
    M: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    efficiencies: object

    def A(self, alpha):
        return coupling_matrix(self.efficiencies, alpha)


@lru_cache(maxsize=1024)
def coupling_operators(eff):
    """Build (and memoize) the operators for an :class:`EfficiencySet`."""
    B = _frozen([[eff.eta_ee, eff.eta_ce, 0.0],
                 [0.0, eff.eta_ch, eff.eta_gh]])
    B_bar = _frozen(np.hstack([B, np.zeros((2, 2))]))
    return CouplingOperators(B=B, B_bar=B_bar, M=M, M1=M1, M2=M2, M3=M3,
                             efficiencies=eff)


def _check_alpha(alpha):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("Dispatch factor shall be in [0, 1]")


def coupling_matrix(eff, alpha):
    """Return the 2x2 hub coupling matrix ``A(alpha)``."""
    _check_alpha(alpha)
    return np.array([
        [eff.eta_ee, alpha * eff.eta_ce],
        [0.0, alpha * eff.eta_ch + (1.0 - alpha) * eff.eta_gh],
    ])


def lift(s, alpha):
    """Split the supply ``s`` over the hypothetical ports."""
    _check_alpha(alpha)
    s_e, s_g = s
    return np.array([s_e, alpha * s_g, (1.0 - alpha) * s_g], dtype=float)


def compose(l, d):
    """Stack ports and demand into the extended decision ``u``."""
    return np.concatenate([np.asarray(l, dtype=float),
                           np.asarray(d, dtype=float)])


def recover(u, alpha_fallback=0.0, tiebreak_tol=TIEBREAK_TOL):
    """Read ``(s, d, alpha)`` back from an extended decision.

    When (almost) no gas flows the dispatch factor carries no meaning and
    ``alpha_fallback`` is reported instead.
    """
    u = np.asarray(u, dtype=float)
    gas = u[1] + u[2]
    s = np.array([u[0], gas])
    d = np.array([u[3], u[4]])
    if gas > tiebreak_tol:
        alpha = u[1] / gas
    else:
        alpha = alpha_fallback
    return s, d, alpha


def violations(p, r, u, tol=1e-8):
    """List the hub constraints violated by ``(r, u)``."""
    ops = coupling_operators(p.efficiencies)
    r = np.asarray(r, dtype=float)
    u = np.asarray(u, dtype=float)
    found = []
    for name, value in (("r", r), ("s", ops.M @ u), ("d", ops.M1 @ u)):
        lo, hi = p.bounds(name)
        if np.any(value < lo - tol) or np.any(value > hi + tol):
            found.append("{} bounds".format(name))
    if (ops.M2 @ u)[0] < -tol:
        found.append("CHP port nonnegativity")
    if (ops.M3 @ u)[0] < -tol:
        found.append("furnace port nonnegativity")
    if np.max(np.abs(ops.B_bar @ u - ops.M1 @ u)) > tol:
        found.append("hub coupling")
    return found


def in_omega(p, r, u, tol=1e-8):
    """Whether ``(r, u)`` lies in the hub's feasible set, up to ``tol``."""
    if tol < 0:
        raise ValueError("Tolerance can't be negative")
    return not violations(p, r, u, tol)
