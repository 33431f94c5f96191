"""Scalar diagnostics of allocations and node states.

Functions here only read ``r``, ``u``, ``mu`` and ``e`` attributes, so they
accept coordination node states and oracle solutions alike.
"""
from typing import NamedTuple

import numpy as np

from ..hub import EnergyVector, cost, utility
from ..hub.operators import M


class RelativeError(NamedTuple):
    """Error value; ``relative`` is false when the reference was zero."""

    value: float
    relative: bool


def mismatch(states):
    """Total ``sum_i (r_i - M u_i)`` per carrier."""
    total = np.sum([np.asarray(st.r) - M @ np.asarray(st.u)
                    for st in states], axis=0)
    return EnergyVector.of(total)


def relative_error(x_k, x_star):
    """``||x_k - x*|| / ||x*||``, or the absolute norm if ``x*`` is zero."""
    x_k = np.asarray(x_k, dtype=float)
    x_star = np.asarray(x_star, dtype=float)
    error = float(np.linalg.norm(x_k - x_star))
    reference = float(np.linalg.norm(x_star))
    if reference == 0.0:
        return RelativeError(error, False)
    return RelativeError(error / reference, True)


def relative_error_series(history, reference, name):
    """Per-round, per-node relative error of attribute ``name``.

    ``reference`` is a list of per-node target vectors, e.g. the oracle's
    ``r_star``. Returns an array of shape ``(rounds, nodes)``.
    """
    return np.array([[relative_error(getattr(st, name), ref).value
                      for st, ref in zip(states, reference)]
                     for states in history])


def welfare_gap(F_k, F_star):
    """``(F_k - F*) / F*``."""
    if F_star == 0:
        raise ValueError("Reference welfare can't be zero")
    return (F_k - F_star) / F_star


def consensus_spread(states):
    """``(max_i ||mu_i - mu_bar||, max_i ||e_i - e_bar||)``."""
    mu = np.array([st.mu for st in states], dtype=float)
    e = np.array([st.e for st in states], dtype=float)
    mu_dev = np.linalg.norm(mu - mu.mean(axis=0), axis=1)
    e_dev = np.linalg.norm(e - e.mean(axis=0), axis=1)
    return float(np.max(mu_dev)), float(np.max(e_dev))


def system_objective(hubs, rs, ds):
    """``sum_i cost(r_i) - utility(d_i)`` without any feasibility check."""
    return float(sum(cost(hub, r) - utility(hub, d)
                     for hub, r, d in zip(hubs, rs, ds)))
