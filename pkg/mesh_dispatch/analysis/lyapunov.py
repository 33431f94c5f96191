"""Lyapunov value series along a recorded run.

Both series need a saddle point ``(r*, u*, mu*)``, normally the oracle's.
"""
import numpy as np

from ..hub import EnergyVector
from ..hub.operators import M
from .certificate import certificate_matrix, deviation_operator


def _stack(states, name):
    return np.array([getattr(st, name) for st in states], dtype=float)


def _imbalance(states):
    return np.array([np.asarray(st.r) - M @ np.asarray(st.u)
                     for st in states], dtype=float)


def _deviation_state(states, rho):
    """``z = [dmu; rho de]`` and ``mu_bar`` of one round."""
    mu = _stack(states, "mu")
    e = _stack(states, "e")
    z = np.concatenate([(mu - mu.mean(axis=0)).ravel(),
                        rho * (e - e.mean(axis=0)).ravel()])
    return z, mu.mean(axis=0)


def _forcing(states, target, rho):
    """``c = rho (delta - (r* - Mu*))``, ``delta_i = r_i - Mu_i - e_bar``."""
    e_bar = _stack(states, "e").mean(axis=0)
    return rho * ((_imbalance(states) - e_bar) - target).ravel()


def lyapunov_series(history, W, solution, rho):
    """``V^k = ||I~ c^k - z^k||_P^2 + ||mu_bar^k - mu*||^2``.

    ``c^k`` looks one round ahead, so the series is one shorter than
    ``history``.
    """
    if len(history) < 2:
        raise ValueError("At least two rounds are required")
    P = certificate_matrix(deviation_operator(W))
    target = np.array([np.asarray(r) - M @ np.asarray(u)
                       for r, u in zip(solution.r_star, solution.u_star)])
    mu_star = EnergyVector.of(solution.mu_star).as_array()
    values = []
    for states, following in zip(history[:-1], history[1:]):
        z, mu_bar = _deviation_state(states, rho)
        c = _forcing(following, target, rho)
        v = np.concatenate([c, c]) - z
        gap = mu_bar - mu_star
        values.append(float(v @ P @ v) + float(gap @ gap))
    return np.array(values)


def lyapunov_surrogate(history, solution, rho):
    """``||mu_bar - mu*||^2 + sum ||dmu_i||^2 + rho^2 sum ||de_i||^2``."""
    mu_star = EnergyVector.of(solution.mu_star).as_array()
    values = []
    for states in history:
        z, mu_bar = _deviation_state(states, rho)
        gap = mu_bar - mu_star
        values.append(float(gap @ gap) + float(z @ z))
    return np.array(values)


def descent_fraction(series, burn_in=0, atol=0.0):
    """Share of steps after ``burn_in`` with ``V^{k+1} <= V^k + atol``."""
    series = np.asarray(series, dtype=float)[burn_in:]
    if len(series) < 2:
        raise ValueError("Series is too short")
    steps = np.diff(series)
    return float(np.mean(steps <= atol))

