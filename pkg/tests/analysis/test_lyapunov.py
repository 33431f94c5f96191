import numpy as np
import pytest

from mesh_dispatch.analysis import (descent_fraction, lyapunov_series,
                                    lyapunov_surrogate)
from mesh_dispatch.coordination import RunConfig, run
from mesh_dispatch.network import path_topology
from mesh_dispatch.oracle import solve_centralized


def test_descent_fraction():
    assert descent_fraction([3.0, 2.0, 2.0, 1.0]) == 1.0
    assert descent_fraction([1.0, 2.0, 1.0]) == 0.5
    assert descent_fraction([5.0, 9.0, 4.0, 3.0], burn_in=1) == 1.0
    assert descent_fraction([1.0, 1.5], atol=1.0) == 1.0

    with pytest.raises(ValueError) as excinfo:
        descent_fraction([1.0, 2.0], burn_in=1)
    assert str(excinfo.value) == 'Series is too short'


def test_series(hub_factory):
    hubs = [hub_factory(), hub_factory(cost_e=(0.2, 14.0)),
            hub_factory(util_e=(0.05, 22.0))]
    t = path_topology(3)
    cfg = RunConfig(rho=0.5, epsilon=1e9, n_min=8, n_max=8)
    result = run(hubs, t, cfg, keep_history=True, threads=1)
    solution = solve_centralized(hubs)

    series = lyapunov_series(result.history, result.weights, solution,
                             cfg.rho)
    assert series.shape == (len(result.history) - 1,)
    assert np.all(series >= 0.0)

    surrogate = lyapunov_surrogate(result.history, solution, cfg.rho)
    assert surrogate.shape == (len(result.history),)
    mu_star = solution.mu_star.as_array()
    # the first point has zero multipliers everywhere
    assert surrogate[0] == pytest.approx(
        float(mu_star @ mu_star) + cfg.rho ** 2 * sum(
            float(np.sum((st.e - np.mean([x.e for x in result.history[0]],
                                         axis=0)) ** 2))
            for st in result.history[0]))

    with pytest.raises(ValueError) as excinfo:
        lyapunov_series(result.history[:1], result.weights, solution,
                        cfg.rho)
    assert str(excinfo.value) == 'At least two rounds are required'
