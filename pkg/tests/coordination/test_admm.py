import logging
from dataclasses import replace

import numpy as np
import pytest

from mesh_dispatch.analysis import (descent_fraction, lyapunov_series,
                                    mismatch, relative_error)
from mesh_dispatch.coordination import (RunConfig, RunTrace, check_lemma1,
                                        check_lemma2, check_mu_bar, init, run,
                                        step, thread_count)
from mesh_dispatch.coordination.admm import THREADS_ENV
from mesh_dispatch.exceptions import NodeError
from mesh_dispatch.hub import EnergyVector, in_omega
from mesh_dispatch.hub.operators import M
from mesh_dispatch.network import (Topology, WeightMatrix, complete_topology,
                                   metropolis_weights, path_topology)
from mesh_dispatch.oracle import solve_centralized


@pytest.fixture
def triple(hub_factory):
    hubs = [hub_factory(),
            hub_factory(cost_e=(0.2, 15.0), util_g=(0.05, 12.0)),
            hub_factory(lo=(5.0, 5.0), hi=(150.0, 180.0),
                        util_e=(0.08, 25.0))]
    return hubs, path_topology(3)


def test_run_config():
    cfg = RunConfig()
    assert (cfg.rho, cfg.epsilon, cfg.n_min, cfg.n_max, cfg.seed) == \
        (0.1, 0.05, 300, 1000, 42)

    cases = [
        (dict(rho=0.0), 'Penalty factor shall be positive'),
        (dict(epsilon=-1.0), 'Stopping threshold shall be positive'),
        (dict(n_min=0), 'At least one iteration is required'),
        (dict(n_min=10, n_max=5),
         'Iteration cap is below the minimum iterations'),
        (dict(inner_tol=0.0), 'Inner tolerance shall be positive'),
    ]
    for kwargs, message in cases:
        with pytest.raises(ValueError) as excinfo:
            RunConfig(**kwargs)
        assert str(excinfo.value) == message


def test_init(triple):
    hubs, _ = triple
    cfg = RunConfig(seed=3)
    states = init(hubs, cfg)
    assert len(states) == 3
    again = init(hubs, cfg)
    for a, b in zip(states, again):
        assert np.array_equal(a.r, b.r) and np.array_equal(a.u, b.u)
    other = init(hubs, RunConfig(seed=4))
    assert not np.array_equal(states[0].r, other[0].r)

    for hub, state in zip(hubs, states):
        assert np.array_equal(state.e, state.r - M @ state.u)
        assert np.array_equal(state.mu, np.zeros(2))
        assert 0.0 <= state.alpha <= 1.0
        assert np.allclose(state.u[3:], state.d)
        assert np.allclose(state.s, M @ state.u)
        lo, hi = hub.bounds("r")
        assert np.all(lo <= state.r) and np.all(state.r <= hi)

    with pytest.raises(ValueError) as excinfo:
        init([], cfg)
    assert str(excinfo.value) == 'At least one hub is required'


def test_step_updates(triple):
    hubs, t = triple
    cfg = RunConfig(rho=0.5)
    W = metropolis_weights(t)
    states = init(hubs, cfg)
    updated = step(states, W, hubs, cfg)

    e_prev = np.array([st.e for st in states])
    mu_prev = np.array([st.mu for st in states])
    for i, (old, new) in enumerate(zip(states, updated)):
        assert np.allclose(new.sigma, W.W[i] @ e_prev)
        assert np.allclose(new.phi, W.W[i] @ mu_prev)
        expected = new.sigma + (new.r - old.r) - (M @ new.u - M @ old.u)
        assert np.allclose(new.e, expected, atol=1e-12)
        assert np.allclose(new.mu, new.phi + cfg.rho * new.e, atol=1e-12)
        assert in_omega(hubs[i], new.r, new.u, tol=1e-8)

    assert check_lemma1(updated) <= 1e-9
    assert check_mu_bar(states, updated, cfg.rho) <= 1e-9
    assert check_lemma2(states, updated, W, cfg.rho) <= 1e-9


def test_run_stops_at_n_min(triple):
    hubs, t = triple
    result = run(hubs, t, RunConfig(epsilon=1e9, n_min=5, n_max=50),
                 threads=1)
    assert result.converged
    assert result.iterations == 5
    assert [record.k for record in result.trace] == [1, 2, 3, 4, 5]
    assert result.history is None
    assert len(result.states) == 3
    assert result.settled_at == 1, "Every round is below a huge threshold"


def test_run_hits_cap(triple):
    hubs, t = triple
    result = run(hubs, t, RunConfig(epsilon=1e-15, n_min=3, n_max=3),
                 keep_history=True, threads=1)
    assert not result.converged
    assert result.iterations == 3
    assert result.settled_at is None
    assert len(result.history) == 4, "History starts at the initial point"


def test_run_invariants(triple):
    hubs, t = triple
    cfg = RunConfig(rho=0.3, epsilon=1e-3, n_min=20, n_max=40)
    result = run(hubs, t, cfg, keep_history=True, threads=1)
    for record in result.trace:
        assert record.lemma1_residual <= 1e-9
        assert record.lemma2_residual <= 1e-9
        assert record.mu_bar_residual <= 1e-9
        assert record.dr.shape == (3,)
        assert record.max_delta() >= float(np.max(record.dr))

    states = result.states
    e_bar = np.mean([st.e for st in states], axis=0)
    assert np.allclose(mismatch(states).as_array(), 3 * e_bar, atol=1e-9)
    assert np.allclose(result.trace[-1].mismatch,
                       mismatch(states).as_array())
    assert result.trace.column("F").shape == (len(result.trace),)


def test_run_validation(triple):
    hubs, t = triple
    cfg = RunConfig(n_min=1, n_max=1)
    with pytest.raises(ValueError) as excinfo:
        run(hubs[:2], t, cfg)
    assert str(excinfo.value) == 'Expected one hub per topology node'

    with pytest.raises(ValueError) as excinfo:
        run(hubs, t, cfg, W=WeightMatrix(np.full((3, 3), 1.0 / 3.0)))
    assert str(excinfo.value) == \
        'Weight matrix violates the gossip conditions'

    with pytest.raises(ValueError) as excinfo:
        run(hubs, Topology.from_edges(3, [(1, 2)]), cfg)
    assert str(excinfo.value) == 'Topology is not connected'


def test_run_custom_weights(triple):
    hubs, _ = triple
    t = complete_topology(3)
    W = WeightMatrix(np.full((3, 3), 1.0 / 3.0))
    result = run(hubs, t, RunConfig(epsilon=1e9, n_min=2, n_max=2), W=W,
                 threads=1)
    assert result.weights is W
    # complete averaging: every tracker equals the network mean
    sigma = np.array([st.sigma for st in result.states])
    assert np.allclose(sigma, sigma.mean(axis=0))


def test_node_error(hub_factory):
    hubs = [hub_factory(),
            hub_factory(s_hi=EnergyVector(1.0, 1.0),
                        d_lo=EnergyVector(50.0, 50.0))]
    with pytest.raises(NodeError) as excinfo:
        run(hubs, path_topology(2), RunConfig(n_min=1, n_max=1), threads=1)
    assert str(excinfo.value) == 'Node 2: Hub feasible set is empty'
    assert excinfo.value.node == 2


def test_threads_give_identical_runs(triple):
    hubs, t = triple
    cfg = RunConfig(epsilon=1e9, n_min=6, n_max=6)
    single = run(hubs, t, cfg, threads=1)
    pooled = run(hubs, t, cfg, threads=2)
    for a, b in zip(single.states, pooled.states):
        assert np.array_equal(a.r, b.r)
        assert np.array_equal(a.u, b.u)
        assert np.array_equal(a.mu, b.mu)
        assert np.array_equal(a.e, b.e)


def test_thread_count(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert thread_count() == 1
    monkeypatch.setenv(THREADS_ENV, "4")
    assert thread_count() == 4

    for value in ["0", "many"]:
        monkeypatch.setenv(THREADS_ENV, value)
        with pytest.raises(ValueError) as excinfo:
            thread_count()
        assert str(excinfo.value) == \
            'MESH_DISPATCH_THREADS shall be a positive integer'


def test_guidance_warnings(triple, caplog):
    hubs, t = triple
    with caplog.at_level(logging.WARNING,
                         logger="mesh_dispatch.coordination.admm"):
        run(hubs, t, RunConfig(epsilon=1e9, n_min=5, n_max=5), threads=1)
    messages = [record.getMessage() for record in caplog.records]
    assert "Minimum iterations 5 is small; more than 100 is advisable" in \
        messages
    assert any(m.startswith("Stopping threshold") for m in messages)


def test_run_trace():
    trace = RunTrace()
    assert len(trace) == 0

    class Record:
        def __init__(self, k):
            self.k = k

    trace.append(Record(1))
    trace.append(Record(2))
    with pytest.raises(ValueError) as excinfo:
        trace.append(Record(4))
    assert str(excinfo.value) == 'Trace records shall be consecutive'
    assert trace.column("k").tolist() == [1, 2]
    assert trace[-1].k == 2


def test_single_hub_matches_oracle(hub_factory):
    hub = hub_factory()
    t = Topology(1, frozenset())
    cfg = RunConfig(rho=1.0, epsilon=1e-7, n_min=5, n_max=2000)
    result = run([hub], t, cfg, keep_history=True, threads=1)
    assert result.converged

    solution = solve_centralized([hub])
    state = result.states[0]
    assert relative_error(state.r, solution.r_star[0]).value <= 1e-3
    assert np.allclose(state.e, state.r - M @ state.u, atol=1e-9)

    # one hub: the tracker part vanishes and V is the multiplier distance
    series = lyapunov_series(result.history, result.weights, solution,
                             cfg.rho)
    assert len(series) == len(result.history) - 1
    assert descent_fraction(series, atol=1e-5) == 1.0


def test_check_lemma1(triple):
    hubs, _ = triple
    states = init(hubs, RunConfig())
    assert check_lemma1(states) <= 1e-12

    states[1] = replace(states[1], e=states[1].e + np.array([0.0, 3.0]))
    assert check_lemma1(states) == pytest.approx(3.0)


def test_settled_at(triple):
    hubs, t = triple
    reference = run(hubs, t, RunConfig(epsilon=1e-15, n_min=60, n_max=60),
                    threads=1)
    deltas = [record.max_delta() for record in reference.trace]
    epsilon = 1.0001 * max(deltas[39:])
    expected = 60
    while expected > 1 and deltas[expected - 2] < epsilon:
        expected -= 1

    result = run(hubs, t, RunConfig(epsilon=epsilon, n_min=60, n_max=60),
                 threads=1)
    assert result.converged
    assert result.settled_at == expected
    assert result.settled_at <= 40
    assert all(d < epsilon for d in deltas[result.settled_at - 1:])
