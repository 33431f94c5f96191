"""Decentralized coordination by parallel ADMM with dynamic average tracking.

Every hub keeps its own iterate and talks to its neighbours only through
the mixed trackers ``sigma_i = sum_j w_ij e_j`` and the mixed multipliers
``phi_i = sum_j w_ij mu_j``. Rounds are synchronous: every node of round
``k + 1`` reads round-``k`` values only.
"""
import logging
import os
from dataclasses import dataclass, field
from multiprocessing.pool import ThreadPool

import numpy as np

from ..analysis.metrics import consensus_spread, mismatch, system_objective
from ..exceptions import ConvergenceError, ModelError, NodeError
from ..hub import compose, coupling_operators, lift, recover
from ..network import metropolis_weights, mix_all, validate_weights
from ..solver import Subproblem, solve_local


logger = logging.getLogger(__name__)

THREADS_ENV = "MESH_DISPATCH_THREADS"


@dataclass(frozen=True)
class RunConfig:
    rho: float = 0.1
    epsilon: float = 0.05
    n_min: int = 300
    n_max: int = 1000
    seed: int = 42
    inner_tol: float = 1e-8

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError("Penalty factor shall be positive")
        if not self.epsilon > 0:
            raise ValueError("Stopping threshold shall be positive")
        if self.n_min < 1:
            raise ValueError("At least one iteration is required")
        if self.n_max < self.n_min:
            raise ValueError("Iteration cap is below the minimum iterations")
        if not self.inner_tol > 0:
            raise ValueError("Inner tolerance shall be positive")


@dataclass(frozen=True, eq=False)
class NodeState:
    r: np.ndarray
    u: np.ndarray
    mu: np.ndarray
    e: np.ndarray
    sigma: np.ndarray
    phi: np.ndarray
    s: np.ndarray
    d: np.ndarray
    alpha: float

    def imbalance(self):
        """``r - Mu``, what the hub supplies beyond what it uses."""
        return self.r - self.s


@dataclass(frozen=True, eq=False)
class TraceRecord:
    k: int
    dr: np.ndarray
    ds: np.ndarray
    dd: np.ndarray
    dalpha: np.ndarray
    mismatch: np.ndarray
    mu_spread: float
    e_spread: float
    lemma1_residual: float
    lemma2_residual: float
    mu_bar_residual: float
    F: float

    def max_delta(self):
        return float(max(np.max(self.dr), np.max(self.ds),
                         np.max(self.dd), np.max(self.dalpha)))


@dataclass
class RunTrace:
    records: list = field(default_factory=list)

    def append(self, record):
        if self.records and record.k != self.records[-1].k + 1:
            raise ValueError("Trace records shall be consecutive")
        self.records.append(record)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, index):
        return self.records[index]

    def column(self, name):
        return np.array([getattr(record, name) for record in self.records])


@dataclass(frozen=True, eq=False)
class RunResult:
    trace: RunTrace
    states: list
    converged: bool
    weights: object
    history: list = None
    # first round of the closing stretch in which every hub stays settled
    settled_at: int = None

    @property
    def iterations(self):
        return len(self.trace)


def _state(r, u, mu, e, sigma, phi):
    s, d, alpha = recover(u)
    return NodeState(r=r, u=u, mu=mu, e=e, sigma=sigma, phi=phi,
                     s=s, d=d, alpha=alpha)


def init(hubs, cfg):
    """Seeded starting point of every hub.

    ``r`` and ``s`` are drawn uniformly in their boxes, the dispatch factor
    uniformly in ``[0, 1]``; ``d`` is set from the hub coupling so that
    ``B_bar u = M1 u`` holds. Multipliers and mixed values start at zero and
    ``e = r - Mu`` exactly.
    """
    if not hubs:
        raise ValueError("At least one hub is required")
    rng = np.random.default_rng(cfg.seed)
    states = []
    for hub in hubs:
        ops = coupling_operators(hub.efficiencies)
        r = rng.uniform(*hub.bounds("r"))
        s = rng.uniform(*hub.bounds("s"))
        alpha = rng.uniform(0.0, 1.0)
        l = lift(s, alpha)
        u = compose(l, ops.B @ l)
        zero = np.zeros(2)
        states.append(_state(r, u, zero, r - ops.M @ u, zero, zero))
    return states


def _solve_node(i, hub, state, sigma, phi, cfg):
    sp = Subproblem(hub=hub, rho=cfg.rho, r_anchor=state.r,
                    u_anchor=state.u, sigma=sigma, phi=phi)
    try:
        return solve_local(sp, tol=cfg.inner_tol)
    except (ModelError, ConvergenceError) as exc:
        raise NodeError(i + 1, exc) from exc


def step(states, W, hubs, cfg, pool=None):
    """One synchronous round over all hubs."""
    sigma = mix_all(W, [state.e for state in states])
    phi = mix_all(W, [state.mu for state in states])

    def solve(i):
        return _solve_node(i, hubs[i], states[i], sigma[i], phi[i], cfg)

    indices = range(len(states))
    if pool is None:
        solutions = [solve(i) for i in indices]
    else:
        solutions = pool.map(solve, indices)

    updated = []
    for i, (state, sol) in enumerate(zip(states, solutions)):
        M = coupling_operators(hubs[i].efficiencies).M
        e = sigma[i] + (sol.r - state.r) - (M @ sol.u - M @ state.u)
        mu = phi[i] + cfg.rho * e
        updated.append(_state(sol.r, sol.u, mu, e, sigma[i], phi[i]))
    return updated


def check_lemma1(states):
    """``||sum_i e_i - sum_i (r_i - Mu_i)||_inf``."""
    e = np.sum([state.e for state in states], axis=0)
    imbalance = np.sum([state.imbalance() for state in states], axis=0)
    return float(np.max(np.abs(e - imbalance)))


def check_mu_bar(prev, cur, rho):
    """Residual of ``mu_bar' = mu_bar + rho * e_bar'``."""
    mu_bar = np.mean([state.mu for state in prev], axis=0)
    mu_bar_next = np.mean([state.mu for state in cur], axis=0)
    e_bar_next = np.mean([state.e for state in cur], axis=0)
    return float(np.max(np.abs(mu_bar_next - mu_bar - rho * e_bar_next)))


def _deviations(states):
    e = np.array([state.e for state in states])
    mu = np.array([state.mu for state in states])
    imbalance = np.array([state.imbalance() for state in states])
    e_bar = e.mean(axis=0)
    return e - e_bar, mu - mu.mean(axis=0), imbalance - e_bar


def check_lemma2(prev, cur, W, rho):
    """Residual of the tracker recursions.

    ``de' = W de + (delta' - delta)`` and ``dmu' = W dmu + rho de'`` where
    ``de``, ``dmu`` are deviations from the network average and
    ``delta_i = (r_i - Mu_i) - e_bar``.
    """
    de, dmu, delta = _deviations(prev)
    de_next, dmu_next, delta_next = _deviations(cur)
    A = W.W
    tracker = de_next - (A @ de + delta_next - delta)
    multiplier = dmu_next - (A @ dmu + rho * de_next)
    return float(max(np.max(np.abs(tracker)), np.max(np.abs(multiplier))))


def _record(k, prev, cur, W, hubs, cfg):
    def norms(name):
        return np.array([np.linalg.norm(getattr(b, name) - getattr(a, name))
                         for a, b in zip(prev, cur)])

    mu_spread, e_spread = consensus_spread(cur)
    return TraceRecord(
        k=k,
        dr=norms("r"),
        ds=norms("s"),
        dd=norms("d"),
        dalpha=np.array([abs(b.alpha - a.alpha) for a, b in zip(prev, cur)]),
        mismatch=mismatch(cur).as_array(),
        mu_spread=mu_spread,
        e_spread=e_spread,
        lemma1_residual=check_lemma1(cur),
        lemma2_residual=check_lemma2(prev, cur, W, cfg.rho),
        mu_bar_residual=check_mu_bar(prev, cur, cfg.rho),
        F=system_objective(hubs, [state.r for state in cur],
                           [state.d for state in cur]),
    )


def thread_count():
    value = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        raise ValueError("{} shall be a positive integer".format(THREADS_ENV))
    return threads


def _check_guidance(states, cfg):
    smallest = min(float(np.linalg.norm(state.e)) for state in states)
    if cfg.epsilon >= 0.1 * smallest:
        logger.warning("Stopping threshold %.3g is not small against the "
                       "initial trackers (smallest norm %.3g)",
                       cfg.epsilon, smallest)
    if cfg.n_min <= 100:
        logger.warning("Minimum iterations %d is small; more than 100 is "
                       "advisable", cfg.n_min)


def run(hubs, t, cfg, W=None, keep_history=False, threads=None):
    """Iterate rounds until every hub settles or ``n_max`` is reached.

    A run stops after round ``k`` when ``k >= n_min`` and every per-node
    change of ``r``, ``s``, ``d`` and ``alpha`` is below ``epsilon``.
    Hitting ``n_max`` first is not an error: the result is flagged as not
    converged.
    """
    if len(hubs) != t.n:
        raise ValueError("Expected one hub per topology node")
    if W is None:
        W = metropolis_weights(t)
    elif not validate_weights(W, t, tol=1e-9):
        raise ValueError("Weight matrix violates the gossip conditions")
    threads = thread_count() if threads is None else threads

    states = init(hubs, cfg)
    _check_guidance(states, cfg)
    logger.info("Coordinating %d hubs (rho=%g, epsilon=%g, n_min=%d, "
                "n_max=%d)", len(hubs), cfg.rho, cfg.epsilon, cfg.n_min,
                cfg.n_max)

    trace = RunTrace()
    history = [states] if keep_history else None
    converged = False
    pool = ThreadPool(threads) if threads > 1 else None
    try:
        for k in range(1, cfg.n_max + 1):
            updated = step(states, W, hubs, cfg, pool)
            record = _record(k, states, updated, W, hubs, cfg)
            trace.append(record)
            states = updated
            if keep_history:
                history.append(states)
            logger.debug("k=%d max delta=%.3e mismatch=%.3e lemma1=%.1e",
                         k, record.max_delta(),
                         float(np.linalg.norm(record.mismatch)),
                         record.lemma1_residual)
            if k >= cfg.n_min and record.max_delta() < cfg.epsilon:
                converged = True
                break
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    settled_at = None
    if converged:
        settled_at = len(trace)
        while (settled_at > 1
               and trace[settled_at - 2].max_delta() < cfg.epsilon):
            settled_at -= 1
        logger.info("Converged after %d rounds, settled from round %d",
                    len(trace), settled_at)
    else:
        logger.warning("Stopped at the iteration cap (%d) without settling",
                       cfg.n_max)
    return RunResult(trace=trace, states=states, converged=converged,
                     weights=W, history=history, settled_at=settled_at)
