"""Centralized reference solution of the social welfare problem.

The oracle maximizes the two-dimensional dual function::

    q(mu) = sum_i min_{Omega_i} F_i(r_i, u_i) + mu'(r_i - M u_i)

by gradient ascent with backtracking; every inner minimization is the
hub's own price response. If the coupling residual is still above the
tolerance when the ascent stops, the primal is recovered from one
monolithic solve over all hubs with the coupling as an equality
constraint, and ``mu*`` is read from its multiplier.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.optimize import linprog

from ..analysis.metrics import system_objective
from ..exceptions import ConvergenceError, ModelError
from ..hub import EnergyVector, local_welfare, recover, violations
from ..hub.operators import M, M1
from ..solver import (QuadraticProgram, check_feasible, constraints, expand,
                      local_qp, price_response, solve_qp)


logger = logging.getLogger(__name__)

DUAL_ITERATIONS = 50
MIN_STEP = 1e-12

# r - Mu in reduced coordinates
_COUPLING = np.array([[1.0, 0.0, -1.0, 0.0, 0.0],
                      [0.0, 1.0, 0.0, -1.0, -1.0]])


@dataclass(frozen=True, eq=False)
class CentralSolution:
    r_star: list
    u_star: list
    F_star: float
    mu_star: EnergyVector
    feasibility_residual: float
    dual_gap: float
    method: str
    iterations: int

    @property
    def n(self):
        return len(self.r_star)

    def recovered(self):
        """``(s*, d*, alpha*)`` of every hub."""
        return [recover(u) for u in self.u_star]

    def local_welfare(self, hubs, zeta):
        """Welfare of every hub at the solution under trade price ``zeta``."""
        return [local_welfare(hub, zeta, r, s, d)
                for hub, r, (s, d, _) in zip(hubs, self.r_star,
                                              self.recovered())]


def _check_hubs(hubs):
    if not hubs:
        raise ValueError("At least one hub is required")
    for i, hub in enumerate(hubs, start=1):
        try:
            check_feasible(hub)
        except ModelError:
            raise ModelError("Hub {} feasible set is empty".format(i))

    blocks = [constraints(hub) for hub in hubs]
    G = linalg.block_diag(*[G for G, _ in blocks])
    h = np.concatenate([h for _, h in blocks])
    A = np.hstack([_COUPLING] * len(hubs))
    res = linprog(np.zeros(G.shape[1]), A_ub=G, b_ub=h, A_eq=A,
                  b_eq=np.zeros(2), bounds=[(None, None)] * G.shape[1],
                  method="highs")
    if res.status == 2:
        raise ModelError("Hub bounds admit no allocation with balanced "
                         "supply and demand")


def _price_responses(hubs, mu, tol, pool):
    def respond(hub):
        return price_response(hub, mu, tol=tol)

    if pool is None:
        return [respond(hub) for hub in hubs]
    return pool.map(respond, hubs)


def _dual_point(hubs, mu, tol, pool):
    responses = _price_responses(hubs, mu, tol, pool)
    value = sum(v for _, _, v in responses)
    gradient = np.sum([r - M @ u for r, u, _ in responses], axis=0)
    return responses, value, gradient


def _dual_ascent(hubs, tol, max_iter, pool):
    mu = np.zeros(2)
    responses, value, grad = _dual_point(hubs, mu, tol * 1e-2, pool)
    step = 1.0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        if np.linalg.norm(grad) <= tol:
            break
        step = min(1.0, 2.0 * step)
        while True:
            candidate = mu + step * grad
            trial = _dual_point(hubs, candidate, tol * 1e-2, pool)
            if trial[1] >= value + 0.5 * step * float(grad @ grad):
                break
            step *= 0.5
            if step < MIN_STEP:
                logger.debug("Dual step collapsed at iteration %d",
                             iterations)
                return mu, responses, value, grad, iterations
        mu = candidate
        responses, value, grad = trial
        logger.debug("Dual iteration %d: q=%.10g, |grad|=%.3e, step=%.3e",
                     iterations, value, np.linalg.norm(grad), step)
    return mu, responses, value, grad, iterations


def _monolithic(hubs, tol):
    qps = [local_qp(hub, np.zeros(2)) for hub in hubs]
    qp = QuadraticProgram(
        H=linalg.block_diag(*[q.H for q in qps]),
        g=np.concatenate([q.g for q in qps]),
        G=linalg.block_diag(*[q.G for q in qps]),
        h=np.concatenate([q.h for q in qps]),
        A=np.hstack([_COUPLING] * len(hubs)),
        b=np.zeros(2),
    )
    result = solve_qp(qp, tol=tol, feas_tol=tol, max_iter=200)
    allocation = [expand(hub, result.x[5 * i:5 * i + 5])
                  for i, hub in enumerate(hubs)]
    return allocation, result.y.copy(), result.iterations


def solve_centralized(hubs, tol=1e-6, max_iter=DUAL_ITERATIONS, pool=None):
    """Solve the coupled welfare problem of ``hubs`` in one place.

    ``pool`` optionally runs the per-hub price responses of one dual
    iteration concurrently (anything with a ``map`` method).
    """
    if not tol > 0:
        raise ValueError("Tolerance shall be positive")
    _check_hubs(hubs)

    mu, responses, _, grad, iterations = _dual_ascent(hubs, tol, max_iter,
                                                      pool)
    if np.linalg.norm(grad) <= tol:
        method = "dual"
        allocation = [(r, u) for r, u, _ in responses]
    else:
        method = "dual+recovery"
        logger.debug("Dual ascent stopped at |grad|=%.3e, recovering the "
                     "primal", np.linalg.norm(grad))
        try:
            allocation, mu, extra = _monolithic(hubs, min(tol, 1e-8))
        except ConvergenceError as exc:
            raise ConvergenceError(
                "Centralized solve didn't converge: {}".format(exc),
                best=mu, iterations=iterations) from exc
        iterations += extra
    logger.info("Centralized solution by %s in %d iterations", method,
                iterations)

    rs = [r for r, _ in allocation]
    us = [u for _, u in allocation]
    F_star = system_objective(hubs, rs, [M1 @ u for u in us])
    residual = float(np.max(np.abs(
        np.sum([r - M @ u for r, u in allocation], axis=0))))
    q_star = sum(v for _, _, v in _price_responses(hubs, mu, tol * 1e-2,
                                                  pool))
    return CentralSolution(r_star=rs, u_star=us, F_star=F_star,
                           mu_star=EnergyVector.of(mu),
                           feasibility_residual=residual,
                           dual_gap=abs(q_star - F_star),
                           method=method, iterations=iterations)


def global_welfare(hubs, allocation, tol=1e-8):
    """``sum_i cost(r_i) - utility(M1 u_i)`` of a per-hub feasible allocation.

    ``allocation`` is a sequence of ``(r, u)`` pairs, one per hub.
    """
    allocation = list(allocation)
    if len(allocation) != len(hubs):
        raise ValueError("Expected one allocation per hub")
    found = []
    for i, (hub, (r, u)) in enumerate(zip(hubs, allocation), start=1):
        broken = violations(hub, r, u, tol)
        if broken:
            found.append("hub {}: {}".format(i, ", ".join(broken)))
    if found:
        raise ModelError("Infeasible allocation ({})".format("; ".join(found)))
    return system_objective(hubs, [np.asarray(r, dtype=float)
                                   for r, _ in allocation],
                            [M1 @ np.asarray(u, dtype=float)
                             for _, u in allocation])
