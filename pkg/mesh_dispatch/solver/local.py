"""Per-hub subproblem of the coordination round.

Each round a hub minimizes over its feasible set::

    F_i(r, u) + phi'(r - Mu) + rho/2 ||(r - r_k) - M(u - u_k) + sigma||^2

The hub coupling ``B_bar u = M1 u`` is eliminated by substituting
``d_e = eta_ee u1 + eta_ce u2`` and ``d_h = eta_ch u2 + eta_gh u3``, which
leaves five variables ``x = (r_e, r_g, u1, u2, u3)`` and halfspace
constraints only.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from ..exceptions import ConvergenceError, ModelError
from ..hub import coupling_operators, cost, utility
from .qp import QuadraticProgram, project_polytope, solve_qp


logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_FEAS_TOL = 1e-8
RIDGE = 1e-10
CACHE_SIZE = 1024
# inner tolerances tried, relative to the requested one
_TIGHTENING = (1.0, 1e-2, 1e-4)

# r - Mu in reduced coordinates
_P = np.array([[1.0, 0.0, -1.0, 0.0, 0.0],
               [0.0, 1.0, 0.0, -1.0, -1.0]])
_P.setflags(write=False)
_R = np.array([[1.0, 0.0, 0.0, 0.0, 0.0],
               [0.0, 1.0, 0.0, 0.0, 0.0]])
_R.setflags(write=False)
_S = np.array([[0.0, 0.0, 1.0, 0.0, 0.0],
               [0.0, 0.0, 0.0, 1.0, 1.0]])
_S.setflags(write=False)


@dataclass(frozen=True, eq=False)
class Subproblem:
    """Subproblem of one hub in one round."""

    hub: object
    rho: float
    r_anchor: np.ndarray
    u_anchor: np.ndarray
    sigma: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError("Penalty factor shall be positive")
        for name in ("r_anchor", "u_anchor", "sigma", "phi"):
            value = np.asarray(getattr(self, name), dtype=float)
            if not np.all(np.isfinite(value)):
                raise ValueError("Subproblem data shall be finite")
            object.__setattr__(self, name, value)


@dataclass(frozen=True, eq=False)
class LocalSolution:
    r: np.ndarray
    u: np.ndarray
    kkt_residual: float
    objective: float
    iterations: int = 0


def demand_map(hub):
    """``D`` such that ``d = D x`` in reduced coordinates."""
    eff = hub.efficiencies
    return np.array([[0.0, 0.0, eff.eta_ee, eff.eta_ce, 0.0],
                     [0.0, 0.0, 0.0, eff.eta_ch, eff.eta_gh]])


def reduce(r, u):
    """Reduced coordinates of ``(r, u)``."""
    u = np.asarray(u, dtype=float)
    return np.concatenate([np.asarray(r, dtype=float), u[:3]])


def expand(hub, x):
    """Back from reduced coordinates to ``(r, u)``."""
    x = np.asarray(x, dtype=float)
    ops = coupling_operators(hub.efficiencies)
    l = x[2:]
    return x[:2].copy(), np.concatenate([l, ops.B @ l])


@lru_cache(maxsize=CACHE_SIZE)
def constraints(hub):
    """``(G, h)`` of the hub's feasible set in reduced coordinates."""
    D = demand_map(hub)
    blocks = []
    rhs = []
    for name, rows in (("r", _R), ("s", _S), ("d", D)):
        lo, hi = hub.bounds(name)
        blocks.extend([rows, -rows])
        rhs.extend([hi, -lo])
    ports = np.array([[0.0, 0.0, 0.0, -1.0, 0.0],
                      [0.0, 0.0, 0.0, 0.0, -1.0]])
    blocks.append(ports)
    rhs.append(np.zeros(2))
    G = np.vstack(blocks)
    h = np.concatenate(rhs)
    G.setflags(write=False)
    h.setflags(write=False)
    return G, h


@lru_cache(maxsize=CACHE_SIZE)
def check_feasible(hub):
    """Raise :class:`ModelError` if the hub's feasible set is empty."""
    G, h = constraints(hub)
    res = linprog(np.zeros(G.shape[1]), A_ub=G, b_ub=h,
                  bounds=[(None, None)] * G.shape[1], method="highs")
    if res.status == 2:
        raise ModelError("Hub feasible set is empty")
    return True


def _welfare_quadratic(hub):
    """Hessian, linear term and constant of ``F_i = cost - utility``."""
    D = demand_map(hub)
    a1 = np.array([hub.cost_e.c2, hub.cost_g.c2])
    a2 = np.array([hub.cost_e.c1, hub.cost_g.c1])
    g1 = np.array([hub.util_e.c2, hub.util_g.c2]) + hub.taguchi_theta
    g2 = np.array([hub.util_e.c1, hub.util_g.c1])
    const = (hub.cost_e.c0 + hub.cost_g.c0
             - hub.util_e.c0 - hub.util_g.c0)
    if hub.taguchi_theta > 0:
        d_hat = hub.d_hat.as_array()
        g2 = g2 + 2.0 * hub.taguchi_theta * d_hat
        const += hub.taguchi_theta * float(d_hat @ d_hat)
    H = _R.T @ np.diag(2.0 * a1) @ _R + D.T @ np.diag(2.0 * g1) @ D
    g = _R.T @ a2 - D.T @ g2
    return H, g, const


def local_qp(hub, phi, rho=0.0, center=None):
    """QP of ``F_i + phi'(r - Mu) + rho/2 ||(r - Mu) - center||^2``."""
    H, g, _ = _welfare_quadratic(hub)
    g = g + _P.T @ np.asarray(phi, dtype=float)
    if rho > 0:
        H = H + rho * (_P.T @ _P)
        g = g - rho * (_P.T @ center)
    else:
        # gas split between the ports is free without the penalty
        H = H + np.diag([0.0, 0.0, 0.0, RIDGE, RIDGE])
    G, h = constraints(hub)
    return QuadraticProgram(H=H, g=g, G=G, h=h)


def _center(sp):
    return _P @ reduce(sp.r_anchor, sp.u_anchor) - sp.sigma


def subproblem_qp(sp):
    return local_qp(sp.hub, sp.phi, sp.rho, _center(sp))


def objective(sp, x):
    """Round objective at reduced point ``x``."""
    x = np.asarray(x, dtype=float)
    r = x[:2]
    s = _S @ x
    d = demand_map(sp.hub) @ x
    ops = coupling_operators(sp.hub.efficiencies)
    s_anchor = ops.M @ sp.u_anchor
    penalty = (r - sp.r_anchor) - (s - s_anchor) + sp.sigma
    return (cost(sp.hub, r) - utility(sp.hub, d)
            + float(sp.phi @ (r - s))
            + 0.5 * sp.rho * float(penalty @ penalty))


def gradient(sp, x):
    """Analytic gradient of :func:`objective`."""
    x = np.asarray(x, dtype=float)
    hub = sp.hub
    D = demand_map(hub)
    r = x[:2]
    d = D @ x
    cost_grad = np.array([hub.cost_e.derivative(r[0]),
                          hub.cost_g.derivative(r[1])])
    util_grad = np.array([hub.util_e.c1 - 2.0 * hub.util_e.c2 * d[0],
                          hub.util_g.c1 - 2.0 * hub.util_g.c2 * d[1]])
    if hub.taguchi_theta > 0:
        util_grad -= 2.0 * hub.taguchi_theta * (d - hub.d_hat.as_array())
    penalty = _P @ x - _center(sp)
    return (_R.T @ cost_grad - D.T @ util_grad
            + _P.T @ sp.phi + sp.rho * (_P.T @ penalty))


def project(hub, x):
    """Euclidean projection onto the feasible set in reduced coordinates."""
    x = np.asarray(x, dtype=float)
    lo, hi = hub.bounds("r")
    G, h = constraints(hub)
    # rows 4.. only involve (u1, u2, u3)
    return np.concatenate([np.clip(x[:2], lo, hi),
                           project_polytope(x[2:], G[4:, 2:], h[4:])])


def kkt_residual(sp, cand, step=1.0):
    """Projected-gradient residual ``||x - proj(x - step grad)|| / step``."""
    r, u = cand
    x = reduce(r, u)
    moved = project(sp.hub, x - step * gradient(sp, x))
    return float(np.linalg.norm(x - moved)) / step


def solve_local(sp, tol=DEFAULT_TOL, feas_tol=DEFAULT_FEAS_TOL):
    """Minimize the round objective of ``sp`` over the hub's feasible set.

    The returned point satisfies ``kkt_residual <= tol``. The QP tolerance
    is scaled with the gradient, so a loose solve is repeated at tighter
    inner tolerances; :class:`ConvergenceError` carries the best point when
    none of them meets ``tol``.
    """
    if not tol > 0:
        raise ValueError("Tolerance shall be positive")
    check_feasible(sp.hub)
    qp = subproblem_qp(sp)
    best = None
    iterations = 0
    for factor in _TIGHTENING:
        try:
            result = solve_qp(qp, tol=tol * factor,
                              feas_tol=feas_tol * factor)
        except ConvergenceError as exc:
            iterations += exc.iterations or 0
            if exc.best is None:
                continue
            x = project(sp.hub, exc.best)
        else:
            iterations += result.iterations
            x = result.x
        r, u = expand(sp.hub, x)
        residual = kkt_residual(sp, (r, u))
        if best is None or residual < best.kkt_residual:
            best = LocalSolution(r=r, u=u, kkt_residual=residual,
                                 objective=objective(sp, x),
                                 iterations=iterations)
        if residual <= tol:
            return best
        logger.debug("KKT residual %.3e above tolerance %.1e", residual,
                     tol * factor)
    raise ConvergenceError(
        "Local solve didn't reach KKT residual {:.1e}".format(tol),
        best=best, iterations=iterations)


def price_response(hub, mu, tol=DEFAULT_TOL, feas_tol=DEFAULT_FEAS_TOL):
    """Minimize ``F_i + mu'(r - Mu)`` over the hub's feasible set.

    Same feasible set and QP routine as :func:`solve_local`, without the
    penalty and anchors. Returns ``(r, u, value)``.
    """
    check_feasible(hub)
    mu = np.asarray(mu, dtype=float)
    qp = local_qp(hub, mu)
    result = solve_qp(qp, tol=tol, feas_tol=feas_tol)
    r, u = expand(hub, result.x)
    _, _, const = _welfare_quadratic(hub)
    ridge = 0.5 * RIDGE * float(result.x[3:] @ result.x[3:])
    return r, u, qp.value(result.x) - ridge + const
