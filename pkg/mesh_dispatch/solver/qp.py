"""Small dense convex quadratic programs.

Solves::

    minimize    1/2 x'Hx + g'x
    subject to  Gx <= h
                Ax  = b

with a Mehrotra predictor-corrector primal-dual interior-point method,
then polishes the answer by re-solving the KKT system on the detected
active set. Problems here have a handful of variables per hub (a few
dozen for the centralized oracle), so everything stays dense.
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConvergenceError


logger = logging.getLogger(__name__)

_STEP_FRACTION = 0.99
# diagonal shifts tried, relative to the largest Newton matrix entry
_REGULARIZATION = (1e-14, 1e-12, 1e-10, 1e-8)


@dataclass(frozen=True, eq=False)
class QuadraticProgram:
    H: np.ndarray
    g: np.ndarray
    G: np.ndarray
    h: np.ndarray
    A: np.ndarray = None
    b: np.ndarray = None

    @property
    def n(self):
        return self.H.shape[0]

    def value(self, x):
        return 0.5 * float(x @ self.H @ x) + float(self.g @ x)


@dataclass(frozen=True, eq=False)
class QPResult:
    x: np.ndarray
    z: np.ndarray
    y: np.ndarray
    iterations: int
    gap: float
    polished: bool


def _kkt_solve(K, A, r1, r2, delta=0.0):
    n = K.shape[0]
    if A is None or A.shape[0] == 0:
        return np.linalg.solve(K + delta * np.eye(n), r1), np.zeros(0)
    p = A.shape[0]
    M = np.zeros((n + p, n + p))
    M[:n, :n] = K + delta * np.eye(n)
    M[:n, n:] = A.T
    M[n:, :n] = A
    M[n:, n:] = -delta * np.eye(p)
    sol = np.linalg.solve(M, np.concatenate([r1, r2]))
    return sol[:n], sol[n:]


def _regularized_solve(K, A, r1, r2):
    """Solve the Newton system, shifting its diagonal while it is singular.

    Large barrier weights near the boundary can round ``K`` to an exactly
    singular matrix even when the QP is strictly convex.
    """
    if not np.all(np.isfinite(K)):
        raise np.linalg.LinAlgError("Non-finite Newton matrix")
    try:
        return _kkt_solve(K, A, r1, r2)
    except np.linalg.LinAlgError:
        pass
    scale = max(1.0, _norm_inf(K))
    for factor in _REGULARIZATION:
        try:
            return _kkt_solve(K, A, r1, r2, delta=factor * scale)
        except np.linalg.LinAlgError:
            continue
    raise np.linalg.LinAlgError("Singular matrix")


def _max_step(v, dv):
    mask = dv < 0
    if not np.any(mask):
        return 1.0
    return min(1.0, float(np.min(-v[mask] / dv[mask])))


def _residuals(qp, x, s, z, y):
    rd = qp.H @ x + qp.g + qp.G.T @ z
    re = np.zeros(0)
    if qp.A is not None:
        rd = rd + qp.A.T @ y
        re = qp.A @ x - qp.b
    rp = qp.G @ x + s - qp.h
    return rd, rp, re


def _norm_inf(v):
    return float(np.max(np.abs(v))) if v.size else 0.0


def solve_qp(qp, tol=1e-8, feas_tol=1e-8, max_iter=100, polish=True):
    """Solve ``qp``; raise :class:`ConvergenceError` past ``max_iter``."""
    H, g, G, h, A, b = qp.H, qp.g, qp.G, qp.h, qp.A, qp.b
    m = G.shape[0]
    p = 0 if A is None else A.shape[0]

    x, y = _regularized_solve(H + G.T @ G, A, -g + G.T @ h,
                              b if p else np.zeros(0))
    s = h - G @ x
    lowest = float(np.min(s))
    if lowest < 1.0:
        s = s + (1.0 - lowest)
    z = np.ones(m)
    if not p:
        y = np.zeros(0)

    scale = 1.0 + _norm_inf(g)
    best = None
    for iteration in range(1, max_iter + 1):
        rd, rp, re = _residuals(qp, x, s, z, y)
        mu = float(s @ z) / m
        merit = max(_norm_inf(rd) / scale, _norm_inf(rp), _norm_inf(re), mu)
        if best is None or merit < best[0]:
            best = (merit, QPResult(x=x.copy(), z=z.copy(), y=y.copy(),
                                    iterations=iteration, gap=mu,
                                    polished=False))
        if (mu <= tol and _norm_inf(rd) <= tol * scale
                and _norm_inf(rp) <= feas_tol and _norm_inf(re) <= feas_tol):
            result = QPResult(x=x, z=z, y=y, iterations=iteration, gap=mu,
                              polished=False)
            if polish:
                result = polish_active_set(qp, result, tol, feas_tol) or result
            return result

        d = z / s
        K = H + (G.T * d) @ G

        def newton(r_sz):
            rhs = -rd + G.T @ ((r_sz - z * rp) / s)
            dx, dy = _regularized_solve(K, A, rhs, -re)
            Gdx = G @ dx
            dz = (-r_sz + z * rp + z * Gdx) / s
            ds = -rp - Gdx
            return dx, dy, dz, ds

        try:
            dx, dy, dz, ds = newton(s * z)
            alpha = min(_max_step(s, ds), _max_step(z, dz))
            mu_aff = float((s + alpha * ds) @ (z + alpha * dz)) / m
            sigma = (mu_aff / mu) ** 3
            dx, dy, dz, ds = newton(s * z + ds * dz - sigma * mu)
        except np.linalg.LinAlgError as exc:
            # the iterate is usually close to optimal by the time the
            # barrier weights overflow
            polished = polish_active_set(qp, best[1], tol, feas_tol)
            if polished is not None:
                return polished
            raise ConvergenceError(
                "Singular Newton system: {}".format(exc),
                best=best[1].x, iterations=iteration)

        alpha = min(1.0, _STEP_FRACTION * min(_max_step(s, ds),
                                              _max_step(z, dz)))
        x = x + alpha * dx
        s = s + alpha * ds
        z = z + alpha * dz
        if p:
            y = y + alpha * dy

    raise ConvergenceError(
        "Interior-point method didn't converge in {} iterations".format(
            max_iter), best=best[1].x, iterations=max_iter)


def polish_active_set(qp, result, tol=1e-8, feas_tol=1e-8):
    """Re-solve on the active set guessed from the interior-point iterate.

    Returns ``None`` when the guess does not give a KKT point. Bound rows
    (one nonzero coefficient) are snapped onto their bound exactly.
    """
    H, g, G, h, A, b = qp.H, qp.g, qp.G, qp.h, qp.A, qp.b
    n = qp.n
    p = 0 if A is None else A.shape[0]
    slack = h - G @ result.x
    active = np.flatnonzero(result.z > slack)
    Ga = G[active]
    k = len(active)

    M = np.zeros((n + k + p, n + k + p))
    M[:n, :n] = H
    M[:n, n:n + k] = Ga.T
    M[n:n + k, :n] = Ga
    rhs = np.concatenate([-g, h[active]])
    if p:
        M[:n, n + k:] = A.T
        M[n + k:, :n] = A
        rhs = np.concatenate([rhs, b])
    try:
        sol = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(M, rhs, rcond=None)[0]
    x = sol[:n]
    za = sol[n:n + k]
    y = sol[n + k:]

    for row, index in zip(Ga, active):
        nonzero = np.flatnonzero(row)
        if len(nonzero) == 1:
            j = nonzero[0]
            x[j] = h[index] / row[j]

    if k and float(np.min(za)) < -tol:
        return None
    z = np.zeros_like(result.z)
    z[active] = np.maximum(za, 0.0)
    if float(np.max(G @ x - h)) > feas_tol:
        return None
    rd = H @ x + g + G.T @ z
    if p:
        rd = rd + A.T @ y
        if _norm_inf(A @ x - b) > feas_tol:
            return None
    if _norm_inf(rd) > tol * (1.0 + _norm_inf(g)):
        return None
    return QPResult(x=x, z=z, y=y if p else np.zeros(0),
                    iterations=result.iterations, gap=0.0, polished=True)


def project_polytope(v, G, h, tol=1e-12):
    """Euclidean projection of ``v`` onto ``{x : Gx <= h}``.

    Exact for small problems: tries active sets until one satisfies the
    projection's KKT conditions, starting from the constraints ``v``
    violates.
    """
    v = np.asarray(v, dtype=float)
    if np.all(G @ v <= h + tol):
        return v.copy()
    n = v.shape[0]
    m = G.shape[0]
    violated = tuple(np.flatnonzero(G @ v > h + tol))
    candidates = itertools.chain(
        [violated] if len(violated) <= n else [],
        (subset for size in range(1, n + 1)
         for subset in itertools.combinations(range(m), size)))
    for subset in candidates:
        rows = G[list(subset)]
        gram = rows @ rows.T
        if abs(np.linalg.det(gram)) < 1e-14:
            continue
        lam = np.linalg.solve(gram, rows @ v - h[list(subset)])
        if np.any(lam < -tol):
            continue
        x = v - rows.T @ lam
        if np.all(G @ x <= h + 1e-10 * (1.0 + np.abs(h))):
            return x
    raise ConvergenceError("No projection found for the polytope")
