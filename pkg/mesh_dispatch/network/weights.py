"""Doubly stochastic gossip weights over a hub topology."""
import logging

import numpy as np

from ..exceptions import NumericError
from . import mixing


logger = logging.getLogger(__name__)


class WeightMatrix:
    """Dense symmetric doubly stochastic ``n x n`` weight matrix.

    The underlying array is read-only and C-contiguous so it can be handed
    to the mixing kernel as is.
    """

    def __init__(self, W):
        W = np.array(W, dtype=np.float64, order="C")
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError("Weight matrix shall be square")
        W.setflags(write=False)
        self._W = W

    @property
    def W(self):
        return self._W

    @property
    def n(self):
        return self._W.shape[0]

    def averaging_deviation(self):
        """``W - O_n``, the weight matrix minus the all-``1/n`` matrix."""
        return self._W - np.full_like(self._W, 1.0 / self.n)

    def __len__(self):
        return self.n

    def __repr__(self):
        return "<WeightMatrix (nodes: {})>".format(self.n)


def metropolis_weights(t):
    """Metropolis-Hastings weights ``1 / (1 + max(deg_i, deg_j))``."""
    if not t.is_connected():
        raise ValueError("Topology is not connected")
    degrees = t.degrees()
    W = np.zeros((t.n, t.n))
    for i, j in t.sorted_edges():
        w = 1.0 / (1.0 + max(degrees[i - 1], degrees[j - 1]))
        W[i - 1, j - 1] = w
        W[j - 1, i - 1] = w
    for i in range(t.n):
        W[i, i] = 1.0 - sum(W[i, j] for j in range(t.n) if j != i)
    return WeightMatrix(W)


def validate_weights(W, t, tol=1e-12):
    """Check symmetry, double stochasticity, sparsity and entry range."""
    A = W.W if isinstance(W, WeightMatrix) else np.asarray(W, dtype=float)
    n = t.n
    if A.shape != (n, n):
        return False
    if np.any(A < -tol) or np.any(A > 1.0 + tol):
        return False
    if np.max(np.abs(A - A.T)) > tol:
        return False
    if np.max(np.abs(A.sum(axis=0) - 1.0)) > tol:
        return False
    if np.max(np.abs(A.sum(axis=1) - 1.0)) > tol:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if (i + 1, j + 1) not in t.edges and abs(A[i, j]) > tol:
                return False
    return True


def spectral_gap(W, rtol=1e-10, max_iter=100000, seed=0):
    """Spectral radius of ``W - O_n`` by power iteration.

    The iteration runs on the square of the (symmetric) deviation matrix so
    that eigenvalue pairs ``+l, -l`` don't make it oscillate.
    """
    D = W.averaging_deviation() if isinstance(W, WeightMatrix) else (
        np.asarray(W, dtype=float) - 1.0 / len(W))
    S = D @ D
    x = np.random.default_rng(seed).standard_normal(D.shape[0])
    norm = np.linalg.norm(x)
    x /= norm
    estimate = 0.0
    for iteration in range(max_iter):
        y = S @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        rayleigh = float(x @ y)
        x = y / norm
        if iteration > 0 and abs(rayleigh - estimate) <= rtol * abs(rayleigh):
            return float(np.sqrt(max(rayleigh, 0.0)))
        estimate = rayleigh
    raise NumericError(
        "Power iteration didn't converge in {} steps".format(max_iter))


def _as_values(values, n):
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values.reshape(n, -1)
    if values.ndim != 2 or values.shape[0] != n:
        raise ValueError("Expected one value per node")
    return values


def neighbor_sum(W, i, values):
    """``sum_j w_ij * values_j`` for node ``i`` (1-based), ascending ``j``."""
    n = W.n
    if not 1 <= i <= n:
        raise ValueError("Node id out of range")
    return mixing.neighbor_sum(W.W, i - 1, _as_values(values, n))


def mix_all(W, values):
    """Mixed values of every node, row ``i`` belonging to node ``i + 1``."""
    return mixing.mix(W.W, _as_values(values, W.n))
