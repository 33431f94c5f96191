"""Numerical Lyapunov certificate of the tracker dynamics.

The deviations ``z = [dmu; rho * de]`` of the multipliers and trackers from
their network averages evolve as ``z' = W~ z + I~ (c' - c)`` with::

    W1 = (W - O_n) kron I_2,   W~ = [[W1, W1], [0, W1]],
    I~ = [I; I],               H  = [I, 0]

and the candidate ``P = [[2I, X - 2I], [X - 2I, X^2 - 2X + 2I]]`` with
``X = (I - W1)^-1`` certifies decay when ``I~' P (I - W~) = H``,
``P - W~' P W~`` is positive definite and ``P`` is positive definite.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..network import WeightMatrix


logger = logging.getLogger(__name__)

POSDEF_TOL = 1e-10


@dataclass(frozen=True)
class CertificateReport:
    gamma_W1: float
    P_min_eig: float
    contraction_min_eig: float
    condition_42a_residual: float
    lambda_min_W1: float
    singular: bool
    verdict: bool


def deviation_operator(W):
    """``W1 = (W - O_n) kron I_2``, node-major ordering."""
    if not isinstance(W, WeightMatrix):
        W = WeightMatrix(W)
    return np.kron(W.averaging_deviation(), np.eye(2))


def tracker_dynamics(W1):
    """``W~``, ``I~`` and ``H`` for a given ``W1``."""
    m = W1.shape[0]
    zero = np.zeros((m, m))
    eye = np.eye(m)
    W_tilde = np.block([[W1, W1], [zero, W1]])
    I_tilde = np.vstack([eye, eye])
    H = np.hstack([eye, zero])
    return W_tilde, I_tilde, H


def certificate_matrix(W1):
    """Closed-form ``P``; ``LinAlgError`` when ``I - W1`` is singular."""
    eye = np.eye(W1.shape[0])
    X = linalg.inv(eye - W1)
    off = X - 2.0 * eye
    return np.block([[2.0 * eye, off],
                     [off, X @ X - 2.0 * X + 2.0 * eye]])


def lyapunov_certificate(W, tol=1e-9):
    """Check the decay conditions of the closed-form ``P`` for ``W``."""
    W1 = deviation_operator(W)
    eigs = linalg.eigvalsh(W1)
    gamma = float(np.max(np.abs(eigs)))
    lambda_min = float(np.min(eigs))

    m = W1.shape[0]
    if np.min(np.abs(1.0 - eigs)) < POSDEF_TOL:
        logger.warning("I - W1 is singular (spectral radius %.6g)", gamma)
        return CertificateReport(gamma_W1=gamma, P_min_eig=float("nan"),
                                 contraction_min_eig=float("nan"),
                                 condition_42a_residual=float("nan"),
                                 lambda_min_W1=lambda_min, singular=True,
                                 verdict=False)

    P = certificate_matrix(W1)
    W_tilde, I_tilde, H = tracker_dynamics(W1)
    residual = float(np.linalg.norm(
        I_tilde.T @ P @ (np.eye(2 * m) - W_tilde) - H, ord="fro"))
    P = 0.5 * (P + P.T)
    contraction = P - W_tilde.T @ P @ W_tilde
    contraction = 0.5 * (contraction + contraction.T)
    P_min = float(np.min(linalg.eigvalsh(P)))
    contraction_min = float(np.min(linalg.eigvalsh(contraction)))

    verdict = bool(gamma < 1.0 and P_min > POSDEF_TOL
                   and contraction_min > POSDEF_TOL and residual <= tol)
    logger.info("Certificate: gamma=%.6g, P min eig=%.3g, contraction min "
                "eig=%.3g, residual=%.1e, verdict=%s", gamma, P_min,
                contraction_min, residual, verdict)
    return CertificateReport(gamma_W1=gamma, P_min_eig=P_min,
                             contraction_min_eig=contraction_min,
                             condition_42a_residual=residual,
                             lambda_min_W1=lambda_min, singular=False,
                             verdict=verdict)
