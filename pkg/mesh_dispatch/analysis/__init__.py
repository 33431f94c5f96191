from .certificate import (CertificateReport, certificate_matrix,
                          deviation_operator, lyapunov_certificate,
                          tracker_dynamics)
from .lyapunov import descent_fraction, lyapunov_series, lyapunov_surrogate
from .metrics import (RelativeError, consensus_spread, mismatch,
                      relative_error, relative_error_series, system_objective,
                      welfare_gap)


__all__ = [
    "CertificateReport",
    "RelativeError",
    "certificate_matrix",
    "consensus_spread",
    "descent_fraction",
    "deviation_operator",
    "lyapunov_certificate",
    "lyapunov_series",
    "lyapunov_surrogate",
    "mismatch",
    "relative_error",
    "relative_error_series",
    "system_objective",
    "tracker_dynamics",
    "welfare_gap",
]
