from .local import (LocalSolution, Subproblem, check_feasible, constraints,
                    expand, gradient, kkt_residual, local_qp, objective,
                    price_response, project, reduce, solve_local)
from .qp import (QPResult, QuadraticProgram, polish_active_set,
                 project_polytope, solve_qp)


__all__ = [
    "LocalSolution",
    "QPResult",
    "QuadraticProgram",
    "Subproblem",
    "check_feasible",
    "constraints",
    "expand",
    "gradient",
    "kkt_residual",
    "local_qp",
    "objective",
    "polish_active_set",
    "price_response",
    "project",
    "project_polytope",
    "reduce",
    "solve_local",
    "solve_qp",
]
