from .central import CentralSolution, global_welfare, solve_centralized


__all__ = [
    "CentralSolution",
    "global_welfare",
    "solve_centralized",
]
