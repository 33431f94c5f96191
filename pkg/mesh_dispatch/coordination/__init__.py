from .admm import (NodeState, RunConfig, RunResult, RunTrace, TraceRecord,
                   check_lemma1, check_lemma2, check_mu_bar, init, run, step,
                   thread_count)


__all__ = [
    "NodeState",
    "RunConfig",
    "RunResult",
    "RunTrace",
    "TraceRecord",
    "check_lemma1",
    "check_lemma2",
    "check_mu_bar",
    "init",
    "run",
    "step",
    "thread_count",
]
