"""CSV and JSON result files.

Floats are written with ``repr`` (shortest round-trip form), so reruns
with the same configuration produce byte-identical files.
"""
import csv
import json
import math
import os
from dataclasses import asdict

from ..hub import local_welfare


TRACE_FIELDS = ["k", "node", "dr", "ds", "dd", "dalpha", "mismatch_e",
                "mismatch_g", "mu_spread", "e_spread", "lemma1_residual", "F"]
ORACLE_FIELDS = ["node", "r_e", "r_g", "s_e", "s_g", "d_e", "d_h", "alpha",
                 "local_welfare", "F_star", "mu_e", "mu_g"]
SWEEP_FIELDS = ["rho", "converged", "iterations", "rounds", "welfare_gap"]
SUMMARY_FIELDS = ORACLE_FIELDS[:9]


def fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _write(path, fields, rows):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: fmt(value) for key, value in row.items()})
    return path


def trace_rows(trace, per_node=True):
    for record in trace:
        common = {
            "k": record.k,
            "mismatch_e": record.mismatch[0],
            "mismatch_g": record.mismatch[1],
            "mu_spread": record.mu_spread,
            "e_spread": record.e_spread,
            "lemma1_residual": record.lemma1_residual,
            "F": record.F,
        }
        if per_node:
            for i in range(len(record.dr)):
                yield dict(common, node=i + 1, dr=record.dr[i],
                           ds=record.ds[i], dd=record.dd[i],
                           dalpha=record.dalpha[i])
        else:
            yield dict(common, node="all", dr=max(record.dr),
                       ds=max(record.ds), dd=max(record.dd),
                       dalpha=max(record.dalpha))


def write_trace(path, trace, per_node=True):
    return _write(path, TRACE_FIELDS, trace_rows(trace, per_node))


def oracle_rows(solution, hubs, zeta):
    welfare = solution.local_welfare(hubs, zeta)
    mu = solution.mu_star
    for i, (r, (s, d, alpha)) in enumerate(zip(solution.r_star,
                                               solution.recovered())):
        yield {"node": i + 1, "r_e": r[0], "r_g": r[1], "s_e": s[0],
               "s_g": s[1], "d_e": d[0], "d_h": d[1], "alpha": alpha,
               "local_welfare": welfare[i], "F_star": solution.F_star,
               "mu_e": mu.e, "mu_g": mu.g}


def write_oracle(path, solution, hubs, zeta):
    return _write(path, ORACLE_FIELDS, oracle_rows(solution, hubs, zeta))


def summary_rows(states, hubs, zeta):
    for i, (hub, st) in enumerate(zip(hubs, states)):
        yield {"node": i + 1, "r_e": st.r[0], "r_g": st.r[1], "s_e": st.s[0],
               "s_g": st.s[1], "d_e": st.d[0], "d_h": st.d[1],
               "alpha": st.alpha,
               "local_welfare": local_welfare(hub, zeta, st.r, st.s, st.d)}


def write_summary(path, states, hubs, zeta):
    return _write(path, SUMMARY_FIELDS, summary_rows(states, hubs, zeta))


def write_sweep(path, rows):
    return _write(path, SWEEP_FIELDS, rows)


def _finite_or_none(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_certificate(path, report):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    doc = {key: _finite_or_none(value)
           for key, value in asdict(report).items()}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")
    return path
