"""JSON configuration documents.

A document names a case (``"ieee14"`` or an inline table of hubs), the
run parameters and where to write results::

    {
        "case": "ieee14",
        "run": {"rho": 0.1, "epsilon": 0.05, "n_min": 300},
        "output": {"directory": "out", "emit_per_node": true}
    }

Unknown keys are rejected everywhere. Errors are reported as
:class:`ConfigError` with the JSON path of the offending value, or the
line and column of a syntax error.
"""
import json
import math
from dataclasses import dataclass, field, replace

from ..cases import CaseStudy, ieee14_case
from ..coordination import RunConfig
from ..exceptions import ConfigError
from ..hub import (EfficiencySet, EnergyVector, HubParameters,
                   QuadraticCoeffs, TradePrice)
from ..network import Topology


BUILTIN_CASES = {"ieee14": ieee14_case}

_TOP_KEYS = {"case", "run", "output"}
_CASE_KEYS = {"topology", "hubs", "zeta"}
_HUB_KEYS = {"eta", "r", "s", "d", "cost_e", "cost_g", "util_e", "util_g",
             "taguchi_theta", "d_hat"}
_HUB_REQUIRED = _HUB_KEYS - {"taguchi_theta", "d_hat"}
_BOUND_KEYS = {"lo", "hi"}
_RUN_FLOATS = ("rho", "epsilon", "inner_tol")
_RUN_INTS = ("n_min", "n_max", "seed")
_OUTPUT_KEYS = {"directory", "emit_per_node"}


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "."
    emit_per_node: bool = True


@dataclass(frozen=True, eq=False)
class Config:
    case: CaseStudy
    run: RunConfig
    output: OutputConfig = field(default_factory=OutputConfig)


def _keys(obj, path, allowed, required=()):
    path = path or "document"
    if not isinstance(obj, dict):
        raise ConfigError("{}: expected an object".format(path))
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError("{}: unknown key {!r}".format(path, unknown[0]))
    missing = sorted(set(required) - set(obj))
    if missing:
        raise ConfigError("{}: missing key {!r}".format(path, missing[0]))


def _join(path, key):
    return "{}.{}".format(path, key) if path else key


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("{}: expected a number".format(path))
    if not math.isfinite(value):
        raise ConfigError("{}: expected a finite number".format(path))
    return float(value)


def _integer(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("{}: expected an integer".format(path))
    return value


def _numbers(value, path, size):
    if not isinstance(value, list) or len(value) != size:
        raise ConfigError("{}: expected {} numbers".format(path, size))
    return [_number(v, "{}[{}]".format(path, i)) for i, v in enumerate(value)]


def _pair(value, path):
    return EnergyVector(*_numbers(value, path, 2))


def _interval(obj, path):
    _keys(obj, path, _BOUND_KEYS, _BOUND_KEYS)
    return _pair(obj["lo"], _join(path, "lo")), _pair(obj["hi"],
                                                      _join(path, "hi"))


def _quadratic(value, path):
    c2, c1, c0 = _numbers(value, path, 3)
    return QuadraticCoeffs(c2, c1, c0)


def _hub(obj, path):
    _keys(obj, path, _HUB_KEYS, _HUB_REQUIRED)
    r_lo, r_hi = _interval(obj["r"], _join(path, "r"))
    s_lo, s_hi = _interval(obj["s"], _join(path, "s"))
    d_lo, d_hi = _interval(obj["d"], _join(path, "d"))
    d_hat = obj.get("d_hat")
    try:
        return HubParameters(
            efficiencies=EfficiencySet(*_numbers(obj["eta"],
                                                 _join(path, "eta"), 4)),
            r_lo=r_lo, r_hi=r_hi, s_lo=s_lo, s_hi=s_hi, d_lo=d_lo, d_hi=d_hi,
            cost_e=_quadratic(obj["cost_e"], _join(path, "cost_e")),
            cost_g=_quadratic(obj["cost_g"], _join(path, "cost_g")),
            util_e=_quadratic(obj["util_e"], _join(path, "util_e")),
            util_g=_quadratic(obj["util_g"], _join(path, "util_g")),
            taguchi_theta=_number(obj.get("taguchi_theta", 0.0),
                                  _join(path, "taguchi_theta")),
            d_hat=None if d_hat is None else _pair(d_hat,
                                                   _join(path, "d_hat")),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("{}: {}".format(path, exc)) from exc


def _case(value):
    if isinstance(value, str):
        if value not in BUILTIN_CASES:
            raise ConfigError("case: unknown built-in case {!r}".format(value))
        return BUILTIN_CASES[value]()

    _keys(value, "case", _CASE_KEYS, _CASE_KEYS)
    hubs_doc = value["hubs"]
    if not isinstance(hubs_doc, list):
        raise ConfigError("case.hubs: expected a list")
    hubs = [_hub(obj, "case.hubs[{}]".format(i))
            for i, obj in enumerate(hubs_doc)]
    if not isinstance(value["topology"], str):
        raise ConfigError("case.topology: expected an edge list string")
    try:
        topology = Topology.parse(max(len(hubs), 1), value["topology"])
    except ValueError as exc:
        raise ConfigError("case.topology: {}".format(exc)) from exc
    try:
        zeta = TradePrice(*_numbers(value["zeta"], "case.zeta", 2))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("case.zeta: {}".format(exc)) from exc
    try:
        return CaseStudy(topology=topology, hubs=hubs, zeta=zeta)
    except ValueError as exc:
        raise ConfigError("case: {}".format(exc)) from exc


def _run(obj, defaults):
    _keys(obj, "run", _RUN_FLOATS + _RUN_INTS)
    values = {}
    for key in _RUN_FLOATS:
        if key in obj:
            values[key] = _number(obj[key], _join("run", key))
    for key in _RUN_INTS:
        if key in obj:
            values[key] = _integer(obj[key], _join("run", key))
    try:
        return replace(defaults, **values)
    except ValueError as exc:
        raise ConfigError("run: {}".format(exc)) from exc


def _output(obj):
    _keys(obj, "output", _OUTPUT_KEYS)
    directory = obj.get("directory", ".")
    if not isinstance(directory, str):
        raise ConfigError("output.directory: expected a string")
    emit = obj.get("emit_per_node", True)
    if not isinstance(emit, bool):
        raise ConfigError("output.emit_per_node: expected true or false")
    return OutputConfig(directory=directory, emit_per_node=emit)


def parse_config(doc):
    """Validate a decoded document and build a :class:`Config`."""
    _keys(doc, "", _TOP_KEYS, {"case"})
    case = _case(doc["case"])
    return Config(case=case,
                  run=_run(doc.get("run", {}), case.defaults),
                  output=_output(doc.get("output", {})))


def load_config(path):
    """Read and validate the configuration document at ``path``."""
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ConfigError("{}: {}".format(path, exc.strerror)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("{}:{}:{}: {}".format(path, exc.lineno, exc.colno,
                                                exc.msg)) from exc
    return parse_config(doc)


def _interval_doc(lo, hi):
    return {"lo": [lo.e, lo.g], "hi": [hi.e, hi.g]}


def _quadratic_doc(q):
    return [q.c2, q.c1, q.c0]


def hub_to_doc(hub):
    doc = {
        "eta": list(hub.efficiencies.as_tuple()),
        "r": _interval_doc(hub.r_lo, hub.r_hi),
        "s": _interval_doc(hub.s_lo, hub.s_hi),
        "d": _interval_doc(hub.d_lo, hub.d_hi),
        "cost_e": _quadratic_doc(hub.cost_e),
        "cost_g": _quadratic_doc(hub.cost_g),
        "util_e": _quadratic_doc(hub.util_e),
        "util_g": _quadratic_doc(hub.util_g),
    }
    if hub.taguchi_theta > 0:
        doc["taguchi_theta"] = hub.taguchi_theta
        doc["d_hat"] = [hub.d_hat.e, hub.d_hat.g]
    return doc


def case_to_config(case, run=None, output=None):
    """Export ``case`` as a configuration document with an inline case."""
    run = case.defaults if run is None else run
    output = OutputConfig() if output is None else output
    return {
        "case": {
            "topology": case.topology.to_text(),
            "hubs": [hub_to_doc(hub) for hub in case.hubs],
            "zeta": [case.zeta.zeta_e, case.zeta.zeta_g],
        },
        "run": {
            "rho": run.rho,
            "epsilon": run.epsilon,
            "n_min": run.n_min,
            "n_max": run.n_max,
            "seed": run.seed,
            "inner_tol": run.inner_tol,
        },
        "output": {
            "directory": output.directory,
            "emit_per_node": output.emit_per_node,
        },
    }
