import json

import numpy as np
import pytest

from mesh_dispatch.cases import BRANCHES, CaseStudy, ieee14_case
from mesh_dispatch.cli import case_to_config, parse_config
from mesh_dispatch.coordination import RunConfig
from mesh_dispatch.hub import EnergyVector, TradePrice
from mesh_dispatch.network import (Topology, metropolis_weights,
                                   validate_weights)


def test_case(ieee14):
    assert ieee14.n == 14
    assert ieee14.name == "ieee14"
    assert len(ieee14.topology.edges) == 20
    assert ieee14.topology.sorted_edges() == sorted(BRANCHES)
    assert repr(ieee14) == "<CaseStudy ieee14 (hubs: 14, edges: 20)>"
    assert ieee14.zeta == TradePrice(1.1, 0.6)
    assert ieee14.defaults == RunConfig(rho=0.1, epsilon=0.05, n_min=300,
                                        n_max=1000, seed=42, inner_tol=1e-8)


def test_first_hub(ieee14):
    hub = ieee14.hubs[0]
    assert hub.efficiencies.as_tuple() == (0.9, 0.7, 0.5, 0.4)
    assert hub.cost_e.c2 == 0.11 and hub.cost_e.c1 == 12.0
    assert hub.cost_e.c0 == 0.57
    assert hub.cost_g.c2 == 0.033 and hub.cost_g.c1 == 5.6
    assert hub.util_e.c2 == 0.13 and hub.util_e.c1 == 7.2
    assert hub.util_g.c2 == 0.023 and hub.util_g.c1 == 3.4
    assert hub.r_lo == EnergyVector(20.0, 30.0)
    assert hub.r_hi == EnergyVector(90.0, 100.0)
    for name in ("s", "d"):
        lo, hi = hub.bounds(name)
        assert lo.tolist() == [20.0, 30.0]
        assert hi.tolist() == [90.0, 100.0]


def test_weights(ieee14):
    W = metropolis_weights(ieee14.topology)
    assert validate_weights(W, ieee14.topology)


def test_fresh_instances():
    assert ieee14_case() is not ieee14_case()
    assert ieee14_case().hubs == ieee14_case().hubs


def test_export_is_stable(ieee14):
    first = json.dumps(case_to_config(ieee14), sort_keys=True)
    second = json.dumps(case_to_config(ieee14_case()), sort_keys=True)
    assert first == second

    config = parse_config(json.loads(first))
    assert config.case.hubs == ieee14.hubs
    assert config.case.topology == ieee14.topology
    assert config.run == ieee14.defaults


def test_case_validation(ieee14):
    with pytest.raises(ValueError) as excinfo:
        CaseStudy(topology=ieee14.topology, hubs=[], zeta=ieee14.zeta)
    assert str(excinfo.value) == 'At least one hub is required'

    with pytest.raises(ValueError) as excinfo:
        CaseStudy(topology=ieee14.topology, hubs=ieee14.hubs[:3],
                  zeta=ieee14.zeta)
    assert str(excinfo.value) == 'Expected one hub per topology node'

    with pytest.raises(ValueError) as excinfo:
        CaseStudy(topology=Topology.from_edges(2, []), hubs=ieee14.hubs[:2],
                  zeta=ieee14.zeta)
    assert str(excinfo.value) == 'Topology is not connected'

    case = CaseStudy(topology=Topology(1, frozenset()),
                     hubs=ieee14.hubs[:1], zeta=ieee14.zeta)
    assert case.name == "custom"
    assert case.defaults == RunConfig()


def test_bounds_are_consistent(ieee14):
    for hub in ieee14.hubs:
        for name in ("r", "s", "d"):
            lo, hi = hub.bounds(name)
            assert np.all(lo <= hi)
