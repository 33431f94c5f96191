import pytest

from mesh_dispatch.cases import ieee14_case
from mesh_dispatch.coordination import run
from mesh_dispatch.hub import (EfficiencySet, EnergyVector, HubParameters,
                               QuadraticCoeffs)
from mesh_dispatch.oracle import solve_centralized


EFFICIENCIES = EfficiencySet(eta_ee=0.9, eta_ce=0.7, eta_ch=0.5, eta_gh=0.4)


def make_hub(lo=(0.0, 0.0), hi=(200.0, 200.0), cost_e=(0.1, 10.0),
             cost_g=(0.03, 5.0), util_e=(0.1, 20.0), util_g=(0.02, 8.0),
             **kwargs):
    """Hub with the same bounds on ``r``, ``s`` and ``d``."""
    lo = EnergyVector(*lo)
    hi = EnergyVector(*hi)
    return HubParameters(
        efficiencies=kwargs.pop("efficiencies", EFFICIENCIES),
        r_lo=kwargs.pop("r_lo", lo), r_hi=kwargs.pop("r_hi", hi),
        s_lo=kwargs.pop("s_lo", lo), s_hi=kwargs.pop("s_hi", hi),
        d_lo=kwargs.pop("d_lo", lo), d_hi=kwargs.pop("d_hi", hi),
        cost_e=QuadraticCoeffs(*cost_e), cost_g=QuadraticCoeffs(*cost_g),
        util_e=QuadraticCoeffs(*util_e), util_g=QuadraticCoeffs(*util_g),
        **kwargs)


@pytest.fixture
def hub_factory():
    return make_hub


@pytest.fixture(scope="session")
def ieee14():
    return ieee14_case()


@pytest.fixture(scope="session")
def ieee14_solution(ieee14):
    return solve_centralized(ieee14.hubs)


@pytest.fixture(scope="session")
def ieee14_run(ieee14):
    return run(ieee14.hubs, ieee14.topology, ieee14.defaults,
               keep_history=True)
