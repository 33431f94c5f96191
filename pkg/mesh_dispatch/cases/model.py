from dataclasses import dataclass, field

from ..coordination import RunConfig
from ..hub import TradePrice
from ..network import Topology


@dataclass(frozen=True, eq=False)
class CaseStudy:
    """A network of hubs with its trade price and run defaults."""

    topology: Topology
    hubs: list
    zeta: TradePrice
    defaults: RunConfig = field(default_factory=RunConfig)
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "hubs", list(self.hubs))
        if not self.hubs:
            raise ValueError("At least one hub is required")
        if len(self.hubs) != self.topology.n:
            raise ValueError("Expected one hub per topology node")
        if not self.topology.is_connected():
            raise ValueError("Topology is not connected")

    @property
    def n(self):
        return self.topology.n

    def __repr__(self):
        return "<CaseStudy {} (hubs: {}, edges: {})>".format(
            self.name, self.n, len(self.topology.edges))
