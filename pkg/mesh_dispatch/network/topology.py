"""Undirected communication graph between energy hubs.

Nodes are numbered ``1..n``; edges are unordered pairs without self-loops.
"""
import re
from dataclasses import dataclass

import networkx as nx


_PAIR = re.compile(r"^\s*(\d+)\s*[-\s,]\s*(\d+)\s*$")


@dataclass(frozen=True)
class Topology:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Topology needs at least one node")
        normalized = set()
        for edge in self.edges:
            i, j = sorted(int(v) for v in edge)
            if i == j:
                raise ValueError("Self-loops are not allowed")
            if i < 1 or j > self.n:
                raise ValueError("Node id out of range")
            normalized.add((i, j))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n, edges):
        edges = [tuple(edge) for edge in edges]
        keys = [tuple(sorted(edge)) for edge in edges]
        if len(set(keys)) != len(keys):
            raise ValueError("Duplicate edges are not allowed")
        return cls(n, frozenset(keys))

    @classmethod
    def parse(cls, n, text):
        """Read an edge list, one ``i j`` or ``i-j`` pair per line or ``;``."""
        edges = []
        for lineno, chunk in enumerate(re.split(r"[\n;]", text), start=1):
            if not chunk.strip() or chunk.strip().startswith("#"):
                continue
            match = _PAIR.match(chunk)
            if match is None:
                raise ValueError(
                    "Can't parse edge {!r} (entry {})".format(chunk.strip(),
                                                              lineno))
            edges.append((int(match.group(1)), int(match.group(2))))
        return cls.from_edges(n, edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def to_text(self):
        return "\n".join("{}-{}".format(i, j) for i, j in self.sorted_edges())

    def graph(self):
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.sorted_edges())
        return g

    def degrees(self):
        """Degree of every node, indexed from 0."""
        g = self.graph()
        return [g.degree(node) for node in range(1, self.n + 1)]

    def is_connected(self):
        return nx.is_connected(self.graph())

    def __repr__(self):
        return "<Topology (nodes: {}, edges: {})>".format(self.n,
                                                          len(self.edges))


def complete_topology(n):
    return Topology.from_edges(
        n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def path_topology(n):
    return Topology.from_edges(n, [(i, i + 1) for i in range(1, n)])
