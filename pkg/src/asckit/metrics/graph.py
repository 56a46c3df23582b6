"""Labeled bipartite graphs over netlists: component nodes vs net nodes."""

from __future__ import annotations

from dataclasses import dataclass

from ..netlist import Netlist

NET_LABEL = "net"


@dataclass(frozen=True)
class CircuitGraph:
    """Nodes are (id, label) pairs; edges are index pairs, one per pin
    connection, so parallel edges are preserved."""

    nodes: tuple[tuple[str, str], ...] = ()
    edges: tuple[tuple[int, int], ...] = ()

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def labels(self) -> list[str]:
        return [label for _, label in self.nodes]

    def adjacency_counts(self) -> list[list[int]]:
        """Multiplicity matrix; parallel edges accumulate."""
        n = self.node_count
        adj = [[0] * n for _ in range(n)]
        for a, b in self.edges:
            adj[a][b] += 1
            adj[b][a] += 1
        return adj


def netlist_to_graph(netlist: Netlist) -> CircuitGraph:
    """One node per element (label = element letter), one per distinct net
    (label "net"), one edge per pin incidence including duplicates."""
    nodes: list[tuple[str, str]] = []
    index: dict[str, int] = {}
    for element in netlist.elements:
        index[f"c:{element.name}"] = len(nodes)
        nodes.append((element.name, element.letter))
    for net in netlist.net_names():
        index[f"n:{net}"] = len(nodes)
        nodes.append((net, NET_LABEL))

    edges: list[tuple[int, int]] = []
    for element in netlist.elements:
        a = index[f"c:{element.name}"]
        for net in element.nets:
            edges.append((a, index[f"n:{net}"]))

    return CircuitGraph(tuple(nodes), tuple(edges))
