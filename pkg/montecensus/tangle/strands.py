"""
montecensus.tangle.strands

Explicit strand tracing on twist-word diagrams. Every unit twist becomes a
crossing whose two strands are followed port by port; nothing here uses the
parity rule of `endpoint_pairing`, which makes it an independent check of it.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import count

import networkx as nx

from montecensus.tangle.base import Axis, Corner, EndpointPairing, TwistWord

type Port = tuple[int, str]

# Arcs of the seed tangles, before any twist is applied.
SEED_ARCS = {
    Axis.HORIZONTAL: EndpointPairing.ZERO,
    Axis.VERTICAL: EndpointPairing.INFINITY,
}


@dataclass
class StrandDiagram:
    """A tangle diagram as a graph of strand pieces between ports.

    `ends` maps each boundary corner to the port currently sitting there.
    Every port has degree two in the graph, except the four boundary ports.
    """

    graph: nx.Graph = field(default_factory=nx.Graph)
    ends: dict[Corner, Port] = field(default_factory=dict)
    _ids: count = field(default_factory=count)

    def port(self, name: str) -> Port:
        p = (next(self._ids), name)
        self.graph.add_node(p)
        return p

    @classmethod
    def seed(cls, pairing: EndpointPairing) -> "StrandDiagram":
        d = cls()
        for a, b in pairing.pairs():
            pa, pb = d.port(a.value), d.port(b.value)
            d.graph.add_edge(pa, pb)
            d.ends[a], d.ends[b] = pa, pb
        return d

    def crossing(self, first: Corner, second: Corner):
        """Insert one crossing behind the boundary ports at `first` and `second`.

        The strand entering at `first` leaves at `second` and vice versa, which
        is all a half twist does to connectivity, whatever its sign.
        """
        a_in, b_in = self.port("in"), self.port("in")
        a_out, b_out = self.port("out"), self.port("out")
        self.graph.add_edge(self.ends[first], a_in)
        self.graph.add_edge(self.ends[second], b_in)
        self.graph.add_edge(a_in, b_out)
        self.graph.add_edge(b_in, a_out)
        self.ends[first], self.ends[second] = a_out, b_out

    @classmethod
    def from_word(cls, word: TwistWord) -> "StrandDiagram":
        first_axis = word.moves[0].axis if word.moves else Axis.HORIZONTAL
        d = cls.seed(SEED_ARCS[first_axis])
        for move in word:
            corners = (
                (Corner.NE, Corner.SE)
                if move.axis is Axis.HORIZONTAL
                else (Corner.SW, Corner.SE)
            )
            for _ in range(abs(move.count)):
                d.crossing(*corners)
        return d

    def pairing(self) -> EndpointPairing:
        at = {port: corner for corner, port in self.ends.items()}
        pairs = []
        for component in nx.connected_components(self.graph):
            corners = [at[p] for p in component if p in at]
            if corners:
                pairs.append(corners)
        return EndpointPairing.from_pairs(pairs)


def trace_pairing(word: TwistWord) -> EndpointPairing:
    return StrandDiagram.from_word(word).pairing()


def trace_components(words: Sequence[TwistWord]) -> int:
    """Count the components of the cyclic sum of the given tangle diagrams.

    Tangle i is glued NE_i to NW_{i+1} and SE_i to SW_{i+1}, the last one back
    to the first.
    """
    if not words:
        raise ValueError("expected at least one tangle")

    diagrams = [StrandDiagram.from_word(w) for w in words]
    graph = nx.Graph()
    for i, d in enumerate(diagrams):
        graph.add_edges_from(((i, u), (i, v)) for u, v in d.graph.edges)

    m = len(diagrams)
    for i, d in enumerate(diagrams):
        j = (i + 1) % m
        nxt = diagrams[j]
        graph.add_edge((i, d.ends[Corner.NE]), (j, nxt.ends[Corner.NW]))
        graph.add_edge((i, d.ends[Corner.SE]), (j, nxt.ends[Corner.SW]))

    return nx.number_connected_components(graph)
