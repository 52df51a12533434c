"""
montecensus.montesinos

Montesinos links as cyclic sequences of rational tangle fractions, the
K_{2n+1} family and its generalization, and the combinatorial predicates
(component count, alternating, hyperbolicity witness) checked on them.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

import networkx as nx

from montecensus import tangle
from montecensus.tangle import Corner, TangleFraction


@dataclass(frozen=True, order=True)
class MontesinosLink:
    """K(p_1/q_1, ..., p_m/q_m): m rational tangles summed in a cycle.

    Links built through `normalize` have no integral, zero or infinite entry.
    """

    entries: tuple[TangleFraction, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index: int) -> TangleFraction:
        return self.entries[index]

    @classmethod
    def of(cls, *entries: TangleFraction | str) -> Self:
        return cls(
            tuple(
                TangleFraction.decode(e) if isinstance(e, str) else e for e in entries
            )
        )

    def fraction_sum(self) -> Fraction:
        return sum((e.as_rational() for e in self.entries), Fraction(0))

    def is_normalized(self) -> bool:
        return bool(self.entries) and all(e.q >= 2 for e in self.entries)

    def encode(self) -> str:
        return tangle.encode_fractions(self.entries)

    def __str__(self) -> str:
        return f"K{self.encode()}"

    @staticmethod
    def decode(input: str) -> "MontesinosLink":
        return MontesinosLink(tuple(tangle.TangleParser.parse(input)))


@dataclass(frozen=True)
class FamilyParams:
    """The index n of K_{2n+1}"""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"family index must be at least 1, got {self.n}")

    @property
    def length(self) -> int:
        return 2 * self.n + 1


def normalize(entries: Iterable[TangleFraction]) -> MontesinosLink:
    """Absorb every integral tangle into its right cyclic neighbour.

    An integral p_i/1 followed by p_{i+1}/q_{i+1} becomes the single entry
    (p_i q_{i+1} + p_{i+1})/q_{i+1}; the fraction sum is unchanged.
    """
    items = list(entries)
    if not items:
        raise ValueError("a Montesinos link needs at least one tangle")
    if any(e.is_infinite for e in items):
        raise ValueError("infinity tangle in a Montesinos description")
    if all(e.is_integral for e in items):
        raise ValueError("degenerate Montesinos description")

    def first_integral():
        return next((k for k, e in enumerate(items) if e.is_integral), None)

    while (i := first_integral()) is not None:
        j = (i + 1) % len(items)
        absorbed = items[j].shift(items[i].p)
        items[j] = absorbed
        del items[i]

    return MontesinosLink(tuple(items))


def parse_link(input: str) -> MontesinosLink:
    return normalize(tangle.TangleParser.parse(input))


def build_family(params: FamilyParams | int) -> MontesinosLink:
    """K_{2n+1} = K(1/7, 1/9, ..., 1/(4n+7)), the i-th tangle having 2i+5 crossings"""
    if isinstance(params, int):
        params = FamilyParams(params)
    return MontesinosLink(
        tuple(TangleFraction(1, 2 * i + 5) for i in range(1, params.length + 1))
    )


def build_generalized(t_list: Sequence[int]) -> MontesinosLink:
    """K(1/t_1, ..., 1/t_{2n+1}) with every t_i odd and larger than 6"""
    if len(t_list) < 3 or len(t_list) % 2 == 0:
        raise ValueError(
            f"expected an odd number of at least 3 tangles, got {len(t_list)}"
        )
    for i, t in enumerate(t_list, start=1):
        if t % 2 == 0:
            raise ValueError(f"t_{i} even ({t})")
        if t <= 6:
            raise ValueError(f"t_{i} ≤ 6 ({t})")
    return MontesinosLink(tuple(TangleFraction(1, t) for t in t_list))


def pairing_graph(m: MontesinosLink) -> nx.MultiGraph:
    """The corners of all tangles, joined inside each tangle by its arcs and
    between tangles by the cyclic gluing NE_i–NW_{i+1}, SE_i–SW_{i+1}."""
    graph = nx.MultiGraph()
    size = len(m)
    for i, entry in enumerate(m):
        for a, b in tangle.endpoint_pairing(entry).pairs():
            graph.add_edge((i, a), (i, b), kind="arc")
        j = (i + 1) % size
        graph.add_edge((i, Corner.NE), (j, Corner.NW), kind="glue")
        graph.add_edge((i, Corner.SE), (j, Corner.SW), kind="glue")
    return graph


def component_count(m: MontesinosLink) -> int:
    """The number of components of the link.

    Every corner meets one arc and one gluing edge, so the components are
    exactly the cycles of the pairing graph.
    """
    if not m.entries:
        raise ValueError("a Montesinos link needs at least one tangle")
    return nx.number_connected_components(pairing_graph(m))


def is_hyperbolic_witness(m: MontesinosLink) -> bool:
    """At least two twist regions, each with at least 6 crossings.

    Each vertical tangle 1/t is one twist region with |t| crossings.
    """
    if not all(e.is_vertical for e in m):
        raise ValueError("witness applies to vertical-tangle diagrams only")
    return len(m) >= 2 and all(e.q >= 6 for e in m)


def is_alternating_vertical(m: MontesinosLink) -> bool:
    """Every tangle is a vertical tangle 1/t with positive twisting"""
    return all(e.p == 1 and e.q > 0 for e in m)


def diagram_words(m: MontesinosLink) -> tuple[tangle.TwistWord, ...]:
    """Explicit twist words for every tangle of the link"""
    return tuple(tangle.continued_fraction_word(e) for e in m)
