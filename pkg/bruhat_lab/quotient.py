"""The quotient lower interval ``C(w)`` and its Bruhat graph."""

from collections.abc import Mapping
from dataclasses import dataclass, field

import networkx as nx
from craft_application.models import CraftBaseModel

from .bruhat import LowerInterval, lower_interval
from .cosets import BruhatCoset, partition, project_down
from .coxeter import CoxeterSystem, Element, Side
from .errors import ConsistencyError
from .posets import FinitePoset, PosetReport, check_graded, graph_isomorphism


@dataclass(frozen=True)
class QuotientInterval:
    """Bruhat cosets of ``B(w)`` with the quotient order and arcs.

    Cosets are referred to by their index in ``cosets``.

    :cvar w: The top element.
    :cvar cosets: The partition of ``B(w)``, largest ``P_up`` first.
    :cvar leq: ``leq[i][j]`` holds when coset ``i`` is below coset ``j``.
    :cvar arcs: Pairs ``(i, j)``, ``i != j``, joined by some member edge.
    :cvar coset_index: Maps every member of ``B(w)`` to its coset.
    """

    w: Element
    cosets: tuple[BruhatCoset, ...]
    leq: tuple[tuple[bool, ...], ...]
    arcs: frozenset[tuple[int, int]]
    coset_index: Mapping[Element, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.cosets)

    def coset_of(self, u: Element) -> BruhatCoset:
        """Return the coset holding ``u``."""
        return self.cosets[self.coset_index[u]]

    @property
    def sorted_arcs(self) -> list[tuple[int, int]]:
        """Arcs in index order."""
        return sorted(self.arcs)

    @property
    def bottom(self) -> int:
        """Index of the coset of ``e``, the minimum."""
        return next(i for i, found in enumerate(self.cosets) if not found.mid)

    @property
    def top(self) -> int:
        """Index of the coset of ``w``, the maximum."""
        return self.coset_index[self.w]

    @property
    def mins(self) -> frozenset[Element]:
        """``B_down(w)``."""
        return frozenset(c.v_min for c in self.cosets)

    @property
    def maxes(self) -> frozenset[Element]:
        """``B_up(w)``."""
        return frozenset(c.v_max for c in self.cosets)

    def poset(self) -> FinitePoset[int]:
        """Return ``(C(w), <=)`` on coset indices."""
        indices = range(len(self.cosets))
        return FinitePoset.from_relation(indices, lambda i, j: self.leq[i][j])

    def graph(self) -> nx.DiGraph:
        """Return the quotient Bruhat graph on coset indices."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.cosets)))
        graph.add_edges_from(self.sorted_arcs)
        return graph

    def label(self, index: int) -> str:
        """Return the ``P_up/P_down`` label of a coset."""
        return str(self.cosets[index])


def quotient_interval(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None = None,
) -> QuotientInterval:
    """Build ``C(w)``, cross-checking the ``P_up`` and ``P_down`` orders."""
    if interval is None:
        interval = lower_interval(system, w)
    cosets = tuple(partition(system, w, interval))
    order: list[tuple[bool, ...]] = []
    for found in cosets:
        row: list[bool] = []
        for other in cosets:
            by_max = interval.leq(found.v_max, other.v_max)
            by_min = interval.leq(found.v_min, other.v_min)
            if by_max != by_min:
                raise ConsistencyError(
                    f"Quotient order of B({w}) disagrees between P_up and P_down "
                    f"on {found} and {other}",
                )
            row.append(by_max)
        order.append(tuple(row))

    coset_index = {
        member: index for index, found in enumerate(cosets) for member in found.members
    }
    arcs = frozenset(
        (coset_index[u], coset_index[v])
        for u, v in interval.edges
        if coset_index[u] != coset_index[v]
    )
    return QuotientInterval(
        w=w,
        cosets=cosets,
        leq=tuple(order),
        arcs=arcs,
        coset_index=coset_index,
    )


def is_separated(system: CoxeterSystem, w: Element) -> bool:
    """Return whether neither descent set of ``w`` meets the support of ``P_down(w)``."""
    support = system.support(project_down(system, w, w))
    return not (system.descents(w, Side.LEFT) & support) and not (
        system.descents(w, Side.RIGHT) & support
    )


class QuotientGraphReport(CraftBaseModel):
    """Comparison of the quotient Bruhat graph with the graph on ``B_down(w)``."""

    separated: bool
    vertices: int
    arcs: int
    forward_holds: bool
    """Every edge ``P_down(C) -> P_down(D)`` gives an arc ``C -> D``."""
    converse_holds: bool
    """Every arc ``C -> D`` comes from an edge ``P_down(C) -> P_down(D)``."""
    isomorphic: bool
    """``(C(w), ->)`` and the Bruhat graph induced on ``B_down(w)`` are isomorphic."""
    counterexamples: list[str] = []

    @property
    def holds(self) -> bool:
        """Whether the graph statements expected for this element hold."""
        if self.separated:
            return self.forward_holds and self.converse_holds and self.isomorphic
        return self.forward_holds


def bottom_graph(quotient: QuotientInterval, interval: LowerInterval) -> nx.DiGraph:
    """Return the Bruhat graph of ``B(w)`` induced on ``B_down(w)``."""
    return nx.DiGraph(interval.graph.subgraph(sorted(quotient.mins)))


def quotient_graph_check(
    system: CoxeterSystem,
    w: Element,
    quotient: QuotientInterval | None = None,
    interval: LowerInterval | None = None,
) -> QuotientGraphReport:
    """Compare the arcs of ``C(w)`` with the edges between the minima."""
    if interval is None:
        interval = lower_interval(system, w)
    if quotient is None:
        quotient = quotient_interval(system, w, interval)
    separated = is_separated(system, w)
    bottoms = bottom_graph(quotient, interval)

    counterexamples: list[str] = []
    forward = converse = True
    for i, source in enumerate(quotient.cosets):
        for j, target in enumerate(quotient.cosets):
            if i == j:
                continue
            edge = bottoms.has_edge(source.v_min, target.v_min)
            arc = (i, j) in quotient.arcs
            if edge and not arc:
                forward = False
                counterexamples.append(
                    f"{source.v_min} -> {target.v_min} without arc {source} -> {target}",
                )
            elif arc and not edge:
                converse = False
                counterexamples.append(
                    f"arc {source} -> {target} without edge {source.v_min} -> {target.v_min}",
                )

    return QuotientGraphReport(
        separated=separated,
        vertices=len(quotient),
        arcs=len(quotient.arcs),
        forward_holds=forward,
        converse_holds=converse,
        isomorphic=graph_isomorphism(quotient.graph(), bottoms) is not None,
        counterexamples=counterexamples,
    )


class DirectProductReport(CraftBaseModel):
    """Compares ``|B(w)|`` with ``|B_down(w)| * |top coset|``."""

    interval_size: int
    bottom_size: int
    top_coset_size: int

    @property
    def is_witness(self) -> bool:
        """Whether the sizes already rule out a direct product."""
        return self.interval_size != self.bottom_size * self.top_coset_size


def direct_product_witness(
    system: CoxeterSystem,
    w: Element,
    quotient: QuotientInterval | None = None,
) -> DirectProductReport:
    """Report the sizes deciding whether ``B(w)`` can be ``B_down(w)`` times a coset."""
    if quotient is None:
        quotient = quotient_interval(system, w)
    return DirectProductReport(
        interval_size=len(quotient.coset_index),
        bottom_size=len(quotient.mins),
        top_coset_size=len(quotient.cosets[quotient.top]),
    )


def mid_graded_report(
    system: CoxeterSystem,
    w: Element,
    quotient: QuotientInterval | None = None,
) -> PosetReport:
    """Grade ``(C(w), <=)`` by ``mid_w``; expected to pass for separated ``w``."""
    if quotient is None:
        quotient = quotient_interval(system, w)
    return check_graded(
        quotient.poset(),
        lambda i: quotient.cosets[i].mid,
        label=quotient.label,
    )
