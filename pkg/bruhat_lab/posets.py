"""Finite posets: gradedness, faithful subposets and isomorphism."""

from collections.abc import Callable, Hashable, Iterable
from functools import cached_property
from typing import Any, Generic, TypeVar

import networkx as nx
from craft_application.models import CraftBaseModel
from networkx.algorithms.isomorphism import DiGraphMatcher

from .bruhat import LowerInterval
from .coxeter import Element
from .errors import NotInIntervalError

T = TypeVar("T", bound=Hashable)


class PosetReport(CraftBaseModel):
    """Outcome of a gradedness check."""

    is_graded: bool
    rank_of: dict[str, int] | None = None
    offset: int | None = None
    failure_witness: str | None = None


class FinitePoset(Generic[T]):
    """A finite partial order stored as the graph of its strict relation.

    :cvar elements: The elements in a fixed order, used for every listing.
    :cvar order: Edge ``u -> v`` for every ``u < v``.
    """

    def __init__(self, elements: Iterable[T], less: Iterable[tuple[T, T]]) -> None:
        self.elements = tuple(elements)
        self.order = nx.DiGraph()
        self.order.add_nodes_from(self.elements)
        self.order.add_edges_from(less)

    @classmethod
    def from_relation(
        cls,
        elements: Iterable[T],
        leq: Callable[[T, T], bool],
    ) -> "FinitePoset[T]":
        """Build a poset from a reflexive order predicate."""
        items = tuple(elements)
        return cls(
            items,
            [(u, v) for u in items for v in items if u != v and leq(u, v)],
        )

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, u: T, v: T) -> bool:
        """Return whether ``u <= v``."""
        return u == v or self.order.has_edge(u, v)

    @cached_property
    def hasse(self) -> nx.DiGraph:
        """The covering relation."""
        return nx.transitive_reduction(self.order)

    def minimum(self) -> T | None:
        """Return the least element, if any."""
        for candidate in self.elements:
            if all(self.leq(candidate, other) for other in self.elements):
                return candidate
        return None

    def maximum(self) -> T | None:
        """Return the greatest element, if any."""
        for candidate in self.elements:
            if all(self.leq(other, candidate) for other in self.elements):
                return candidate
        return None


def _chain(chain: list[Any], label: Callable[[Any], str]) -> str:
    return " < ".join(label(x) for x in chain)


def check_graded(
    poset: FinitePoset[T],
    rank: Callable[[T], int],
    *,
    label: Callable[[T], str] = str,
) -> PosetReport:
    """Check that ``(poset, rank)`` is graded.

    Needs a minimum of rank 0, and for every ``x`` all maximal chains of
    ``[0, x]`` must have length ``rank(x)``. Maximal chains are paths in the
    covering graph, so comparing the shortest and longest path from the
    minimum is enough.
    """
    if not len(poset):
        return PosetReport(is_graded=False, failure_witness="empty poset")
    bottom = poset.minimum()
    if bottom is None:
        return PosetReport(is_graded=False, failure_witness="no minimum element")
    if rank(bottom) != 0:
        return PosetReport(
            is_graded=False,
            failure_witness=f"minimum {label(bottom)} has rank {rank(bottom)}",
        )

    shortest: dict[T, list[T]] = {bottom: [bottom]}
    longest: dict[T, list[T]] = {bottom: [bottom]}
    for node in nx.topological_sort(poset.hasse):
        if node == bottom:
            continue
        below = list(poset.hasse.predecessors(node))
        shortest[node] = [*min((shortest[p] for p in below), key=len), node]
        longest[node] = [*max((longest[p] for p in below), key=len), node]

    for x in poset.elements:
        short, long = shortest[x], longest[x]
        if len(short) != len(long):
            return PosetReport(
                is_graded=False,
                failure_witness=(
                    f"maximal chains of different lengths below {label(x)}: "
                    f"{_chain(short, label)} and {_chain(long, label)}"
                ),
            )
        if len(short) - 1 != rank(x):
            return PosetReport(
                is_graded=False,
                failure_witness=(
                    f"{label(x)} has rank {rank(x)} but its maximal chains have "
                    f"length {len(short) - 1}: {_chain(short, label)}"
                ),
            )
    return PosetReport(
        is_graded=True,
        rank_of={label(x): rank(x) for x in poset.elements},
    )


def subposet(members: Iterable[Element], interval: LowerInterval) -> FinitePoset[Element]:
    """Return ``members`` with the Bruhat order of ``interval``."""
    chosen = sorted(set(members))
    outside = [m for m in chosen if m not in interval]
    if outside:
        raise NotInIntervalError(
            f"{', '.join(str(m) for m in outside)} not in B({interval.w})",
        )
    return FinitePoset.from_relation(chosen, interval.leq)


def check_faithful(members: Iterable[Element], interval: LowerInterval) -> PosetReport:
    """Check that ``members`` is graded by the ambient length."""
    report = check_graded(subposet(members, interval), lambda x: x.length)
    if report.is_graded:
        return report.model_copy(update={"offset": 0})
    return report


def check_almost_faithful(
    members: Iterable[Element],
    interval: LowerInterval,
) -> PosetReport:
    """Check that ``members`` is graded by the ambient length minus its minimum."""
    poset = subposet(members, interval)
    if not len(poset):
        return PosetReport(is_graded=False, failure_witness="empty poset")
    offset = min(x.length for x in poset.elements)
    report = check_graded(poset, lambda x: x.length - offset)
    if report.is_graded:
        return report.model_copy(update={"offset": offset})
    return report


def graph_isomorphism(first: nx.DiGraph, second: nx.DiGraph) -> dict[Any, Any] | None:
    """Return the first directed-graph isomorphism found by VF2, if any."""
    if len(first) != len(second) or first.size() != second.size():
        return None
    return next(DiGraphMatcher(first, second).isomorphisms_iter(), None)


def poset_isomorphic(
    first: FinitePoset[Any],
    second: FinitePoset[Any],
) -> dict[Any, Any] | None:
    """Return an order isomorphism, matching the covering graphs."""
    return graph_isomorphism(first.hasse, second.hasse)
