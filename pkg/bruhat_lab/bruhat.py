"""Bruhat order, lower intervals and Bruhat graphs."""

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
import numpy.typing as npt

from .coxeter import CoxeterSystem, Element, Side, TypeABackend, Word
from .errors import InvalidInputError, NotInIntervalError


@dataclass(frozen=True)
class LowerInterval:
    """The lower interval ``B(w) = [e, w]`` with its Bruhat graph.

    :cvar w: The top element.
    :cvar members: Every element below ``w``.
    :cvar levels: Members grouped by length, each level sorted.
    :cvar edges: Bruhat graph edges ``(u, v)`` meaning ``u -> v``.
    :cvar graph: The same edges as a directed graph.
    """

    w: Element
    members: frozenset[Element]
    levels: Mapping[int, tuple[Element, ...]]
    edges: frozenset[tuple[Element, Element]]
    graph: nx.DiGraph = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    @property
    def sorted_members(self) -> list[Element]:
        """Members sorted by (length, canonical form)."""
        return sorted(self.members)

    @property
    def sorted_edges(self) -> list[tuple[Element, Element]]:
        """Edges sorted by their endpoints."""
        return sorted(self.edges, key=lambda edge: (edge[1], edge[0]))

    @cached_property
    def up_sets(self) -> dict[Element, frozenset[Element]]:
        """Map each member to the members above it (itself included)."""
        return {
            member: frozenset(nx.descendants(self.graph, member)) | {member}
            for member in self.members
        }

    def leq(self, u: Element, v: Element) -> bool:
        """Return whether a directed path leads from ``u`` to ``v``."""
        return v in self.up_sets[u]

    @property
    def degrees(self) -> dict[Element, int]:
        """Map each member to its number of incident edges."""
        return {member: self.graph.degree(member) for member in self.members}


@dataclass(frozen=True)
class IntervalSlice:
    """The interval ``[lo, hi]`` inside ``B(hi)``."""

    lo: Element
    hi: Element
    members: frozenset[Element]


def bruhat_leq(system: CoxeterSystem, u: Element, w: Element) -> bool:
    """Return whether ``u <= w`` in Bruhat order.

    Strips left descents of ``w``: when ``s`` is also a left descent of ``u``
    both sides are shortened, otherwise only ``w`` is.
    """
    while True:
        if u.length > w.length:
            return False
        if not w.length:
            return not u.length
        letter = min(system.descents(w, Side.LEFT))
        if letter in system.descents(u, Side.LEFT):
            u = system.left_multiply(letter, u)
        w = system.left_multiply(letter, w)


def _dominance(perm: tuple[int, ...]) -> npt.NDArray[np.int64]:
    """Return ``D[i][j] = #{k <= i : perm(k) >= j}`` (zero based)."""
    size = len(perm)
    indicator = np.zeros((size, size), dtype=np.int64)
    indicator[np.arange(size), np.array(perm) - 1] = 1
    at_least = np.cumsum(indicator[:, ::-1], axis=1)[:, ::-1]
    return np.cumsum(at_least, axis=0)


def bruhat_leq_dot(system: CoxeterSystem, u: Element, w: Element) -> bool:
    """Compare permutations through their rank matrices (type A only)."""
    if not isinstance(system.backend, TypeABackend):
        raise InvalidInputError("The rank-matrix comparison needs a type A system")
    return bool(
        np.all(_dominance(u.canonical) <= _dominance(w.canonical)),  # type: ignore[arg-type]
    )


def lower_interval(system: CoxeterSystem, w: Element) -> LowerInterval:
    """Enumerate ``B(w)`` and its Bruhat graph.

    Every member ``v`` contributes the edges ``t v -> v`` for ``t`` in its left
    inversion set; the targets of length ``l(v) - 1`` are its coatoms, which
    drive the downward closure.
    """
    members = {w}
    edges: set[tuple[Element, Element]] = set()
    queue = deque([w])
    while queue:
        upper = queue.popleft()
        for reflection in system.inversions(system.reduced_word(upper)):
            lower = system.multiply(reflection, upper)
            edges.add((lower, upper))
            if lower.length == upper.length - 1 and lower not in members:
                members.add(lower)
                queue.append(lower)

    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(members))
    graph.add_edges_from(sorted(edges, key=lambda edge: (edge[1], edge[0])))

    levels: dict[int, list[Element]] = {}
    for member in sorted(members):
        levels.setdefault(member.length, []).append(member)

    return LowerInterval(
        w=w,
        members=frozenset(members),
        levels={length: tuple(level) for length, level in levels.items()},
        edges=frozenset(edges),
        graph=graph,
    )


def interval_slice(
    system: CoxeterSystem,
    u: Element,
    w: Element,
    *,
    within: LowerInterval | None = None,
) -> IntervalSlice:
    """Return ``[u, w]``, optionally reusing an already built ``B(w)``."""
    if not bruhat_leq(system, u, w):
        raise NotInIntervalError(f"{u} is not below {w}")
    interval = within if within is not None and within.w == w else lower_interval(system, w)
    return IntervalSlice(
        lo=u,
        hi=w,
        members=frozenset(v for v in interval.members if bruhat_leq(system, u, v)),
    )


def degree(interval: LowerInterval, u: Element) -> int:
    """Return the number of Bruhat graph edges of ``B(w)`` incident to ``u``."""
    if u not in interval.members:
        raise NotInIntervalError(f"{u} is not in B({interval.w})")
    return int(interval.graph.degree(u))


def hasse_edges(interval: LowerInterval) -> list[tuple[Element, Element]]:
    """Return the covering edges, those raising the length by one."""
    return [
        (lower, upper)
        for lower, upper in interval.sorted_edges
        if upper.length == lower.length + 1
    ]


def subword_closure(system: CoxeterSystem, word: Word | Iterable[int]) -> set[Element]:
    """Return every element expressible by a subword of ``word``."""
    reached = {system.identity}
    for letter in word:
        reached |= {system.right_multiply(element, letter) for element in reached}
    return reached

