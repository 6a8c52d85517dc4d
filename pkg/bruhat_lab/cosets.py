"""Bruhat cosets ``C_w(u) = W_{D_L(w)} u W_{D_R(w)}`` and their projections."""

from collections import deque
from dataclasses import dataclass

from .bruhat import LowerInterval, bruhat_leq, lower_interval
from .coxeter import CoxeterSystem, Element, Side
from .errors import ConsistencyError, NotInIntervalError


@dataclass(frozen=True)
class BruhatCoset:
    """One two-sided coset of ``B(w)``.

    :cvar left: ``D_L(w)``, the left index set.
    :cvar right: ``D_R(w)``, the right index set.
    :cvar members: The coset itself.
    :cvar v_min: The minimum, ``P_down`` of every member.
    :cvar v_max: The maximum, ``P_up`` of every member.
    :cvar mid: Length of ``v_min``.
    :cvar side: Length difference between ``v_max`` and ``v_min``.
    """

    left: frozenset[int]
    right: frozenset[int]
    members: frozenset[Element]
    v_min: Element
    v_max: Element
    mid: int
    side: int

    @property
    def length(self) -> int:
        """``l(C) = mid + side``, the length of the maximum."""
        return self.mid + self.side

    @property
    def degree(self) -> int:
        """Degree of the coset as a regular graph, equal to its side length."""
        return self.side

    @property
    def sorted_members(self) -> list[Element]:
        """Members from the top down, ties broken by canonical form."""
        return sorted(self.members, reverse=True)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return f"{self.v_max}/{self.v_min}"


def _require_below(system: CoxeterSystem, w: Element, u: Element) -> None:
    if not bruhat_leq(system, u, w):
        raise NotInIntervalError(f"{u} is not below {w}")


def double_coset_members(
    system: CoxeterSystem,
    u: Element,
    left: frozenset[int],
    right: frozenset[int],
) -> frozenset[Element]:
    """Return ``W_left u W_right`` by closing ``{u}`` under single generators.

    Terminates only when the coset is finite, which holds for every coset of
    a finite lower interval.
    """
    seen = {u}
    queue = deque([u])
    while queue:
        current = queue.popleft()
        neighbours = [system.left_multiply(s, current) for s in sorted(left)]
        neighbours += [system.right_multiply(current, s) for s in sorted(right)]
        for neighbour in neighbours:
            if neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    return frozenset(seen)


def _extreme(members: frozenset[Element], *, lowest: bool) -> Element:
    ordered = sorted(members)
    candidate = ordered[0] if lowest else ordered[-1]
    peers = [m for m in ordered if m.length == candidate.length]
    if len(peers) != 1:
        which = "minimal" if lowest else "maximal"
        raise ConsistencyError(
            f"Coset has {len(peers)} {which} length elements: "
            f"{', '.join(str(m) for m in peers)}",
        )
    return candidate


def coset(system: CoxeterSystem, w: Element, u: Element) -> BruhatCoset:
    """Return the Bruhat coset ``C_w(u)``."""
    _require_below(system, w, u)
    left = system.descents(w, Side.LEFT)
    right = system.descents(w, Side.RIGHT)
    members = double_coset_members(system, u, left, right)
    v_min = _extreme(members, lowest=True)
    v_max = _extreme(members, lowest=False)
    return BruhatCoset(
        left=left,
        right=right,
        members=members,
        v_min=v_min,
        v_max=v_max,
        mid=v_min.length,
        side=v_max.length - v_min.length,
    )


def _project_down(
    system: CoxeterSystem,
    u: Element,
    left: frozenset[int],
    right: frozenset[int],
) -> Element:
    current = u
    while True:
        if shrinking := system.descents(current, Side.LEFT) & left:
            current = system.left_multiply(min(shrinking), current)
        elif shrinking := system.descents(current, Side.RIGHT) & right:
            current = system.right_multiply(current, min(shrinking))
        else:
            return current


def project_down(system: CoxeterSystem, w: Element, u: Element) -> Element:
    """Return ``P_down(u) = min C_w(u)`` by stripping descents in ``D_L(w)``/``D_R(w)``."""
    _require_below(system, w, u)
    return _project_down(
        system,
        u,
        system.descents(w, Side.LEFT),
        system.descents(w, Side.RIGHT),
    )


def project_up(system: CoxeterSystem, w: Element, u: Element) -> Element:
    """Return ``P_up(u) = max C_w(u)`` from the enumerated coset."""
    return coset(system, w, u).v_max


def greedy_project_up(system: CoxeterSystem, w: Element, u: Element) -> Element:
    """Climb through ``D_L(w)`` on the left and ``D_R(w)`` on the right until stuck.

    Only an optimisation: callers compare it with :func:`project_up`.
    """
    _require_below(system, w, u)
    left = system.descents(w, Side.LEFT)
    right = system.descents(w, Side.RIGHT)
    current = u
    while True:
        if growing := left - system.descents(current, Side.LEFT):
            current = system.left_multiply(min(growing), current)
        elif growing := right - system.descents(current, Side.RIGHT):
            current = system.right_multiply(current, min(growing))
        else:
            return current


def same_coset(system: CoxeterSystem, w: Element, u: Element, v: Element) -> bool:
    """Return whether ``u ~_w v``."""
    return project_down(system, w, u) == project_down(system, w, v)


def partition(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None = None,
) -> list[BruhatCoset]:
    """Split ``B(w)`` into its Bruhat cosets.

    The cosets are listed by decreasing ``(l(P_up), canonical form of P_up)``.
    """
    if interval is None:
        interval = lower_interval(system, w)
    cosets: list[BruhatCoset] = []
    covered: set[Element] = set()
    for member in interval.sorted_members:
        if member in covered:
            continue
        found = coset(system, w, member)
        if not found.members <= interval.members:
            raise ConsistencyError(f"Coset of {member} leaves B({w})")
        covered |= found.members
        cosets.append(found)
    return sorted(cosets, key=lambda c: c.v_max, reverse=True)


def _descent_condition(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None,
    *,
    critical: bool,
) -> frozenset[Element]:
    if interval is None:
        interval = lower_interval(system, w)
    left = system.descents(w, Side.LEFT)
    right = system.descents(w, Side.RIGHT)
    selected: set[Element] = set()
    for member in interval.members:
        member_left = system.descents(member, Side.LEFT)
        member_right = system.descents(member, Side.RIGHT)
        if critical:
            keep = left <= member_left and right <= member_right
        else:
            keep = not (left & member_left) and not (right & member_right)
        if keep:
            selected.add(member)
    return frozenset(selected)


def critical_set(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None = None,
) -> frozenset[Element]:
    """Return ``B_up(w)``, the ``u`` making ``(u, w)`` a critical pair."""
    return _descent_condition(system, w, interval, critical=True)


def min_set(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None = None,
) -> frozenset[Element]:
    """Return ``B_down(w)``, the members without descents in ``D_L(w)``/``D_R(w)``."""
    return _descent_condition(system, w, interval, critical=False)


def mid_side(system: CoxeterSystem, w: Element, u: Element) -> tuple[int, int]:
    """Return ``(mid_w(u), side_w(u))``."""
    bottom = project_down(system, w, u)
    return bottom.length, u.length - bottom.length


def left_cosets(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None = None,
) -> list[frozenset[Element]]:
    """Split ``B(w)`` into the left cosets ``W_{D_L(w)} u``, sorted by their minimum."""
    if interval is None:
        interval = lower_interval(system, w)
    left = system.descents(w, Side.LEFT)
    found: list[frozenset[Element]] = []
    covered: set[Element] = set()
    for member in interval.sorted_members:
        if member in covered:
            continue
        members = double_coset_members(system, member, left, frozenset())
        covered |= members
        found.append(members)
    return found
