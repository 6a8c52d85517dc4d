"""Verifiers and scans over Bruhat intervals.

Verifiers never raise on a failing statement: each statement is a clause of a
:class:`CheckReport` and a failure carries the first witness found.
"""

import itertools
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Literal, TypeVar

import numpy as np
import pydantic
from craft_application.models import CraftBaseModel
from craft_cli import emit

from .bruhat import (
    LowerInterval,
    bruhat_leq,
    bruhat_leq_dot,
    lower_interval,
    subword_closure,
)
from .config import LabConfig
from .cosets import (
    critical_set,
    double_coset_members,
    greedy_project_up,
    left_cosets,
    mid_side,
    min_set,
    partition,
    project_down,
)
from .coxeter import CoxeterSystem, Element, Side, TypeABackend
from .posets import (
    check_almost_faithful,
    check_faithful,
    poset_isomorphic,
    subposet,
)
from .quotient import (
    QuotientInterval,
    direct_product_witness,
    is_separated,
    mid_graded_report,
    quotient_graph_check,
    quotient_interval,
)

Outcome = Literal["pass", "fail", "skip", "observed"]

THEOREM1_CLAUSES = (
    "quotient-is-interval",
    "coset-is-subinterval",
    "coset-almost-faithful",
    "bottom-coset-faithful",
    "coset-regular",
    "extreme-sets",
    "extremes-isomorphic",
    "extremes-index-partition",
    "length-split",
    "mid-monotone",
    "projection-monotone",
    "side-monotone-in-coset",
)

THEOREM2_CLAUSES = (
    "extremes-isomorphic",
    "bottom-set-faithful",
    "bottom-set-is-interval",
    "extremes-index-partition",
    "length-split-monotone",
    "coset-almost-faithful",
    "coset-regular",
    "degree-monotone",
    "quotient-graph-equivalence",
    "mid-graded",
)

APPENDIX_CLAUSES = (
    "lifting",
    "inversions",
    "exchange-deletion",
    "order-oracles",
    "parabolic-decomposition",
    "chain-property",
    "coset-partition",
    "one-sided-index-uniqueness",
)

DEODHAR_CLAUSES = ("deodhar-inequality", "degree-class-invariance")

WITNESS_CLAUSES = (
    "non-unique-factorization",
    "non-unique-index-pair",
    "non-graded-double-quotient",
    "non-direct-product",
)

CLAUSE_STATEMENTS: dict[str, str] = {
    "quotient-is-interval": "(C(w), <=) has a minimum and a maximum",
    "coset-is-subinterval": "each coset is the Bruhat interval [v_min, v_max]",
    "coset-almost-faithful": "each coset is almost faithful of rank side_w(C)",
    "bottom-coset-faithful": "the coset of e is a faithful subposet of B(w)",
    "coset-regular": "the Bruhat graph of each coset is side_w(C)-regular",
    "extreme-sets": "B_down(w) and B_up(w) are the coset minima and maxima",
    "extremes-isomorphic": "B_down(w) and B_up(w) are isomorphic posets",
    "extremes-index-partition": "B_down(w) and B_up(w) each meet every coset once",
    "length-split": "l(u) = mid_w(u) + side_w(u) with both parts nonnegative",
    "mid-monotone": "mid_w is weakly increasing along Bruhat order and on C(w)",
    "projection-monotone": "u <= v implies P_up(u) <= P_up(v) and P_down(u) <= P_down(v)",
    "side-monotone-in-coset": "side_w is weakly increasing inside one coset",
    "bottom-set-faithful": "B_down(w) is a faithful subposet of B(w)",
    "bottom-set-is-interval": "B_down(w) is the interval [e, P_down(w)]",
    "length-split-monotone": "mid_w and side_w are both weakly increasing on B(w)",
    "degree-monotone": "C <= D implies deg(C) <= deg(D)",
    "quotient-graph-equivalence": "(C(w), ->) is isomorphic to the Bruhat graph of B_down(w)",
    "mid-graded": "(C(w), <=) is graded by mid_w",
    "lifting": "s in D_L(w) and u <= w give su <= w and u <= sw",
    "inversions": "a reduced word of w yields l(w) distinct reflections, the same for every reduced word",
    "exchange-deletion": "deleting letter i of a reduced word of w gives t_i w",
    "order-oracles": "descent recursion, subwords, interval reachability and rank matrices agree on <=",
    "parabolic-decomposition": "w = w_I * ^I w with additive lengths, uniquely",
    "chain-property": "B(w) restricted to a one-sided quotient is graded by length",
    "coset-partition": "the left cosets W_I u partition B(w) into isomorphic intervals of equal degree",
    "one-sided-index-uniqueness": "W_I u = W_J u forces I = J",
    "deodhar-inequality": "deg(u) >= l(w) for every u in B(w)",
    "degree-class-invariance": "members of one coset share their degree",
    "non-unique-factorization": "x = a u b with additive lengths can factor twice",
    "non-unique-index-pair": "W_I u W_J can equal W_I' u W_J' for (I, J) != (I', J')",
    "non-graded-double-quotient": "^I W^J need not be graded by length",
    "non-direct-product": "B(w) need not be B_down(w) times the top coset",
}
"""One line per clause naming the statement it verifies."""

T = TypeVar("T")
R = TypeVar("R")


class Clause(CraftBaseModel):
    """One statement of a verifier and its outcome."""

    name: str
    outcome: Outcome
    witness: str | None = None


class CheckReport(CraftBaseModel):
    """Outcome of a verifier or scan."""

    subject: str
    clauses: list[Clause] = []
    reason: str | None = None
    observations: dict[str, Any] = {}
    elapsed: float = pydantic.Field(default=0.0, exclude=True)

    @property
    def passed(self) -> bool:
        """Whether no clause failed; skipped and observed clauses count as passing."""
        return all(clause.outcome != "fail" for clause in self.clauses)

    @property
    def skipped(self) -> bool:
        """Whether every clause was skipped."""
        return bool(self.clauses) and all(c.outcome == "skip" for c in self.clauses)


class Polynomial(CraftBaseModel):
    """Integer polynomial, ``coefficients[k]`` being the coefficient of ``q^k``."""

    coefficients: list[int]

    @property
    def value_at_one(self) -> int:
        """P(1), the size of the interval."""
        return sum(self.coefficients)

    def __str__(self) -> str:
        terms: list[str] = []
        for power, coefficient in enumerate(self.coefficients):
            if not coefficient:
                continue
            if not power:
                terms.append(str(coefficient))
                continue
            factor = "" if coefficient == 1 else str(coefficient)
            variable = "q" if power == 1 else f"q^{power}"
            terms.append(f"{factor}{variable}")
        return " + ".join(terms) or "0"


class _Clauses:
    """Collects failures by clause name, keeping the first witness of each."""

    def __init__(self, names: Sequence[str]) -> None:
        self.names = names
        self.witnesses: dict[str, str] = {}

    def fail(self, name: str, witness: str) -> None:
        if name not in self.names:
            raise ValueError(f"unknown clause {name!r}")
        self.witnesses.setdefault(name, witness)

    def check(self, name: str, holds: bool, witness: str) -> None:  # noqa: FBT001 (Boolean-typed positional argument)
        if not holds:
            self.fail(name, witness)

    def merge(self, other: "_Clauses") -> None:
        for name, witness in other.witnesses.items():
            self.fail(name, witness)

    def report(
        self,
        subject: str,
        started: float,
        *,
        observations: dict[str, Any] | None = None,
    ) -> CheckReport:
        return CheckReport(
            subject=subject,
            clauses=[
                Clause(name=name, outcome="fail", witness=self.witnesses[name])
                if name in self.witnesses
                else Clause(name=name, outcome="pass")
                for name in self.names
            ],
            observations=observations or {},
            elapsed=time.perf_counter() - started,
        )


def _subsets(generators: Iterable[int]) -> list[frozenset[int]]:
    items = sorted(generators)
    return [
        frozenset(chosen)
        for size in range(len(items) + 1)
        for chosen in itertools.combinations(items, size)
    ]


def _parallel_map(function: Callable[[T], R], items: Sequence[T], workers: int) -> list[R]:
    """Map in a thread pool, keeping the order of ``items``."""
    if workers <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))


def _timed(name: str, function: Callable[[Element], R]) -> Callable[[Element], R]:
    def _run(w: Element) -> R:
        started = time.perf_counter()
        result = function(w)
        emit.trace(f"{name} {w}: {time.perf_counter() - started:.3f}s")
        return result

    return _run


def select_scope(
    system: CoxeterSystem,
    *,
    literals: Sequence[str] = (),
    exhaustive: bool = False,
    sample: int | None = None,
    seed: int | None = None,
    lab_config: LabConfig | None = None,
) -> list[Element]:
    """Resolve the elements a check or scan runs over.

    Explicit literals win. Otherwise the whole group is used when ``exhaustive``
    is set or the group is no larger than the sample size, and a seeded sample
    is drawn in every other case.
    """
    if lab_config is None:
        lab_config = LabConfig()
    if literals:
        return [system.parse_element(literal) for literal in literals]

    limit = lab_config.max_group_size
    group = system.elements(limit=limit)
    size = sample if sample is not None else lab_config.sample_size
    if exhaustive or (sample is None and len(group) <= size):
        emit.debug(f"Scope: all {len(group)} elements of {system}")
        return group

    seed = lab_config.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(group), size=min(size, len(group)), replace=False)
    emit.debug(f"Scope: {len(chosen)} of {len(group)} elements, seed {seed}")
    return sorted(group[int(index)] for index in chosen)


def _check_cosets(
    clauses: _Clauses,
    interval: LowerInterval,
    quotient: QuotientInterval,
) -> None:
    for found in quotient.cosets:
        between = {
            v
            for v in interval.members
            if interval.leq(found.v_min, v) and interval.leq(v, found.v_max)
        }
        clauses.check(
            "coset-is-subinterval",
            found.members == between,
            f"coset {found} differs from [{found.v_min}, {found.v_max}]",
        )

        report = check_almost_faithful(found.members, interval)
        clauses.check(
            "coset-almost-faithful",
            report.is_graded and report.offset == found.mid,
            f"coset {found}: {report.failure_witness or f'offset {report.offset}'}",
        )

        induced = interval.graph.subgraph(found.members)
        for member in found.sorted_members:
            clauses.check(
                "coset-regular",
                induced.degree(member) == found.side,
                f"{member} has degree {induced.degree(member)} in coset {found}, "
                f"expected {found.side}",
            )


def _check_extremes(
    system: CoxeterSystem,
    clauses: _Clauses,
    interval: LowerInterval,
    quotient: QuotientInterval,
) -> None:
    w = quotient.w
    mins, maxes = quotient.mins, quotient.maxes
    if "extreme-sets" in clauses.names:
        clauses.check(
            "extreme-sets",
            mins == min_set(system, w, interval),
            "B_down(w) differs from the members without descents in D_L(w), D_R(w)",
        )
        clauses.check(
            "extreme-sets",
            maxes == critical_set(system, w, interval),
            "B_up(w) differs from the critical set",
        )

    clauses.check(
        "extremes-isomorphic",
        poset_isomorphic(subposet(mins, interval), subposet(maxes, interval)) is not None,
        "B_down(w) and B_up(w) are not isomorphic",
    )

    clauses.check(
        "extremes-index-partition",
        len(mins) == len(maxes) == len(quotient),
        f"{len(quotient)} cosets but {len(mins)} minima and {len(maxes)} maxima",
    )
    for member in interval.sorted_members:
        found = quotient.coset_of(member)
        bottom = project_down(system, w, member)
        top = greedy_project_up(system, w, member)
        clauses.check(
            "extremes-index-partition",
            bottom == found.v_min and top == found.v_max,
            f"{member}: projections {bottom}, {top} but coset {found}",
        )


def _check_length_split(
    system: CoxeterSystem,
    clauses: _Clauses,
    name: str,
    interval: LowerInterval,
    quotient: QuotientInterval,
) -> dict[Element, tuple[int, int]]:
    split: dict[Element, tuple[int, int]] = {}
    for member in interval.sorted_members:
        mid, side = mid_side(system, quotient.w, member)
        split[member] = (mid, side)
        clauses.check(
            name,
            mid == quotient.coset_of(member).mid and mid >= 0 and side >= 0,
            f"{member}: mid {mid}, side {side}",
        )
    return split


def _check_monotone(
    clauses: _Clauses,
    interval: LowerInterval,
    quotient: QuotientInterval,
    split: dict[Element, tuple[int, int]],
) -> None:
    # the edges include every cover of B(w)
    for u, v in interval.sorted_edges:
        lower, upper = quotient.coset_of(u), quotient.coset_of(v)
        clauses.check(
            "projection-monotone",
            interval.leq(lower.v_max, upper.v_max)
            and interval.leq(lower.v_min, upper.v_min),
            f"{u} <= {v} but P_up {lower.v_max}, {upper.v_max} and "
            f"P_down {lower.v_min}, {upper.v_min}",
        )
        clauses.check(
            "mid-monotone",
            split[u][0] <= split[v][0],
            f"{u} <= {v} but mid {split[u][0]} > {split[v][0]}",
        )
        if lower is upper:
            clauses.check(
                "side-monotone-in-coset",
                split[u][1] <= split[v][1],
                f"{u} <= {v} in {lower} but side {split[u][1]} > {split[v][1]}",
            )


def verify_theorem1(system: CoxeterSystem, w: Element) -> CheckReport:
    """Check the coset decomposition of ``B(w)`` into almost faithful cosets."""
    started = time.perf_counter()
    clauses = _Clauses(THEOREM1_CLAUSES)
    interval = lower_interval(system, w)
    quotient = quotient_interval(system, w, interval)

    poset = quotient.poset()
    low, high = poset.minimum(), poset.maximum()
    clauses.check(
        "quotient-is-interval",
        low == quotient.bottom and high == quotient.top,
        f"minimum {low}, maximum {high} of the quotient poset",
    )

    _check_cosets(clauses, interval, quotient)

    bottom = quotient.cosets[quotient.bottom]
    report = check_faithful(bottom.members, interval)
    clauses.check(
        "bottom-coset-faithful",
        report.is_graded,
        f"bottom coset {bottom}: {report.failure_witness}",
    )

    _check_extremes(system, clauses, interval, quotient)
    split = _check_length_split(system, clauses, "length-split", interval, quotient)
    _check_monotone(clauses, interval, quotient, split)

    for i, j in itertools.permutations(range(len(quotient)), 2):
        lower, upper = quotient.cosets[i], quotient.cosets[j]
        clauses.check(
            "mid-monotone",
            not quotient.leq[i][j] or lower.mid <= upper.mid,
            f"{lower} <= {upper} but mid {lower.mid} > {upper.mid}",
        )
    return clauses.report(f"theorem1 {w}", started)


def verify_theorem2(system: CoxeterSystem, w: Element) -> CheckReport:
    """Check the finer statements that hold when ``w`` is separated."""
    started = time.perf_counter()
    if not is_separated(system, w):
        bottom = project_down(system, w, w)
        support = sorted(system.support(bottom))
        return CheckReport(
            subject=f"theorem2 {w}",
            clauses=[Clause(name=name, outcome="skip") for name in THEOREM2_CLAUSES],
            reason=(
                f"hypothesis 'separated' fails: a descent of {w} lies in the "
                f"support {support} of P_down(w) = {bottom}"
            ),
            elapsed=time.perf_counter() - started,
        )

    clauses = _Clauses(THEOREM2_CLAUSES)
    interval = lower_interval(system, w)
    quotient = quotient_interval(system, w, interval)
    mins = quotient.mins

    report = check_faithful(mins, interval)
    clauses.check("bottom-set-faithful", report.is_graded, f"{report.failure_witness}")

    top_of_bottom = project_down(system, w, w)
    below = {u for u in interval.members if interval.leq(u, top_of_bottom)}
    clauses.check(
        "bottom-set-is-interval",
        mins == below,
        f"B_down(w) differs from [e, {top_of_bottom}]",
    )

    _check_extremes(system, clauses, interval, quotient)
    _check_cosets(clauses, interval, quotient)

    split = _check_length_split(system, clauses, "length-split-monotone", interval, quotient)
    for u, v in itertools.permutations(interval.sorted_members, 2):
        if interval.leq(u, v):
            clauses.check(
                "length-split-monotone",
                split[u][0] <= split[v][0] and split[u][1] <= split[v][1],
                f"{u} <= {v} with (mid, side) {split[u]} and {split[v]}",
            )

    for i, j in itertools.permutations(range(len(quotient)), 2):
        lower, upper = quotient.cosets[i], quotient.cosets[j]
        clauses.check(
            "degree-monotone",
            not quotient.leq[i][j] or lower.degree <= upper.degree,
            f"{lower} <= {upper} but degree {lower.degree} > {upper.degree}",
        )

    graph_report = quotient_graph_check(system, w, quotient, interval)
    clauses.check(
        "quotient-graph-equivalence",
        graph_report.holds,
        "; ".join(graph_report.counterexamples) or "quotient graph not isomorphic",
    )

    graded = mid_graded_report(system, w, quotient)
    clauses.check("mid-graded", graded.is_graded, f"{graded.failure_witness}")
    return clauses.report(f"theorem2 {w}", started)


def _appendix_for(
    system: CoxeterSystem,
    w: Element,
    scope: Sequence[Element],
    subgroups: dict[frozenset[int], list[Element]],
) -> _Clauses:
    clauses = _Clauses(APPENDIX_CLAUSES)
    interval = lower_interval(system, w)

    # lifting: s in D_L(w) \ D_L(u) gives su <= w and u <= sw
    for s in sorted(system.descents(w, Side.LEFT)):
        sw = system.left_multiply(s, w)
        for u in interval.sorted_members:
            if s in system.descents(u, Side.LEFT):
                continue
            su = system.left_multiply(s, u)
            clauses.check(
                "lifting",
                bruhat_leq(system, su, w) and bruhat_leq(system, u, sw),
                f"w={w}, u={u}, s={s}",
            )

    word = system.reduced_word(w)
    inversions = system.inversions(word)
    clauses.check(
        "inversions",
        len(set(inversions)) == len(inversions) == w.length
        and all(system.is_reflection(t) for t in inversions),
        f"inversions of {w} along '{word}': {', '.join(map(str, inversions))}",
    )
    for other in system.reduced_words(w, limit=200):
        clauses.check(
            "inversions",
            set(system.inversions(other)) == set(inversions),
            f"'{other}' and '{word}' give different inversion sets for {w}",
        )

    deletions = [system.evaluate(word.delete(i)) for i in range(len(word))]
    clauses.check(
        "exchange-deletion",
        len(set(deletions)) == len(deletions),
        f"two deletions of '{word}' give the same element",
    )
    for index, (deleted, reflection) in enumerate(zip(deletions, inversions, strict=True)):
        clauses.check(
            "exchange-deletion",
            deleted == system.multiply(reflection, w),
            f"deleting letter {index + 1} of '{word}' gives {deleted}, "
            f"not t w = {system.multiply(reflection, w)}",
        )

    closure = subword_closure(system, word)
    clauses.check(
        "order-oracles",
        closure == set(interval.members),
        f"subwords of '{word}' differ from B({w})",
    )
    type_a = isinstance(system.backend, TypeABackend)
    for u in scope:
        verdicts = {
            "descent recursion": bruhat_leq(system, u, w),
            "interval": u in interval,
            "subword": u in closure,
        }
        if type_a:
            verdicts["rank matrix"] = bruhat_leq_dot(system, u, w)
        clauses.check(
            "order-oracles",
            len(set(verdicts.values())) == 1,
            f"{u} <= {w}: {verdicts}",
        )
    for u, v in itertools.product(interval.sorted_members, repeat=2):
        clauses.check(
            "order-oracles",
            interval.leq(u, v) == bruhat_leq(system, u, v),
            f"graph reachability and descent recursion disagree on {u} <= {v}",
        )

    for subset, subgroup in subgroups.items():
        for side in Side:
            first, second = system.parabolic_decompose(w, subset, side)
            part, rest = (first, second) if side is Side.LEFT else (second, first)
            clauses.check(
                "parabolic-decomposition",
                system.multiply(first, second) == w
                and part.length + rest.length == w.length
                and system.support(part) <= subset
                and not system.descents(rest, side) & subset,
                f"{w} over {sorted(subset)} ({side.value}): {first} * {second}",
            )
            matches = 0
            for x in subgroup:
                if side is Side.LEFT:
                    candidate = system.multiply(system.inverse(x), w)
                else:
                    candidate = system.multiply(w, system.inverse(x))
                if x.length + candidate.length == w.length and not (
                    system.descents(candidate, side) & subset
                ):
                    matches += 1
            clauses.check(
                "parabolic-decomposition",
                matches == 1,
                f"{w} over {sorted(subset)} ({side.value}): {matches} factorizations",
            )

            # members of B(w) that are minimal in their one-sided cosets
            if system.descents(w, side) & subset:
                continue
            representatives = [
                u for u in interval.members if not system.descents(u, side) & subset
            ]
            graded = check_faithful(representatives, interval)
            clauses.check(
                "chain-property",
                graded.is_graded,
                f"B({w}) restricted to the {side.value} quotient by {sorted(subset)}: "
                f"{graded.failure_witness}",
            )

    cosets = left_cosets(system, w, interval)
    union: set[Element] = set().union(*cosets)
    clauses.check(
        "coset-partition",
        union == set(interval.members) and sum(map(len, cosets)) == len(interval),
        f"left cosets of B({w}) do not partition it",
    )
    posets = [subposet(found, interval) for found in cosets]
    degrees: set[int] = set()
    for found, poset in zip(cosets, posets, strict=True):
        clauses.check(
            "coset-partition",
            poset_isomorphic(posets[0], poset) is not None,
            f"left cosets of {min(cosets[0])} and {min(found)} are not isomorphic",
        )
        low, high = min(found), max(found)
        clauses.check(
            "coset-partition",
            all(
                system.weak_leq(low, x, Side.LEFT) and system.weak_leq(x, high, Side.LEFT)
                for x in found
            ),
            f"left coset of {low} is not the weak interval [{low}, {high}]",
        )
        induced = interval.graph.subgraph(found)
        degrees |= {induced.degree(x) for x in found}
    clauses.check(
        "coset-partition",
        len(degrees) <= 1,
        f"left cosets of B({w}) have degrees {sorted(degrees)}",
    )

    one_sided: dict[frozenset[Element], frozenset[int]] = {}
    for subset in subgroups:
        members = double_coset_members(system, w, subset, frozenset())
        if members in one_sided:
            clauses.fail(
                "one-sided-index-uniqueness",
                f"W_I {w} = W_J {w} for I={sorted(one_sided[members])}, J={sorted(subset)}",
            )
        one_sided.setdefault(members, subset)
    return clauses


def verify_appendix(
    system: CoxeterSystem,
    scope: Sequence[Element],
    *,
    workers: int = 1,
) -> CheckReport:
    """Check the classical facts on every element of ``scope``."""
    started = time.perf_counter()
    emit.progress(f"Checking appendix facts over {len(scope)} elements", permanent=True)
    subgroups = {
        subset: system.parabolic_subgroup(subset) for subset in _subsets(system.generators)
    }
    clauses = _Clauses(APPENDIX_CLAUSES)
    results = _parallel_map(
        _timed("appendix", lambda w: _appendix_for(system, w, scope, subgroups)),
        scope,
        workers,
    )
    for result in results:
        clauses.merge(result)
    return clauses.report(f"appendix over {len(scope)} elements", started)


def poincare(
    system: CoxeterSystem,
    w: Element,
    interval: LowerInterval | None = None,
) -> Polynomial:
    """Return ``P_w(q)``, the length generating function of ``B(w)``."""
    if interval is None:
        interval = lower_interval(system, w)
    return Polynomial(
        coefficients=[len(interval.levels.get(k, ())) for k in range(w.length + 1)],
    )


def poincare_compare(system: CoxeterSystem, w: Element) -> tuple[Polynomial, Polynomial]:
    """Return ``(P_w, P_v)`` with ``v = P_down(w)``."""
    return poincare(system, w), poincare(system, project_down(system, w, w))


def poincare_scan(
    system: CoxeterSystem,
    scope: Sequence[Element],
    *,
    workers: int = 1,
) -> CheckReport:
    """Record ``P_w`` and ``P_{P_down(w)}`` over ``scope``."""
    started = time.perf_counter()

    def _pair(w: Element) -> dict[str, Any]:
        full, bottom = poincare_compare(system, w)
        return {
            "w": str(w),
            "p-down": str(project_down(system, w, w)),
            "poincare": full.coefficients,
            "poincare-p-down": bottom.coefficients,
        }

    rows = _parallel_map(_timed("poincare", _pair), scope, workers)
    return CheckReport(
        subject=f"poincare over {len(scope)} elements",
        clauses=[Clause(name="poincare-compare", outcome="observed")],
        observations={"polynomials": rows},
        elapsed=time.perf_counter() - started,
    )


def _deodhar_for(system: CoxeterSystem, w: Element) -> tuple[int, _Clauses]:
    clauses = _Clauses(DEODHAR_CLAUSES)
    interval = lower_interval(system, w)
    degrees = interval.degrees
    slack = min(degree - w.length for degree in degrees.values())
    for member in interval.sorted_members:
        clauses.check(
            "deodhar-inequality",
            degrees[member] >= w.length,
            f"deg({member}) = {degrees[member]} < l({w}) = {w.length}",
        )
    for found in partition(system, w, interval):
        seen = {degrees[member] for member in found.members}
        clauses.check(
            "degree-class-invariance",
            len(seen) == 1,
            f"coset {found} of B({w}) has degrees {sorted(seen)}",
        )
    return slack, clauses


def deodhar_scan(
    system: CoxeterSystem,
    scope: Sequence[Element],
    *,
    workers: int = 1,
) -> CheckReport:
    """Check ``deg_w(u) >= l(w)`` and degree invariance along cosets."""
    started = time.perf_counter()
    emit.progress(f"Scanning Deodhar inequality over {len(scope)} elements", permanent=True)
    results = _parallel_map(
        _timed("deodhar", lambda w: _deodhar_for(system, w)),
        scope,
        workers,
    )
    clauses = _Clauses(DEODHAR_CLAUSES)
    for _, result in results:
        clauses.merge(result)
    slack = min((slack for slack, _ in results), default=None)
    return clauses.report(
        f"deodhar over {len(scope)} elements",
        started,
        observations={"min-slack": slack},
    )


def _degree_pairs(system: CoxeterSystem, w: Element) -> list[str]:
    interval = lower_interval(system, w)
    degrees = interval.degrees
    return [
        f"w={w}, u={u}, v={v}: deg {degrees[u]} < {degrees[v]}"
        for u, v in itertools.permutations(interval.sorted_members, 2)
        if interval.leq(u, v) and degrees[u] < degrees[v]
    ]


def degree_monotone_scan(
    system: CoxeterSystem,
    scope: Sequence[Element],
    *,
    workers: int = 1,
) -> CheckReport:
    """Look for ``u <= v`` in ``B(w)`` with ``deg_w(u) < deg_w(v)``."""
    started = time.perf_counter()
    emit.progress(f"Scanning degree monotonicity over {len(scope)} elements", permanent=True)
    found = [
        witness
        for witnesses in _parallel_map(
            _timed("degmono", lambda w: _degree_pairs(system, w)),
            scope,
            workers,
        )
        for witness in witnesses
    ]
    if found:
        emit.debug(f"Degree monotonicity: {len(found)} witnesses found")
    return CheckReport(
        subject=f"degree monotonicity over {len(scope)} elements",
        clauses=[
            Clause(
                name="degree-monotone",
                outcome="observed",
                witness=found[0] if found else None,
            ),
        ],
        observations={"witnesses": found},
        elapsed=time.perf_counter() - started,
    )


def _in_double_quotient(
    system: CoxeterSystem,
    x: Element,
    left: frozenset[int],
    right: frozenset[int],
) -> bool:
    return not (system.descents(x, Side.LEFT) & left) and not (
        system.descents(x, Side.RIGHT) & right
    )


def _double_quotient_gap(
    below: LowerInterval,
    quotient: set[Element],
    scope: Sequence[Element],
    hi: Element,
) -> Element | None:
    """Return the first ``lo`` of ``scope`` that ``hi`` covers in ``quotient`` across a length gap.

    ``quotient`` holds the double quotient elements of ``below = B(hi)``, so
    every intermediate element is searched, not only those in ``scope``.
    """
    for lo in scope:
        if lo not in quotient or hi.length - lo.length < 2:  # noqa: PLR2004
            continue
        if not any(
            lo.length < z.length < hi.length and below.leq(lo, z) for z in quotient
        ):
            return lo
    return None


def remark_witness_hunt(
    system: CoxeterSystem,
    scope: Sequence[Element],
) -> CheckReport:
    """Search ``(u, I, J)`` over ``scope`` for the double coset pathologies.

    Looks for a length-additive factorization ``x = a u b`` that is not unique,
    a double coset with two index pairs, a double quotient ``^I W^J`` that is
    not graded by length and an interval ``B(u)`` whose sizes rule out a
    direct product of ``B_down(u)`` with the top coset.

    ``scope`` only chooses the elements tested; intervals and quotients are
    taken in the whole group.
    """
    started = time.perf_counter()
    subsets = _subsets(system.generators)
    subgroups = {subset: system.parabolic_subgroup(subset) for subset in subsets}
    witnesses: dict[str, str] = {}
    emit.progress(f"Hunting witnesses over {len(scope)} elements", permanent=True)

    for u in scope:
        by_members: dict[frozenset[Element], tuple[frozenset[int], frozenset[int]]] = {}
        for left, right in itertools.product(subsets, repeat=2):
            members = double_coset_members(system, u, left, right)
            if members in by_members and "non-unique-index-pair" not in witnesses:
                first_left, first_right = by_members[members]
                witnesses["non-unique-index-pair"] = (
                    f"W_I {u} W_J equal for (I, J) = ({sorted(first_left)}, "
                    f"{sorted(first_right)}) and ({sorted(left)}, {sorted(right)})"
                )
            by_members.setdefault(members, (left, right))

            minimal = _in_double_quotient(system, u, left, right)
            if not minimal or "non-unique-factorization" in witnesses:
                continue
            factors: dict[Element, tuple[Element, Element]] = {}
            for a, b in itertools.product(subgroups[left], subgroups[right]):
                x = system.multiply(system.multiply(a, u), b)
                if x.length != a.length + u.length + b.length:
                    continue
                if x in factors:
                    first_a, first_b = factors[x]
                    witnesses["non-unique-factorization"] = (
                        f"{x} = {first_a} * {u} * {first_b} = {a} * {u} * {b} "
                        f"with I={sorted(left)}, J={sorted(right)}"
                    )
                    break
                factors[x] = (a, b)

    for hi in scope:
        if "non-graded-double-quotient" in witnesses:
            break
        below = lower_interval(system, hi)
        for left, right in itertools.product(subsets, repeat=2):
            if not _in_double_quotient(system, hi, left, right):
                continue
            quotient = {
                x for x in below.members if _in_double_quotient(system, x, left, right)
            }
            gap = _double_quotient_gap(below, quotient, scope, hi)
            if gap is not None:
                witnesses["non-graded-double-quotient"] = (
                    f"{gap} < {hi} covers in the double quotient by I={sorted(left)}, "
                    f"J={sorted(right)} with length gap {hi.length - gap.length}"
                )
                break

    for u in scope:
        product = direct_product_witness(system, u)
        if product.is_witness:
            witnesses["non-direct-product"] = (
                f"|B({u})| = {product.interval_size} but |B_down| * |top coset| = "
                f"{product.bottom_size} * {product.top_coset_size}"
            )
            break

    return CheckReport(
        subject=f"remark witnesses over {len(scope)} elements",
        clauses=[
            Clause(name=name, outcome="observed", witness=witnesses.get(name))
            for name in WITNESS_CLAUSES
        ],
        elapsed=time.perf_counter() - started,
    )


def bottom_coset_scan(
    system: CoxeterSystem,
    scope: Sequence[Element],
    *,
    workers: int = 1,
) -> CheckReport:
    """Check that the bottom coset of every ``B(w)`` in ``scope`` is faithful."""
    started = time.perf_counter()

    def _bottom(w: Element) -> str | None:
        interval = lower_interval(system, w)
        quotient = quotient_interval(system, w, interval)
        bottom = quotient.cosets[quotient.bottom]
        report = check_faithful(bottom.members, interval)
        return None if report.is_graded else f"{w}: {report.failure_witness}"

    clauses = _Clauses(("bottom-coset-faithful",))
    for failure in _parallel_map(_timed("bottom", _bottom), scope, workers):
        if failure:
            clauses.fail("bottom-coset-faithful", failure)
    return clauses.report(f"bottom cosets over {len(scope)} elements", started)


def run_verifier(
    verifier: Callable[[CoxeterSystem, Element], CheckReport],
    system: CoxeterSystem,
    scope: Sequence[Element],
    *,
    workers: int = 1,
) -> list[CheckReport]:
    """Run a per-element verifier over ``scope``, reports in scope order."""
    emit.progress(f"Verifying {len(scope)} elements of {system}", permanent=True)
    reports = _parallel_map(lambda w: verifier(system, w), scope, workers)
    for report in reports:
        emit.debug(f"{report.subject}: {'pass' if report.passed else 'FAIL'}")
    return reports
