"""Serialize intervals, coset tables and quotient intervals."""

import json
import pathlib
from dataclasses import dataclass
from typing import Any

import graphviz  # type: ignore[import-untyped]
from craft_cli import emit
from dataclasses_json import dataclass_json

from .bruhat import LowerInterval, hasse_edges, lower_interval
from .cosets import BruhatCoset
from .coxeter import CoxeterSystem, Element
from .lab import CheckReport
from .quotient import (
    QuotientGraphReport,
    QuotientInterval,
    quotient_graph_check,
    quotient_interval,
)

SCHEMA_VERSION = 1

TABLE_HEADER = ("members", "P_up", "length", "P_down", "mid", "side")


@dataclass_json
@dataclass
class IntervalRecord:
    """A lower interval and its Bruhat graph."""

    system: str
    w: str
    members: list[str]
    levels: list[list[str]]
    edges: list[list[str]]
    v: int = SCHEMA_VERSION


@dataclass_json
@dataclass
class CosetRow:
    """One row of a coset table."""

    members: list[str]
    p_up: str
    length: int
    p_down: str
    mid: int
    side: int


@dataclass_json
@dataclass
class CosetTable:
    """The Bruhat cosets of ``B(w)``, largest ``P_up`` first."""

    system: str
    w: str
    rows: list[CosetRow]
    v: int = SCHEMA_VERSION


@dataclass_json
@dataclass
class QuotientRecord:
    """The quotient lower interval with its order, arcs and graph checks.

    ``order`` and ``arcs`` hold pairs of row indices; ``order`` lists the
    strict relations only.
    """

    system: str
    w: str
    separated: bool
    cosets: list[CosetRow]
    order: list[list[int]]
    arcs: list[list[int]]
    checks: dict[str, bool]
    v: int = SCHEMA_VERSION


def _names(elements: list[Element]) -> list[str]:
    return [str(element) for element in elements]


def interval_record(
    system: CoxeterSystem,
    interval: LowerInterval,
    *,
    hasse: bool = False,
) -> IntervalRecord:
    """Build the record of ``B(w)``; ``hasse`` keeps the covering edges only."""
    edges = hasse_edges(interval) if hasse else interval.sorted_edges
    return IntervalRecord(
        system=str(system),
        w=str(interval.w),
        members=_names(interval.sorted_members),
        levels=[
            _names(list(interval.levels[length])) for length in sorted(interval.levels)
        ],
        edges=[[str(u), str(v)] for u, v in edges],
    )


def coset_row(found: BruhatCoset) -> CosetRow:
    """Build the table row of one coset."""
    return CosetRow(
        members=_names(found.sorted_members),
        p_up=str(found.v_max),
        length=found.length,
        p_down=str(found.v_min),
        mid=found.mid,
        side=found.side,
    )


def coset_table(system: CoxeterSystem, w: Element, cosets: list[BruhatCoset]) -> CosetTable:
    """Build the coset table of ``B(w)``."""
    return CosetTable(system=str(system), w=str(w), rows=[coset_row(c) for c in cosets])


def quotient_record(
    system: CoxeterSystem,
    quotient: QuotientInterval,
    report: QuotientGraphReport,
) -> QuotientRecord:
    """Build the record of ``C(w)``."""
    size = len(quotient)
    return QuotientRecord(
        system=str(system),
        w=str(quotient.w),
        separated=report.separated,
        cosets=[coset_row(c) for c in quotient.cosets],
        order=[
            [i, j] for i in range(size) for j in range(size) if i != j and quotient.leq[i][j]
        ],
        arcs=[[i, j] for i, j in quotient.sorted_arcs],
        checks={
            "forward": report.forward_holds,
            "converse": report.converse_holds,
            "isomorphic": report.isomorphic,
        },
    )


def to_json(record: Any) -> str:  # noqa: ANN401 (dataclasses_json records are untyped)
    """Render a record as JSON text."""
    return json.dumps(record.to_dict(), indent=4)


def coset_table_text(table: CosetTable) -> str:
    """Render a coset table as text, one row per coset."""
    lines = [" | ".join(TABLE_HEADER)]
    lines.extend(
        " | ".join(
            [
                "{" + ", ".join(row.members) + "}",
                row.p_up,
                str(row.length),
                row.p_down,
                str(row.mid),
                str(row.side),
            ],
        )
        for row in table.rows
    )
    return "\n".join(lines) + "\n"


def interval_dot(interval: LowerInterval, *, hasse: bool = False) -> str:
    """Render the Bruhat graph of ``B(w)`` as DOT, one cluster per length."""
    dot = graphviz.Digraph(comment=f"B({interval.w})")
    for length in sorted(interval.levels):
        with dot.subgraph(name=f"cluster_{length}") as cluster:
            cluster.attr(label=f"length {length}", rank="same")
            for member in interval.levels[length]:
                cluster.node(str(member))
    for u, v in hasse_edges(interval) if hasse else interval.sorted_edges:
        dot.edge(str(u), str(v))
    return str(dot.source)


def quotient_dot(quotient: QuotientInterval) -> str:
    """Render the quotient Bruhat graph as DOT."""
    dot = graphviz.Digraph(comment=f"C({quotient.w})")
    for index, found in enumerate(quotient.cosets):
        dot.node(
            f"C{index}",
            f"{found.v_max} / {found.v_min}\\nmid {found.mid}, side {found.side}",
        )
    for i, j in quotient.sorted_arcs:
        dot.edge(f"C{i}", f"C{j}")
    return str(dot.source)


def export_all(
    system: CoxeterSystem,
    w: Element,
    directory: pathlib.Path,
    *,
    hasse: bool = False,
) -> list[pathlib.Path]:
    """Write every rendering of ``B(w)`` and ``C(w)`` into ``directory``."""
    interval = lower_interval(system, w)
    quotient = quotient_interval(system, w, interval)
    report = quotient_graph_check(system, w, quotient, interval)
    table = coset_table(system, w, list(quotient.cosets))

    outputs = {
        "interval.json": to_json(interval_record(system, interval, hasse=hasse)),
        "interval.dot": interval_dot(interval, hasse=hasse),
        "cosets.txt": coset_table_text(table),
        "cosets.json": to_json(table),
        "quotient.json": to_json(quotient_record(system, quotient, report)),
        "quotient.dot": quotient_dot(quotient),
    }
    directory.mkdir(parents=True, exist_ok=True)
    written: list[pathlib.Path] = []
    for name, text in outputs.items():
        path = directory / name
        emit.debug(f"Writing {path}")
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written


def interval_text(record: IntervalRecord) -> str:
    """Render the members of ``B(w)`` one length per line."""
    return "".join(
        f"{length}: {', '.join(level)}\n" for length, level in enumerate(record.levels)
    )


def reports_json(reports: list[CheckReport]) -> str:
    """Render lab reports as a JSON list."""
    return json.dumps(
        [report.model_dump(mode="json", by_alias=True) for report in reports],
        indent=4,
    )


def reports_text(reports: list[CheckReport]) -> str:
    """Summarize lab reports, listing failing clauses with their witnesses."""
    lines: list[str] = []
    for report in reports:
        if report.skipped:
            status = "skip"
        else:
            status = "pass" if report.passed else "FAIL"
        lines.append(f"{report.subject}: {status}")
        if report.reason:
            lines.append(f"    {report.reason}")
        lines.extend(
            f"    {clause.name}: {clause.outcome}"
            + (f" ({clause.witness})" if clause.witness else "")
            for clause in report.clauses
            if clause.outcome in ("fail", "observed")
        )
        for key, value in report.observations.items():
            if isinstance(value, list):
                lines.append(f"    {key}: {len(value)}")
                lines.extend(f"        {item}" for item in value)
            else:
                lines.append(f"    {key}: {value}")
    return "\n".join(lines) + "\n"
