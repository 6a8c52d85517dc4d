import json
import pathlib

from bruhat_lab import export
from bruhat_lab.bruhat import lower_interval
from bruhat_lab.cosets import partition
from bruhat_lab.lab import CheckReport, Clause
from bruhat_lab.quotient import quotient_graph_check, quotient_interval

DATA_DIR = pathlib.Path(__file__).parent / "data"


def test_coset_table_text(a3):
    w = a3.parse_element("3412")
    table = export.coset_table(a3, w, partition(a3, w))

    expected = (DATA_DIR / "table-3412.txt").read_text(encoding="utf-8")
    assert export.coset_table_text(table) == expected


def test_coset_table_json(a3):
    w = a3.parse_element("3412")
    table = export.coset_table(a3, w, partition(a3, w))
    data = json.loads(export.to_json(table))

    assert data["system"] == "A3"
    assert data["w"] == "3412"
    assert data["v"] == 1
    assert data["rows"][-1] == {
        "members": ["1324", "1234"],
        "p_up": "1324",
        "length": 1,
        "p_down": "1234",
        "mid": 0,
        "side": 1,
    }
    assert export.CosetTable.from_dict(data) == table


def test_interval_record(a3):
    interval = lower_interval(a3, a3.parse_element("3412"))
    record = export.interval_record(a3, interval)

    assert record.members[0] == "1234"
    assert record.members[-1] == "3412"
    assert [len(level) for level in record.levels] == [1, 3, 5, 4, 1]
    assert len(record.edges) == len(interval.edges)
    assert export.IntervalRecord.from_json(export.to_json(record)) == record

    hasse = export.interval_record(a3, interval, hasse=True)
    assert ["3214", "3412"] in hasse.edges
    assert len(hasse.edges) < len(record.edges)


def test_interval_text(a3):
    interval = lower_interval(a3, a3.parse_element("2143"))
    text = export.interval_text(export.interval_record(a3, interval))
    assert text == "0: 1234\n1: 1243, 2134\n2: 2143\n"


def test_interval_dot(a3):
    interval = lower_interval(a3, a3.parse_element("3412"))
    dot = export.interval_dot(interval)

    for length in range(5):
        assert f"subgraph cluster_{length}" in dot
    assert "2143 -> 3412" in dot
    assert "1234 -> 3214" in dot
    assert "1234 -> 3214" not in export.interval_dot(interval, hasse=True)


def test_quotient_record(a4):
    w = a4.parse_element("45312")
    quotient = quotient_interval(a4, w)
    report = quotient_graph_check(a4, w, quotient)
    record = export.quotient_record(a4, quotient, report)

    assert record.separated
    assert record.checks == {"forward": True, "converse": True, "isomorphic": True}
    assert [row.p_down for row in record.cosets] == ["21354", "21345", "12354", "12345"]
    assert len(record.arcs) == 4
    assert [3, 0] in record.order
    assert [0, 3] not in record.order


def test_quotient_dot(a4):
    quotient = quotient_interval(a4, a4.parse_element("45312"))
    dot = export.quotient_dot(quotient)

    assert r'C0 [label="45312 / 21354\nmid 2, side 6"]' in dot
    assert dot.count("->") == 4


def test_export_all(a3, tmp_path):
    written = export.export_all(a3, a3.parse_element("3412"), tmp_path / "out")

    assert [path.name for path in written] == [
        "interval.json",
        "interval.dot",
        "cosets.txt",
        "cosets.json",
        "quotient.json",
        "quotient.dot",
    ]
    assert (tmp_path / "out" / "cosets.txt").read_text() == (
        DATA_DIR / "table-3412.txt"
    ).read_text()
    quotient = json.loads((tmp_path / "out" / "quotient.json").read_text())
    assert quotient["separated"] is True
    assert len(quotient["cosets"]) == 4


def test_reports_text():
    reports = [
        CheckReport(subject="theorem1 3412", clauses=[Clause(name="a", outcome="pass")]),
        CheckReport(
            subject="theorem1 4321",
            clauses=[Clause(name="a", outcome="fail", witness="4321: oops")],
        ),
        CheckReport(
            subject="theorem2 456123",
            clauses=[Clause(name="a", outcome="skip")],
            reason="hypothesis 'separated' fails",
        ),
        CheckReport(subject="deodhar", observations={"min-slack": 0}),
    ]

    assert export.reports_text(reports) == (
        "theorem1 3412: pass\n"
        "theorem1 4321: FAIL\n"
        "    a: fail (4321: oops)\n"
        "theorem2 456123: skip\n"
        "    hypothesis 'separated' fails\n"
        "deodhar: pass\n"
        "    min-slack: 0\n"
    )


def test_reports_json():
    report = CheckReport(
        subject="scan",
        clauses=[Clause(name="degree-monotone", outcome="observed")],
        observations={"witnesses": []},
        elapsed=2.0,
    )

    assert json.loads(export.reports_json([report])) == [
        {
            "subject": "scan",
            "clauses": [{"name": "degree-monotone", "outcome": "observed", "witness": None}],
            "reason": None,
            "observations": {"witnesses": []},
        },
    ]
