import pytest
from bruhat_lab.bruhat import lower_interval
from bruhat_lab.posets import graph_isomorphism, poset_isomorphic, subposet
from bruhat_lab.quotient import (
    bottom_graph,
    direct_product_witness,
    is_separated,
    mid_graded_report,
    quotient_graph_check,
    quotient_interval,
)


def _rows(quotient):
    return [(c.length, c.mid, c.side) for c in quotient.cosets]


@pytest.mark.parametrize(
    ("system", "literal", "expected"),
    [
        ("a3", "3412", True),
        ("a4", "45312", True),
        ("a4", "52341", True),
        ("a5", "456123", False),
    ],
)
def test_is_separated(request, system, literal, expected):
    system = request.getfixturevalue(system)
    assert is_separated(system, system.parse_element(literal)) is expected


def test_quotient_45312(a4):
    w = a4.parse_element("45312")
    quotient = quotient_interval(a4, w)

    assert len(quotient) == 4
    assert len(quotient.arcs) == 4
    assert _rows(quotient) == [(8, 2, 6), (6, 1, 5), (6, 1, 5), (3, 0, 3)]
    assert quotient.top == 0
    assert quotient.bottom == 3
    assert str(quotient.cosets[quotient.top].v_min) == "21354"
    assert quotient.coset_of(a4.identity) == quotient.cosets[quotient.bottom]
    assert {str(x) for x in quotient.mins} == {"21354", "21345", "12354", "12345"}
    assert {str(x) for x in quotient.maxes} == {"45312", "43215", "15432", "14325"}


def test_quotient_52341(a4):
    w = a4.parse_element("52341")
    quotient = quotient_interval(a4, w)

    assert len(quotient) == 6
    assert len(quotient.arcs) == 9
    assert _rows(quotient) == [
        (7, 3, 4),
        (6, 2, 4),
        (6, 2, 4),
        (4, 1, 3),
        (4, 1, 3),
        (2, 0, 2),
    ]
    assert (quotient.bottom, quotient.top) in quotient.arcs


def test_quotient_order(a4):
    quotient = quotient_interval(a4, a4.parse_element("45312"))
    poset = quotient.poset()

    assert poset.minimum() == quotient.bottom
    assert poset.maximum() == quotient.top
    assert not quotient.leq[1][2]
    assert not quotient.leq[2][1]


@pytest.mark.parametrize(
    ("literal", "model"),
    [("45312", "21354"), ("52341", "14325")],
)
def test_quotient_graph_is_a_bruhat_graph(a4, literal, model):
    w = a4.parse_element(literal)
    interval = lower_interval(a4, w)
    quotient = quotient_interval(a4, w, interval)
    report = quotient_graph_check(a4, w, quotient, interval)

    assert report.holds
    assert report.forward_holds
    assert report.converse_holds
    assert report.isomorphic
    assert not report.counterexamples
    assert report.vertices == len(quotient)
    assert graph_isomorphism(quotient.graph(), lower_interval(a4, a4.parse_element(model)).graph)


def test_quotient_poset_matches_bottom_set(a4):
    w = a4.parse_element("45312")
    interval = lower_interval(a4, w)
    quotient = quotient_interval(a4, w, interval)

    assert poset_isomorphic(quotient.poset(), subposet(quotient.mins, interval))
    assert poset_isomorphic(quotient.poset(), subposet(quotient.maxes, interval))
    assert bottom_graph(quotient, interval).number_of_nodes() == 4


def test_quotient_graph_when_not_separated(a5):
    w = a5.parse_element("456123")
    report = quotient_graph_check(a5, w)

    assert not report.separated
    assert report.forward_holds
    assert report.holds == report.forward_holds


def test_direct_product_witness(a3, a4):
    report = direct_product_witness(a3, a3.parse_element("3412"))
    assert (report.interval_size, report.bottom_size, report.top_coset_size) == (14, 4, 4)
    assert report.is_witness

    report = direct_product_witness(a4, a4.parse_element("21354"))
    assert not report.is_witness


def test_mid_graded(a4):
    report = mid_graded_report(a4, a4.parse_element("45312"))

    assert report.is_graded
    assert sorted(report.rank_of.values()) == [0, 1, 1, 2]
