import pytest
from bruhat_lab.bruhat import lower_interval
from bruhat_lab.cosets import (
    coset,
    critical_set,
    greedy_project_up,
    left_cosets,
    mid_side,
    min_set,
    partition,
    project_down,
    project_up,
    same_coset,
)
from bruhat_lab.errors import NotInIntervalError


def _names(elements):
    return {str(element) for element in elements}


def test_partition_3412(a3):
    w = a3.parse_element("3412")
    rows = [
        (
            [str(m) for m in found.sorted_members],
            str(found.v_max),
            found.length,
            str(found.v_min),
            found.mid,
            found.side,
        )
        for found in partition(a3, w)
    ]

    assert rows == [
        (["3412", "3142", "2413", "2143"], "3412", 4, "2143", 2, 2),
        (["3214", "3124", "2314", "2134"], "3214", 3, "2134", 1, 2),
        (["1432", "1423", "1342", "1243"], "1432", 3, "1243", 1, 2),
        (["1324", "1234"], "1324", 1, "1234", 0, 1),
    ]


def test_partition_covers_interval(a4):
    for literal in ("45312", "52341", "34512"):
        w = a4.parse_element(literal)
        interval = lower_interval(a4, w)
        cosets = partition(a4, w, interval)

        assert sum(len(found) for found in cosets) == len(interval)
        assert frozenset().union(*(found.members for found in cosets)) == interval.members


@pytest.mark.parametrize(("literal", "count"), [("45312", 4), ("52341", 6)])
def test_partition_sizes(a4, literal, count):
    assert len(partition(a4, a4.parse_element(literal))) == count


def test_coset(a3):
    w = a3.parse_element("3412")

    assert _names(coset(a3, w, a3.parse_element("2143")).members) == {
        "3412",
        "3142",
        "2413",
        "2143",
    }
    bottom = coset(a3, w, a3.identity)
    assert _names(bottom.members) == {"1234", "1324"}
    assert str(bottom) == "1324/1234"
    assert bottom.degree == 1


def test_coset_outside_interval(a3):
    with pytest.raises(NotInIntervalError, match="is not below 3412"):
        coset(a3, a3.parse_element("3412"), a3.parse_element("4123"))


@pytest.mark.parametrize(
    ("w", "u", "down", "up"),
    [
        ("3412", "3214", "2134", "3214"),
        ("3412", "2143", "2143", "3412"),
        ("3412", "1234", "1234", "1324"),
        ("3412", "3142", "2143", "3412"),
    ],
)
def test_projections(a3, w, u, down, up):
    w, u = a3.parse_element(w), a3.parse_element(u)
    assert str(project_down(a3, w, u)) == down
    assert str(project_up(a3, w, u)) == up


def test_project_down_45312(a4):
    w = a4.parse_element("45312")
    assert str(project_down(a4, w, w)) == "21354"


def test_greedy_projection_matches_enumeration(a3):
    for w in a3.elements():
        for u in lower_interval(a3, w).members:
            assert greedy_project_up(a3, w, u) == project_up(a3, w, u)


def test_same_coset(a3):
    w = a3.parse_element("3412")
    assert same_coset(a3, w, a3.parse_element("2143"), a3.parse_element("3142"))
    assert not same_coset(a3, w, a3.parse_element("2143"), a3.parse_element("2134"))


def test_critical_and_min_sets(a3, a4):
    w = a3.parse_element("3412")
    assert _names(critical_set(a3, w)) == {"3412", "3214", "1432", "1324"}
    assert _names(min_set(a3, w)) == {"2143", "2134", "1243", "1234"}

    w = a4.parse_element("45312")
    assert _names(critical_set(a4, w)) == {"45312", "43215", "15432", "14325"}
    assert _names(min_set(a4, w)) == {"21354", "21345", "12354", "12345"}


@pytest.mark.parametrize(
    ("u", "expected"),
    [("3412", (2, 2)), ("1324", (0, 1)), ("3142", (2, 1)), ("2134", (1, 0))],
)
def test_mid_side(a3, u, expected):
    assert mid_side(a3, a3.parse_element("3412"), a3.parse_element(u)) == expected


def test_left_cosets(a3):
    w = a3.parse_element("3412")
    found = left_cosets(a3, w)

    assert len(found) == 7
    assert all(len(members) == 2 for members in found)
    assert _names(found[0]) == {"1234", "1324"}
