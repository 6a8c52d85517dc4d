import itertools

import pytest
from bruhat_lab.bruhat import (
    bruhat_leq,
    bruhat_leq_dot,
    degree,
    hasse_edges,
    interval_slice,
    lower_interval,
    subword_closure,
)
from bruhat_lab.errors import InvalidInputError, NotInIntervalError


def _names(elements):
    return {str(element) for element in elements}


def test_lower_interval_3412(a3):
    w = a3.parse_element("3412")
    interval = lower_interval(a3, w)

    assert len(interval) == 14
    assert [len(interval.levels[length]) for length in range(5)] == [1, 3, 5, 4, 1]
    assert _names(interval.levels[3]) == {"3214", "1432", "3142", "2413"}
    assert _names(a3.elements()) - _names(interval.members) == {
        "4321",
        "4312",
        "4231",
        "3421",
        "4213",
        "4132",
        "3241",
        "2431",
        "4123",
        "2341",
    }


def test_bruhat_graph_3412(a3):
    w = a3.parse_element("3412")
    interval = lower_interval(a3, w)

    assert degree(interval, w) == 4
    assert all(u.length < v.length for u, v in interval.edges)
    assert all(interval.graph.has_edge(u, v) for u, v in interval.edges)
    assert min(interval.degrees.values()) >= w.length

    coatoms = [u for u, v in hasse_edges(interval) if v == w]
    assert _names(coatoms) == {"3214", "1432", "3142", "2413"}
    assert all(v.length == u.length + 1 for u, v in hasse_edges(interval))


def test_lower_interval_identity(a3):
    interval = lower_interval(a3, a3.identity)

    assert interval.members == {a3.identity}
    assert not interval.edges
    assert degree(interval, a3.identity) == 0


def test_degree_outside_interval(a3):
    interval = lower_interval(a3, a3.parse_element("3412"))
    with pytest.raises(NotInIntervalError, match="is not in B"):
        degree(interval, a3.parse_element("4321"))


@pytest.mark.parametrize(
    ("u", "w", "expected"),
    [
        ("1324", "3412", True),
        ("2143", "3412", True),
        ("4123", "3412", False),
        ("2341", "3412", False),
        ("1234", "1234", True),
        ("3412", "1234", False),
        ("1234", "4321", True),
    ],
)
def test_bruhat_leq(a3, u, w, expected):
    u, w = a3.parse_element(u), a3.parse_element(w)
    assert bruhat_leq(a3, u, w) is expected
    assert bruhat_leq_dot(a3, u, w) is expected


def test_order_oracles_agree_on_s4(a3):
    for w in a3.elements():
        interval = lower_interval(a3, w)
        for u, v in itertools.product(interval.sorted_members, repeat=2):
            expected = bruhat_leq(a3, u, v)
            assert interval.leq(u, v) == expected
            assert bruhat_leq_dot(a3, u, v) == expected


def test_root_lattice_order_agrees_with_permutations(a3, a3_lattice):
    images = {w: a3_lattice.evaluate(a3.reduced_word(w)) for w in a3.elements()}
    for u, w in itertools.product(images, repeat=2):
        assert bruhat_leq(a3_lattice, images[u], images[w]) == bruhat_leq(a3, u, w)


def test_rank_matrix_needs_type_a(b3):
    with pytest.raises(InvalidInputError, match="needs a type A system"):
        bruhat_leq_dot(b3, b3.identity, b3.generator(1))


def test_interval_slice(a3):
    w = a3.parse_element("3412")
    interval = lower_interval(a3, w)
    found = interval_slice(a3, a3.parse_element("2143"), w, within=interval)

    assert _names(found.members) == {"2143", "3142", "2413", "3412"}
    assert _names(interval_slice(a3, a3.identity, w).members) == _names(interval.members)


def test_interval_slice_needs_order(a3):
    with pytest.raises(NotInIntervalError, match="is not below"):
        interval_slice(a3, a3.parse_element("4123"), a3.parse_element("3412"))


def test_subword_closure(a3):
    w = a3.parse_element("3412")
    assert subword_closure(a3, a3.reduced_word(w)) == set(lower_interval(a3, w).members)
    assert subword_closure(a3, []) == {a3.identity}


def test_root_lattice_interval(b3):
    longest = max(b3.elements())
    interval = lower_interval(b3, longest)

    assert len(interval) == 48
    assert degree(interval, longest) == 9
