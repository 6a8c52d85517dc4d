import pytest
from bruhat_lab import lab
from bruhat_lab.bruhat import lower_interval
from bruhat_lab.config import LabConfig
from bruhat_lab.cosets import mid_side
from bruhat_lab.quotient import quotient_interval


def _outcomes(report):
    return {clause.name: clause.outcome for clause in report.clauses}


def test_theorem1_on_s4(a3):
    reports = lab.run_verifier(lab.verify_theorem1, a3, a3.elements(), workers=2)

    assert len(reports) == 24
    assert [r.subject for r in reports][:2] == ["theorem1 1234", "theorem1 1243"]
    for report in reports:
        assert report.passed, report.clauses
        assert set(_outcomes(report).values()) == {"pass"}


def test_theorem1_clauses():
    assert lab.THEOREM1_CLAUSES == (
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


def test_every_clause_has_a_statement():
    names = {
        *lab.THEOREM1_CLAUSES,
        *lab.THEOREM2_CLAUSES,
        *lab.APPENDIX_CLAUSES,
        *lab.DEODHAR_CLAUSES,
        *lab.WITNESS_CLAUSES,
    }

    assert set(lab.CLAUSE_STATEMENTS) == names
    assert all(lab.CLAUSE_STATEMENTS.values())
    assert lab.CLAUSE_STATEMENTS["projection-monotone"] == (
        "u <= v implies P_up(u) <= P_up(v) and P_down(u) <= P_down(v)"
    )
    assert lab.CLAUSE_STATEMENTS["side-monotone-in-coset"] == (
        "side_w is weakly increasing inside one coset"
    )


@pytest.mark.parametrize(
    ("split", "failed"),
    [
        (None, set()),
        ((1, 3), {"mid-monotone"}),
        ((2, 0), {"side-monotone-in-coset"}),
    ],
)
def test_monotone_clauses(a3, split, failed):
    w = a3.parse_element("3412")
    interval = lower_interval(a3, w)
    quotient = quotient_interval(a3, w, interval)
    splits = {u: mid_side(a3, w, u) for u in interval.members}
    if split:
        splits[w] = split
    clauses = lab._Clauses(lab.THEOREM1_CLAUSES)

    lab._check_monotone(clauses, interval, quotient, splits)

    assert set(clauses.witnesses) == failed


@pytest.mark.parametrize("literal", ["45312", "52341"])
def test_theorem1_worked_examples(a4, literal):
    assert lab.verify_theorem1(a4, a4.parse_element(literal)).passed


@pytest.mark.parametrize(("system", "literal"), [("a3", "3412"), ("a4", "45312"), ("a4", "52341")])
def test_theorem2_separated(request, system, literal):
    system = request.getfixturevalue(system)
    report = lab.verify_theorem2(system, system.parse_element(literal))

    assert report.passed, report.clauses
    assert set(_outcomes(report).values()) == {"pass"}
    assert report.reason is None


def test_theorem2_skips_when_not_separated(a5):
    report = lab.verify_theorem2(a5, a5.parse_element("456123"))

    assert report.skipped
    assert report.passed
    assert report.reason.startswith("hypothesis 'separated' fails")
    assert list(_outcomes(report)) == list(lab.THEOREM2_CLAUSES)


def test_theorem2_over_s4(a3):
    for report in lab.run_verifier(lab.verify_theorem2, a3, a3.elements()):
        assert report.passed, (report.subject, report.clauses)


def test_appendix_on_s4(a3):
    report = lab.verify_appendix(a3, a3.elements(), workers=2)

    assert report.subject == "appendix over 24 elements"
    assert report.passed, report.clauses
    assert list(_outcomes(report)) == list(lab.APPENDIX_CLAUSES)


def test_appendix_root_lattice(b3):
    scope = lab.select_scope(b3, sample=6, seed=3)
    assert lab.verify_appendix(b3, scope).passed


def test_clause_recorder_keeps_first_witness():
    clauses = lab._Clauses(("a", "b"))
    clauses.check("a", holds=False, witness="first")
    clauses.check("a", holds=False, witness="second")
    clauses.check("b", holds=True, witness="unused")
    report = clauses.report("subject", 0.0)

    assert _outcomes(report) == {"a": "fail", "b": "pass"}
    assert report.clauses[0].witness == "first"
    assert not report.passed
    assert not report.skipped

    with pytest.raises(ValueError, match="unknown clause 'c'"):
        clauses.fail("c", "witness")


def test_report_dump_excludes_elapsed():
    report = lab.CheckReport(subject="x", elapsed=1.5)
    assert report.model_dump(by_alias=True) == {
        "subject": "x",
        "clauses": [],
        "reason": None,
        "observations": {},
    }


def test_poincare(a3):
    w = a3.parse_element("3412")
    polynomial = lab.poincare(a3, w)

    assert polynomial.coefficients == [1, 3, 5, 4, 1]
    assert str(polynomial) == "1 + 3q + 5q^2 + 4q^3 + q^4"
    assert polynomial.value_at_one == 14
    assert str(lab.Polynomial(coefficients=[])) == "0"

    full, bottom = lab.poincare_compare(a3, w)
    assert full == polynomial
    assert bottom.coefficients == [1, 2, 1]


def test_poincare_scan(a3):
    report = lab.poincare_scan(a3, [a3.parse_element("3412")])

    assert _outcomes(report) == {"poincare-compare": "observed"}
    assert report.observations["polynomials"] == [
        {
            "w": "3412",
            "p-down": "2143",
            "poincare": [1, 3, 5, 4, 1],
            "poincare-p-down": [1, 2, 1],
        },
    ]


def test_deodhar_scan(a3):
    report = lab.deodhar_scan(a3, a3.elements(), workers=3)

    assert report.passed, report.clauses
    assert list(_outcomes(report)) == list(lab.DEODHAR_CLAUSES)
    assert report.observations["min-slack"] == 0


def test_degree_monotone_scan(a3):
    report = lab.degree_monotone_scan(a3, [a3.parse_element("3412")])

    assert report.passed
    assert _outcomes(report) == {"degree-monotone": "observed"}
    witnesses = report.observations["witnesses"]
    assert report.clauses[0].witness == (witnesses[0] if witnesses else None)


def test_remark_witness_hunt(a3):
    report = lab.remark_witness_hunt(a3, a3.elements())

    assert report.passed
    assert list(_outcomes(report)) == list(lab.WITNESS_CLAUSES)
    assert set(_outcomes(report).values()) == {"observed"}
    witnesses = {clause.name: clause.witness for clause in report.clauses}
    assert witnesses["non-graded-double-quotient"] is not None
    assert witnesses["non-direct-product"] is not None


def test_witness_hunt_looks_between_scope_elements(a3):
    report = lab.remark_witness_hunt(a3, [a3.identity, a3.parse_element("3412")])
    witnesses = {clause.name: clause.witness for clause in report.clauses}

    assert witnesses["non-graded-double-quotient"] is None
    assert witnesses["non-direct-product"] == (
        "|B(3412)| = 14 but |B_down| * |top coset| = 4 * 4"
    )

    report = lab.remark_witness_hunt(a3, [a3.identity, a3.parse_element("3124")])
    witness = report.clauses[lab.WITNESS_CLAUSES.index("non-graded-double-quotient")].witness
    assert witness.startswith("1234 < 3124 covers in the double quotient")


def test_bottom_coset_scan(a3):
    assert lab.bottom_coset_scan(a3, a3.elements()).passed


def test_select_scope_literals(a3):
    scope = lab.select_scope(a3, literals=["3412", "2 1"])
    assert [str(w) for w in scope] == ["3412", "3124"]


def test_select_scope_small_group_is_exhaustive(a3):
    assert lab.select_scope(a3) == a3.elements()


def test_select_scope_samples_large_groups(a4):
    scope = lab.select_scope(a4)

    assert len(scope) == 50
    assert len(set(scope)) == 50
    assert scope == sorted(scope)
    assert scope == lab.select_scope(a4, seed=0)
    assert lab.select_scope(a4, exhaustive=True) == a4.elements()


def test_select_scope_sample_and_seed(a3, a4):
    first = lab.select_scope(a4, sample=5, seed=1)

    assert len(first) == 5
    assert first == lab.select_scope(a4, sample=5, seed=1)
    assert len(lab.select_scope(a3, sample=100)) == 24
    assert len(lab.select_scope(a4, lab_config=LabConfig(sample_size=10))) == 10


def test_theorems_on_s5_sample(a4):
    scope = lab.select_scope(a4)

    for verifier in (lab.verify_theorem1, lab.verify_theorem2):
        for report in lab.run_verifier(verifier, a4, scope, workers=4):
            assert report.passed, (report.subject, report.clauses)
    assert lab.deodhar_scan(a4, scope, workers=4).passed
