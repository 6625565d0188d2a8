import json

import numpy as np
import pytest

from cxqt import (
    ONE,
    ZERO,
    ExactMatrix,
    build_root_system,
    direct_sum,
    e_grade,
    q_bruteforce,
    q_closed_report,
    verify_multiplicativity,
)
from cxqt.roots import vdot


def test_e_grade_examples():
    assert e_grade(ExactMatrix.identity(3)) == 0
    assert e_grade(-ExactMatrix.identity(3)) == 3
    assert e_grade(ExactMatrix.diagonal((-ONE, -ONE, ONE))) == 2


def test_e_grade_of_ac_element(group_of):
    from cxqt import h3_generators

    a, _, c = h3_generators()
    assert e_grade(a * c) == 2


def test_q_values_small(group_of):
    assert q_bruteforce(build_root_system("A", 3)).q == 2
    assert q_bruteforce(build_root_system("B", 3)).q == 3
    report = q_bruteforce(build_root_system("H3"))
    assert report.q == 4 and report.num_classes == 10


def test_grade_zero_iff_det_nonzero(group_of):
    group = group_of("H3")
    for record in group.classes:
        m = group.matrix(record.rep_index)
        shifted = m + ExactMatrix.identity(m.n)
        assert (record.e_grade == 0) == (not shifted.det().is_zero())


def test_eigenvalue_multiplicity_budget(group_of):
    # -1 and +1 multiplicities plus paired complex eigenvalues fill the space
    group = group_of("F4")
    for record in group.classes:
        poly = record.charpoly
        minus = poly.root_multiplicity(-ONE)
        plus = poly.root_multiplicity(ONE)
        assert minus == record.e_grade
        rest = poly.degree - minus - plus
        assert rest >= 0 and rest % 2 == 0


def _restrict_to_span(matrix, basis):
    # exact change of coordinates onto span(basis): (B^T B)^-1 B^T M B
    b = ExactMatrix(tuple(zip(*basis)))
    bt = b.transpose()
    return (bt * b).inverse() * bt * matrix * b


def test_q_is_embedding_invariant(group_of):
    # A2 in 3 ambient dims against the same classes restricted to the
    # 2-dimensional root span: grades and Q must agree
    group = group_of("A", 2)
    basis = group.system.simple_roots
    grades_full = []
    grades_restricted = []
    for record in group.classes:
        m = group.matrix(record.rep_index)
        grades_full.append(record.e_grade)
        restricted = _restrict_to_span(m, basis)
        assert restricted.nrows == 2
        grades_restricted.append(e_grade(restricted))
    assert grades_full == grades_restricted
    q_full = sum(1 for g in grades_full if g == 0)
    assert q_full == q_bruteforce(group.system).q


def test_multiplicativity_quartet():
    a1 = build_root_system("A", 1)
    a2 = build_root_system("A", 2)
    b2 = build_root_system("B", 2)
    assert verify_multiplicativity(a1, a1)
    assert verify_multiplicativity(a2, a1)
    assert verify_multiplicativity(a2, b2)
    assert verify_multiplicativity(b2, b2)


def test_direct_sum_q_values():
    a2 = build_root_system("A", 2)
    b2 = build_root_system("B", 2)
    report = q_bruteforce(direct_sum(a2, b2))
    assert report.q == 4
    assert report.group_order == 48


def test_report_json_schema(group_of):
    report = q_bruteforce(build_root_system("A", 1))
    doc = json.loads(report.to_json())
    assert list(doc.keys()) == [
        "type",
        "rank",
        "group_order",
        "num_classes",
        "q",
        "method",
        "classes",
    ]
    assert doc["type"] == "A1"
    assert doc["method"] == "brute"
    assert list(doc["classes"][0].keys()) == [
        "size",
        "order",
        "det",
        "trace",
        "charpoly",
        "e_grade",
        "rep_word",
    ]
    assert doc["q"] == sum(1 for c in doc["classes"] if c["e_grade"] == 0)


def test_closed_report():
    report = q_closed_report(build_root_system("E8"))
    assert report.q == 30
    assert report.method == "closed"
    assert report.num_classes is None
    assert report.group_order == 696729600
    assert report.classes == []
    i2 = q_closed_report(build_root_system("I2", 9))
    assert i2.q == 5
    assert i2.group_order == 18
