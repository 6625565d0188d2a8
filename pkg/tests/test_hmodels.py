import random
from fractions import Fraction

import pytest

from cxqt import (
    GOLDEN,
    ONE,
    ZERO,
    ExactMatrix,
    Quaternion,
    Scalar,
    build_root_system,
    e_grade,
    h3_charpoly_table,
    h3_generators,
    h4_no_minus_one_criterion,
    icosian_units,
    lift_rotation,
    lx_plus_xr_matrix,
    map_lr,
    map_star,
    observed_general_det,
    random_unit_quaternions,
    reflection_matrix,
    star_minus_one_witness,
    verify_det_identity,
)
from cxqt.hmodels import BASIS, Q_I, Q_J, Q_K, Q_ONE

HALF = Scalar(Fraction(1, 2))


def test_printed_matrices():
    a, b, c = h3_generators()
    assert a == ExactMatrix.diagonal((ONE, -ONE, ONE))
    assert c == ExactMatrix.diagonal((-ONE, ONE, ONE))
    k = GOLDEN
    expected_b = ExactMatrix(
        (
            (HALF, k * HALF, (k - ONE) * HALF),
            (k * HALF, (ONE - k) * HALF, -HALF),
            ((k - ONE) * HALF, -HALF, k * HALF),
        )
    )
    assert b == expected_b


def test_relations():
    a, b, c = h3_generators()
    ident = ExactMatrix.identity(3)
    assert a * a == ident and b * b == ident and c * c == ident
    assert (a * b) ** 5 == ident
    assert (b * c) ** 3 == ident
    assert (a * c) ** 2 == ident


def test_b_is_the_reflection_in_its_root():
    h3 = build_root_system("H3")
    k = GOLDEN
    root = (-HALF, k * HALF, (k - ONE) * HALF)
    _, b, _ = h3_generators()
    assert reflection_matrix(h3, root) == b


def test_charpoly_table_matches():
    rows = h3_charpoly_table()
    assert [w for w, _, _ in rows] == ["", "ac", "bc", "ab", "abab"]
    for _, computed, expected in rows:
        assert computed == expected
        assert computed.evaluate(ONE).is_zero()


def test_table_reps_cover_positive_classes(group_of):
    group = group_of("H3")
    a, b, c = h3_generators()
    reps = {
        "1": ExactMatrix.identity(3),
        "ac": a * c,
        "bc": b * c,
        "ab": a * b,
        "abab": a * b * a * b,
    }
    class_ids = set()
    for mat in reps.values():
        idx = group.index_of_matrix(mat)
        class_ids.add(int(group.class_id[idx]))
    assert len(class_ids) == 5
    positive = {
        i for i, cl in enumerate(group.classes) if cl.det == ONE
    }
    assert class_ids == positive
    # the ac class is the positive-determinant class that still has -1
    ac_idx = group.index_of_matrix(reps["ac"])
    assert group.classes[int(group.class_id[ac_idx])].e_grade == 2


def test_negative_det_classes_have_minus_one(group_of):
    group = group_of("H3")
    minus = [cl for cl in group.classes if cl.det == -ONE]
    assert len(minus) == 5
    assert all(cl.e_grade >= 1 for cl in minus)


def test_hamilton_relations():
    assert Q_I * Q_J == Q_K
    assert Q_J * Q_K == Q_I
    assert Q_K * Q_I == Q_J
    minus_one = -Q_ONE
    assert Q_I * Q_I == minus_one
    q = Quaternion(ONE, ONE, ZERO, ZERO)
    prod = q * q.conj()
    assert prod == Quaternion(Scalar(2), ZERO, ZERO, ZERO)


def test_conjugation_is_an_antiautomorphism():
    rng = random.Random(6)
    def rand_quat():
        return Quaternion(
            *(Scalar(rng.randint(-5, 5), rng.randint(-2, 2)) for _ in range(4))
        )
    for _ in range(40):
        p, q = rand_quat(), rand_quat()
        assert (p * q).conj() == q.conj() * p.conj()


def test_map_lr_basics():
    assert map_lr(Q_ONE, Q_ONE) == ExactMatrix.identity(4)
    q = icosian_units()[7]
    m = map_lr(q, q)
    assert m.apply(Q_ONE.to_vector()) == Q_ONE.to_vector()
    mi = map_lr(Q_I, Q_ONE)
    assert mi.is_orthogonal() and mi.det() == ONE
    with pytest.raises(ValueError):
        map_lr(Quaternion(ONE, ONE, ZERO, ZERO), Q_ONE)


def test_map_star_basics():
    assert map_star(Q_ONE) == ExactMatrix.diagonal((ONE, -ONE, -ONE, -ONE))
    for p in random_unit_quaternions(30, seed=8):
        m = map_star(p)
        assert m.is_orthogonal()
        assert m.det() == -ONE
        witness = star_minus_one_witness(p)
        assert any(not x.is_zero() for x in witness)
        assert m.apply(witness) == tuple(-x for x in witness)
        assert e_grade(m) >= 1


def test_det_identity_analytic_cases():
    m = lx_plus_xr_matrix(Q_ONE, Q_ONE)
    assert m.det() == Scalar(16)
    m0 = lx_plus_xr_matrix(Q_I, Q_I)
    assert m0.det() == ZERO
    zero4 = (ZERO, ZERO, ZERO, ZERO)
    assert m0.apply(Q_J.to_vector()) == zero4


def test_det_identity_random_unit_pairs():
    qs = random_unit_quaternions(200, seed=9)
    for l, r in zip(qs[:100], qs[100:]):
        assert verify_det_identity(l, r)


def test_observed_general_formula():
    # observation outside the unit case: derived, not a printed claim
    rng = random.Random(10)
    def rand_quat():
        return Quaternion(
            *(Scalar(rng.randint(-4, 4), rng.randint(-1, 1)) for _ in range(4))
        )
    for _ in range(60):
        l, r = rand_quat(), rand_quat()
        assert lx_plus_xr_matrix(l, r).det() == observed_general_det(l, r)


def test_criterion_basics():
    assert h4_no_minus_one_criterion(Q_ONE, Q_ONE)
    minus_one = -Q_ONE
    assert not h4_no_minus_one_criterion(Q_ONE, minus_one)
    m = map_lr(Q_ONE, minus_one)
    assert m == -ExactMatrix.identity(4)
    assert e_grade(m) == 4


def test_unit_sampler_is_exact():
    for q in random_unit_quaternions(64, seed=12):
        assert q.is_unit()


def test_icosians_form_the_root_set():
    units = icosian_units()
    assert len(units) == 120
    assert all(q.is_unit() for q in units)
    # closed under multiplication
    rng = random.Random(13)
    pool = set(units)
    for _ in range(100):
        a, b = rng.choice(units), rng.choice(units)
        assert a * b in pool


def test_rotation_lift_on_all_classes(group_of):
    group = group_of("H4")
    units = icosian_units()
    import numpy as np

    rng = np.random.default_rng(14)
    rotation_classes = 0
    for idx, record in enumerate(group.classes):
        mat = group.matrix(record.rep_index)
        if mat.det() != ONE:
            assert record.e_grade >= 1
            continue
        rotation_classes += 1
        members = group.class_members(idx)
        sample = [record.rep_index] + [
            int(i) for i in rng.choice(members, size=min(3, len(members)), replace=False)
        ]
        for i in sample:
            m = group.matrix(int(i))
            l, r = lift_rotation(m, units)
            assert map_lr(l, r) == m
            assert h4_no_minus_one_criterion(l, r) == (record.e_grade == 0)
    assert rotation_classes > 0


def test_h4_group_counts(group_of):
    group = group_of("H4")
    assert group.order == 14400
    assert len(group.classes) == 34
    assert sum(1 for cl in group.classes if cl.e_grade == 0) == 20
