import random

import pytest
from hypothesis import given, strategies as st

from conftest import F, forms
from evencliff.clifford import NotPointwiseClifford, cliff0
from evencliff.exactalg import QQ, HomogeneousPoly, det3
from evencliff.exactalg import linalg
from evencliff.io import algebra_from_dict, algebra_to_dict
from evencliff.quadform import SplitTwist, TwistedQuadraticForm, normalized_twist, random_form, random_point
from evencliff.reconstruct import (
    DET_LAW,
    REVERSAL,
    AlgebraWithSplitting,
    VanishingReconstruction,
    commutator_map,
    is_pointwise_clifford,
    reconstruct_form,
    roundtrip_check,
    split_commutative_algebra,
)


def diag(vals, field=QQ):
    c = lambda v: HomogeneousPoly.constant(field, 1, v)
    return TwistedQuadraticForm.from_upper(SplitTwist(0, (0, 0, 0), 0), [c(vals[0]), c(0), c(0), c(vals[1]), c(0), c(vals[2])])


def scalar_rows(rows):
    return [[c.constant_value() for c in row] for row in rows]


nonzero_triples = st.lists(st.integers(-30, 30), min_size=3, max_size=3).filter(any)


@given(nonzero_triples)
def test_commutator_map_diagonal(a):
    cm = commutator_map(cliff0(diag(a)))
    assert scalar_rows(cm.coeffs) == [[0, 0, -2 * a[0]], [0, 2 * a[1], 0], [-2 * a[2], 0, 0]]


@given(nonzero_triples)
def test_reconstruct_diagonal(a):
    qR = reconstruct_form(cliff0(diag(a)))
    m = scalar_rows(qR.M.entries)
    assert m == [[-2 * a[2], 0, 0], [0, -2 * a[1], 0], [0, 0, -2 * a[0]]]


def test_rank_two_form():
    cm = commutator_map(cliff0(diag([3, 5, 0])))
    assert linalg.rank(QQ, cm.matrix_at([1])) == 2
    qR = reconstruct_form(cliff0(diag([3, 5, 0])))
    assert linalg.rank(QQ, qR.matrix_at([1])) == 2


def test_commutative_algebra_has_zero_map():
    R = split_commutative_algebra(QQ)
    assert commutator_map(R).is_zero()
    with pytest.raises(VanishingReconstruction):
        reconstruct_form(R)


def test_square_zero_algebra_vanishes():
    one = HomogeneousPoly.constant(QQ, 1, 1)
    zero = HomogeneousPoly.zero(QQ, 1)
    table = [[[zero] * 4 for _ in range(4)] for _ in range(4)]
    for s in range(4):
        table[0][s] = [one if r == s else zero for r in range(4)]
        table[s][0] = list(table[0][s])
    for s in range(1, 4):
        for t in range(1, 4):
            table[s][t] = [one if s == t else zero, zero, zero, zero]
    with pytest.raises(VanishingReconstruction, match="vanishing reconstructed form"):
        reconstruct_form(AlgebraWithSplitting(QQ, 1, (0, 0, 0, 0), table))


def test_unit_component_in_commutator_is_rejected():
    A = cliff0(diag([1, 2, 3]))
    table = [[list(c) for c in row] for row in A.table]
    table[1][2][0] = table[1][2][0] + HomogeneousPoly.constant(QQ, 1, 1)
    with pytest.raises(NotPointwiseClifford, match="candidate"):
        commutator_map(AlgebraWithSplitting(QQ, 1, A.degrees, table))


@given(forms())
def test_roundtrip(q):
    rep = roundtrip_check(q)
    assert rep.passed, rep.findings
    assert rep.constants["c"] == -2 and rep.constants["det_law"] == -8


@given(forms())
def test_det_law(q):
    assert det3(reconstruct_form(cliff0(q)).M) == det3(q.M).scale(DET_LAW)


@given(forms(field=F), st.integers(0, 2**32 - 1))
def test_rank_preserved_pointwise(q, seed):
    rng = random.Random(seed)
    qR = reconstruct_form(cliff0(q))
    for _ in range(5):
        pt = random_point(F, q.nvars, rng)
        assert linalg.rank(F, qR.matrix_at(pt)) == linalg.rank(F, q.matrix_at(pt))


@given(forms())
def test_reconstructed_twist_is_reversed_normalized_twist(q):
    n = normalized_twist(q).twist
    t = reconstruct_form(cliff0(q)).twist
    assert t.a == n.a[::-1] and t.l == n.l and t.is_normalized


def test_already_normalized_form_keeps_its_twist():
    tw = SplitTwist(2, (1, 1, 0), 2)
    q = random_form(tw, QQ, random.Random(3))
    assert tw.is_normalized
    t = reconstruct_form(cliff0(q)).twist
    assert (sorted(t.a), t.l) == (sorted(tw.a), tw.l)
    assert roundtrip_check(q).passed


def test_reversal_is_unimodular():
    assert linalg.det(QQ, [list(r) for r in REVERSAL]) == 1


def test_pointwise_clifford_accepts_cliff0():
    q = random_form(SplitTwist(2, (1, 0, 0), -1), F, random.Random(0))
    assert is_pointwise_clifford(cliff0(q)).passed


def test_pointwise_clifford_rejects_commutative():
    rep = is_pointwise_clifford(split_commutative_algebra(QQ))
    assert not rep.passed and rep.findings[0]["kind"] == "zero_commutators"


def test_pointwise_clifford_reports_defect_matrix():
    A = cliff0(diag([1, 2, 3]))
    table = [[list(c) for c in row] for row in A.table]
    table[1][2][1] = table[1][2][1] + HomogeneousPoly.constant(QQ, 1, 1)
    rep = is_pointwise_clifford(AlgebraWithSplitting(QQ, 1, A.degrees, table))
    assert rep.findings[0]["kind"] == "asymmetric_commutator"
    defect = rep.findings[0]["defect_matrix"]
    assert defect[2][0] == "1" and defect[0][2] == "-1"


@given(forms())
def test_algebra_dump_roundtrip(q):
    A = cliff0(q)
    B = algebra_from_dict(algebra_to_dict(A))
    assert B.table == A.table and B.degrees == A.degrees
    assert reconstruct_form(B).M == reconstruct_form(A).M
