import random

import pytest
from hypothesis import given, strategies as st

from conftest import F, forms, twists
from evencliff.clifford import (
    EVEN,
    FiberAlgebraClass,
    FourDimAlgebra,
    RANK_TO_CLASS,
    classify_fiber_algebra,
    cliff0,
    cliff_odd,
    cliff_shift,
    even_via_multivectors,
    literal_example_table,
    straightening_oracle,
    summand_degree,
    verify_associativity,
    verify_bimodule_tensor_at,
    verify_module_axioms,
)
from evencliff.exactalg import QQ, HomogeneousPoly
from evencliff.exactalg import linalg
from evencliff.quadform import SplitTwist, TwistedQuadraticForm, fiber_rank, random_form, random_point
from evencliff.conicgeom import sample_curve_points
from evencliff.quadform import discriminant


def diag(vals, field=QQ):
    c = lambda v: HomogeneousPoly.constant(field, 1, v)
    return TwistedQuadraticForm.from_upper(SplitTwist(0, (0, 0, 0), 0), [c(vals[0]), c(0), c(0), c(vals[1]), c(0), c(vals[2])])


def scalars(vec):
    return [c.constant_value() for c in vec]


ONE, F12, F13, F23 = range(4)


@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3).filter(any))
def test_diagonal_table(a):
    A = cliff0(diag(a))
    assert scalars(A.table[F12][F12]) == [-a[0] * a[1], 0, 0, 0]
    assert scalars(A.table[F12][F23]) == [0, 0, a[1], 0]
    assert scalars(A.table[F23][F12]) == [0, 0, -a[1], 0]
    assert scalars(A.commutator(F12, F23)) == [0, 0, 2 * a[1], 0]


def test_unit_form_table():
    A = cliff0(diag([1, 1, 1]))
    assert scalars(A.table[F12][F12]) == [-1, 0, 0, 0]
    assert scalars(A.table[F12][F13]) == [0, 0, 0, -1]


def test_summand_degrees():
    tw = SplitTwist(2, (0, 1, 1), -1)
    A = cliff0(random_form(tw, QQ, random.Random(0)))
    assert A.degrees == (0, -2, -2, -3)
    assert [summand_degree(S, tw, 1) for S in ((0,), (1,), (2,), (0, 1, 2))] == [0, -1, -1, -3]


def test_oracle_rank_one_relations():
    o = straightening_oracle([[1, 0, 0], [0, 0, 0], [0, 0, 0]], QQ)
    assert o.full[((0,), (0,))] == {(): 1}
    assert o.full[((1,), (1,))] == {}


def test_oracle_word_rewriting():
    o = straightening_oracle([[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ)
    assert o.full[((0, 1), (1, 2))] == {(0, 2): 1}


@given(forms(field=F), st.integers(0, 2**32 - 1))
def test_cliff0_matches_oracle_at_points(q, seed):
    rng = random.Random(seed)
    pt = random_point(F, q.nvars, rng)
    o = straightening_oracle(q.matrix_at(pt), F)
    assert cliff0(q).eval_table(pt) == o.even
    m = cliff_odd(q)
    ev = lambda t: [[[c.eval(pt) for c in cell] for cell in row] for row in t]
    assert ev(m.left) == o.left
    assert ev(m.right) == o.right
    assert ev(m.pairing) == o.pairing


@given(forms())
def test_contraction_agrees_with_chevalley_product(q):
    assert cliff0(q).table == even_via_multivectors(q).table


def test_odd_action_examples():
    m = cliff_odd(diag([2, 3, 5]))
    assert scalars(m.right[0][F12]) == [0, 2, 0, 0]  # g1 f12 = a1 g2
    assert scalars(m.left[F12][1]) == [3, 0, 0, 0]  # f12 g2 = a2 g1
    assert scalars(m.left[F12][2]) == [0, 0, 0, 1]  # f12 g3 = g123


@given(forms(base_dims=(1, 2)))
def test_structural_identities(q):
    A = cliff0(q)
    assert verify_associativity(A).passed
    assert A.unit_issues() == []
    assert A.degree_issues() == []
    assert A.commutator_unit_defects() == []


@given(forms(field=F, base_dims=(0, 1)))
def test_module_axioms(q):
    rep = verify_module_axioms(cliff0(q), cliff_odd(q))
    assert rep.passed, rep.findings[:3]


def test_literal_table_fails_associativity():
    rep = verify_associativity(literal_example_table((1, 1, 1), QQ))
    assert not rep.passed
    first = rep.findings[0]
    assert first["triple"] == ["f12", "f12", "f13"]
    assert (first["left"], first["right"]) == ("(-2)*f13", "(-1)*f13")


def test_square_zero_extension_is_associative():
    one = HomogeneousPoly.constant(QQ, 1, 1)
    zero = HomogeneousPoly.zero(QQ, 1)
    table = [[[zero] * 4 for _ in range(4)] for _ in range(4)]
    for s in range(4):
        table[0][s] = [one if r == s else zero for r in range(4)]
        table[s][0] = list(table[0][s])
    A = FourDimAlgebra(QQ, 1, ("1", "u", "v", "w"), (0, 0, 0, 0), table)
    assert verify_associativity(A).passed


def _transport(field, b, g):
    """Lambda^2 g on (f12, f13, f23), with the unit fixed."""
    w = [[1, 0, 0, 0]]
    for i, j in EVEN[1:]:
        row = [0]
        for k, l in EVEN[1:]:
            row.append(field.norm(g[k][i] * g[l][j] - g[l][i] * g[k][j]))
        w.append(row)
    return w


@given(st.integers(0, 2**32 - 1))
def test_functoriality_under_congruence(seed):
    rng = random.Random(seed)
    b = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            b[i][j] = b[j][i] = rng.randrange(10007)
    g = [[rng.randrange(10007) for _ in range(3)] for _ in range(3)]
    if linalg.det(F, g) == 0:
        return
    b2 = linalg.matmul(F, linalg.transpose(g), linalg.matmul(F, b, g))
    T = straightening_oracle(b, F).even
    T2 = straightening_oracle(b2, F).even
    W = _transport(F, b, g)

    def mul(x, y):
        return [F.norm(sum(x[s] * y[t] * T[s][t][r] for s in range(4) for t in range(4))) for r in range(4)]

    for s in range(4):
        for t in range(4):
            lhs = [F.norm(sum(T2[s][t][r] * W[r][k] for r in range(4))) for k in range(4)]
            assert lhs == mul(W[s], W[t])


@pytest.mark.parametrize("vals,cls", [((1, 1, 1), "Matrix2"), ((1, 1, 0), "QuiverPath"), ((1, 0, 0), "Exterior2")])
def test_classification_examples(vals, cls):
    assert classify_fiber_algebra(cliff0(diag(vals)), [1]).name == cls


@given(forms(field=F, base_dims=(2,)), st.integers(0, 2**32 - 1))
def test_classification_matches_rank(q, seed):
    rng = random.Random(seed)
    A = cliff0(q)
    pts = [random_point(F, 3, rng) for _ in range(5)]
    d = discriminant(q)
    if not d.is_zero() and d.degree > 0:
        pts += sample_curve_points(d, 5, seed=seed)
    for pt in pts:
        if all(v == 0 for row in q.matrix_at(pt) for v in row):
            continue
        assert classify_fiber_algebra(A, pt) is RANK_TO_CLASS[fiber_rank(q, pt)[0]]


@pytest.mark.parametrize("parity", [(1, 1), (1, 0), (0, 1)])
def test_bimodule_tensor_unit_form(parity):
    rep = verify_bimodule_tensor_at(diag([1, 1, 1]), [1], parity)
    assert rep.passed
    assert rep.constants["tensor_dimension"] == 4
    assert rep.constants["product_map_rank"] == 4


def test_bimodule_tensor_degenerate_point_reports_dimension():
    rep = verify_bimodule_tensor_at(diag([1, 1, 0]), [1], (1, 1))
    assert rep.verdict == "error"
    assert isinstance(rep.constants["tensor_dimension"], int)


@given(forms(field=F, base_dims=(1, 2)), st.integers(0, 2**32 - 1))
def test_bimodule_law_at_smooth_points(q, seed):
    rng = random.Random(seed)
    pt = random_point(F, q.nvars, rng)
    if linalg.det(F, q.matrix_at(pt)) == 0:
        return
    assert verify_bimodule_tensor_at(q, pt, (1, 1)).passed


@given(twists())
def test_shift(tw):
    A = cliff0(random_form(tw, QQ, random.Random(0)))
    two = cliff_shift(A, 2)
    assert two.degrees == tuple(d - tw.l for d in A.degrees)
    assert two.table == A.table
    assert cliff_shift(A, 0).degrees == A.degrees
    back = cliff_shift(two, -2)
    assert (back.degrees, back.index) == (A.degrees, A.index)
    m = cliff_odd(random_form(tw, QQ, random.Random(0)))
    assert cliff_shift(cliff_shift(m, 2), -2).degrees == m.degrees


def test_odd_shift_rejected():
    with pytest.raises(ValueError):
        cliff_shift(cliff0(diag([1, 1, 1])), 1)
