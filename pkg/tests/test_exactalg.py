import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import FIELDS, F, polys
from evencliff.exactalg import (
    GF,
    QQ,
    HomogeneousPoly,
    PolyError,
    PolyMatrix,
    det3,
    divides,
    parse_field,
    parse_poly,
    poly_gcd,
    random_poly,
    rank_at,
    squarefree_check,
)
from evencliff.exactalg import linalg, univariate

X = sympy.symbols("x0:4")


def to_sympy(f: HomogeneousPoly):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c)
        * sympy.prod(X[i] ** k for i, k in enumerate(e))
        for e, c in f.terms.items()
    ) if f.terms else sympy.Integer(0)


def P(text, field=QQ, nvars=3):
    return parse_poly(text, field, nvars)


# fields


def test_prime_field_rejects_two_and_composites():
    for p in (2, 9, 1):
        with pytest.raises(ValueError):
            GF(p)


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.inv(10007)


@given(FIELDS, st.integers(-10**6, 10**6).filter(bool))
def test_inverse(field, x):
    assert field.norm(field.inv(x) * x) == field.one


def test_parse_field():
    assert parse_field("Q") == QQ
    assert parse_field("Fp:31") == GF(31)
    with pytest.raises(ValueError):
        parse_field("Fp:33")


# polynomials


def test_eval_examples():
    assert P("x0^2 + x1^2", nvars=2).eval([1, 2]) == 5
    assert HomogeneousPoly.zero(QQ, 3).eval([4, 5, 6]) == 0
    assert P("x0*x1", GF(7), 2).eval([3, 4]) == 5


def test_eval_dimension_mismatch():
    with pytest.raises(PolyError):
        P("x0*x1", nvars=2).eval([1, 2, 3])


def test_nonhomogeneous_input_names_monomial():
    with pytest.raises(PolyError, match="x1"):
        P("x0^2 + x1")


def test_unequal_degree_addition_raises():
    with pytest.raises(PolyError):
        P("x0") + P("x1^2")


def test_zero_polynomial_has_no_degree():
    z = P("x0 - x0")
    assert z.is_zero() and z.degree is None
    assert z + P("x1^3") == P("x1^3")


def test_rational_literals():
    assert P("1/2*x0 + x1", nvars=2).terms[(1, 0)] == Fraction(1, 2)


def test_canonical_text_is_grlex():
    assert str(P("- x1*x2 + 3*x0^2")) == "3*x0^2 - x1*x2"


@given(FIELDS, st.data())
def test_text_roundtrip(field, data):
    f = data.draw(polys(field, 3, data.draw(st.integers(0, 4))))
    assert parse_poly(str(f), field, 3) == f


@given(st.data())
def test_ring_axioms(data):
    f, g, h = (data.draw(polys(F, 3, d)) for d in (2, 1, 1))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(FIELDS, st.data())
def test_eval_is_a_ring_homomorphism(field, data):
    f = data.draw(polys(field, 3, 2))
    g = data.draw(polys(field, 3, 3))
    pt = data.draw(st.lists(st.integers(-50, 50), min_size=3, max_size=3))
    assert (f * g).eval(pt) == field.norm(f.eval(pt) * g.eval(pt))


@given(st.data())
def test_euler_relation(data):
    d = data.draw(st.integers(1, 4))
    f = data.draw(polys(QQ, 3, d))
    euler = HomogeneousPoly.zero(QQ, 3)
    for i in range(3):
        euler = euler + HomogeneousPoly.variable(QQ, 3, i) * f.diff(i)
    assert euler == f.scale(d)


@given(st.data())
def test_multiplication_matches_sympy(data):
    f = data.draw(polys(QQ, 3, 2))
    g = data.draw(polys(QQ, 3, 2))
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


# determinants and ranks


def test_det3_examples():
    x = [HomogeneousPoly.variable(QQ, 3, i) for i in range(3)]
    z = HomogeneousPoly.zero(QQ, 3)
    assert det3(PolyMatrix([[x[0], z, z], [z, x[1], z], [z, z, x[2]]])) == P("x0*x1*x2")
    one = HomogeneousPoly.constant(QQ, 3, 1)
    assert det3(PolyMatrix([[one if i == j else z for j in range(3)] for i in range(3)])) == one


def test_det3_rejects_inconsistent_degrees():
    m = PolyMatrix([[P("x0"), P("x1"), P("0")], [P("x1^2"), P("x0"), P("0")], [P("0"), P("0"), P("x2")]])
    with pytest.raises(PolyError):
        det3(m)


@given(st.integers(0, 2**32 - 1))
def test_det3_matches_permutation_sum_oracle(seed):
    rng = random.Random(seed)
    f7 = GF(7)
    m = PolyMatrix([[random_poly(f7, 3, 1, rng) for _ in range(3)] for _ in range(3)])
    zero = HomogeneousPoly.zero(f7, 3)
    assert det3(m) == linalg.det_leibniz(m.entries, HomogeneousPoly.constant(f7, 3, 1), zero)


@given(st.integers(0, 2**32 - 1))
def test_det3_commutes_with_evaluation(seed):
    rng = random.Random(seed)
    m = PolyMatrix([[random_poly(F, 3, 1, rng, 0.7) for _ in range(3)] for _ in range(3)])
    pt = [rng.randrange(10007) for _ in range(3)]
    assert det3(m).eval(pt) == linalg.det(F, m.eval(pt))


def test_rank_at_examples():
    x = [HomogeneousPoly.variable(QQ, 3, i) for i in range(3)]
    z = HomogeneousPoly.zero(QQ, 3)
    one = HomogeneousPoly.constant(QQ, 3, 1)
    diag = lambda d: PolyMatrix([[d[i] if i == j else z for j in range(3)] for i in range(3)])
    assert rank_at(diag([one] * 3), [2, 3, 5]) == 3
    assert rank_at(diag([x[0]] * 3), [0, 1, 1]) == 0
    assert rank_at(diag([x[0], x[1], z]), [1, 1, 1]) == 2


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_and_nullspace_against_sympy(rows):
    assert linalg.rank(QQ, rows) == sympy.Matrix(rows).rank()
    for v in linalg.nullspace(QQ, rows):
        assert all(sum(r[i] * v[i] for i in range(4)) == 0 for r in rows)
    assert len(linalg.nullspace(QQ, rows)) == 4 - linalg.rank(QQ, rows)


# gcd and squarefreeness


def test_squarefree_examples():
    assert squarefree_check(P("x0*x1", nvars=2))
    assert not squarefree_check(P("x0^2", nvars=2))
    f = P("(x0+x1)^2*(x0-x1)", nvars=2)
    assert not squarefree_check(f)
    # multiplicity two by explicit division
    q = divides(P("x0+x1", nvars=2), f)
    assert q is not None and divides(P("x0+x1", nvars=2), q) is not None


def test_squarefree_zero_raises():
    with pytest.raises(PolyError):
        squarefree_check(HomogeneousPoly.zero(QQ, 2))


@given(st.data())
def test_gcd_matches_sympy(data):
    common = data.draw(polys(QQ, 3, data.draw(st.integers(0, 2))))
    f = data.draw(polys(QQ, 3, 2)) * common
    g = data.draw(polys(QQ, 3, 1)) * common
    if f.is_zero() or g.is_zero():
        return
    ours = to_sympy(poly_gcd(f, g))
    theirs = sympy.gcd(to_sympy(f), to_sympy(g))
    assert sympy.simplify(ours / theirs).is_number


@given(st.data())
def test_gcd_divides_both(data):
    f = data.draw(polys(F, 3, 3))
    g = data.draw(polys(F, 3, 2))
    if f.is_zero() or g.is_zero():
        return
    d = poly_gcd(f, g)
    assert divides(d, f) * d == f
    assert divides(d, g) * d == g


@given(st.data())
def test_squarefree_matches_sympy(data):
    f = data.draw(polys(QQ, 3, 1))
    g = data.draw(polys(QQ, 3, 2))
    h = f * f * g if data.draw(st.booleans()) else f * g
    if h.is_zero():
        return
    sym = sympy.Poly(to_sympy(h), *X[:3])
    assert squarefree_check(h) == all(k == 1 for _, k in sympy.factor_list(sym)[1])


def test_divides_returns_quotient():
    f = P("x0^2 - x1^2", nvars=2)
    assert divides(P("x0 - x1", nvars=2), f) == P("x0 + x1", nvars=2)
    assert divides(P("x0 + 2*x1", nvars=2), f) is None


# univariate roots over F_p


@given(st.sampled_from([3, 5, 13, 31]), st.lists(st.integers(0, 30), min_size=2, max_size=6))
def test_roots_match_brute_force(p, coeffs):
    a = univariate.trim([c % p for c in coeffs])
    if not a:
        return
    brute = [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(a)) % p == 0]
    assert univariate.roots(a, p) == brute
