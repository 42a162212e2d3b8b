"""Even Clifford algebras and odd Clifford bimodules with polynomial structure constants.

Conventions
-----------
b(e_i, e_j) = M(i, j). The even algebra Cliff_0 = O + (wedge^2 E (x) L) has basis
``1, f12, f13, f23`` where f_ij is the wedge e_i ^ e_j = e_i e_j - b(e_i, e_j) inside
the classical Clifford algebra with e_i e_j + e_j e_i = 2 b(e_i, e_j). The odd part
Cliff_1 = E + (wedge^3 E (x) L) has basis ``g1, g2, g3, g123``.

A structure constant C[s][t][r] (coefficient of basis r in e_s * e_t) is a map of
line bundles O(d_s) (x) O(d_t) -> O(d_r), i.e. a polynomial of degree d_r - d_s - d_t.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Sequence

from .exactalg import linalg
from .exactalg.fields import Field
from .exactalg.poly import HomogeneousPoly
from .quadform import SplitTwist, TwistedQuadraticForm, fiber_rank, require_valid
from .report import Report

EVEN = ((), (0, 1), (0, 2), (1, 2))
ODD = ((0,), (1,), (2,), (0, 1, 2))
EVEN_LABELS = ("1", "f12", "f13", "f23")
ODD_LABELS = ("g1", "g2", "g3", "g123")
PAIRS = ((0, 1), (0, 2), (1, 2))


class NotPointwiseClifford(ValueError):
    pass


class FiberAlgebraClass(enum.Enum):
    Matrix2 = 0
    QuiverPath = 2
    Exterior2 = 3


RANK_TO_CLASS = {3: FiberAlgebraClass.Matrix2, 2: FiberAlgebraClass.QuiverPath, 1: FiberAlgebraClass.Exterior2}


def _zero(field, nvars):
    return HomogeneousPoly.zero(field, nvars)


def summand_degree(subset: Sequence[int], twist: SplitTwist, index: int) -> int:
    """Degree of the line bundle spanned by the wedge e_S inside Cliff_index."""
    g = len(subset)
    return -sum(twist.a[i] for i in subset) + (g - index) // 2 * twist.l


# generic 4-dimensional algebra ---------------------------------------------


class FourDimAlgebra:
    """Rank-4 algebra O + R0 with polynomial structure constants; basis 0 is the unit."""

    def __init__(self, field: Field, nvars: int, labels, degrees, table):
        self.field = field
        self.nvars = nvars
        self.labels = tuple(labels)
        self.degrees = tuple(degrees)
        self.table = tuple(tuple(tuple(c) for c in row) for row in table)

    def basis_vector(self, s):
        one = HomogeneousPoly.constant(self.field, self.nvars, 1)
        return [one if r == s else _zero(self.field, self.nvars) for r in range(4)]

    def product(self, u, v):
        out = [_zero(self.field, self.nvars) for _ in range(4)]
        for s in range(4):
            if u[s].is_zero():
                continue
            for t in range(4):
                if v[t].is_zero():
                    continue
                uv = u[s] * v[t]
                for r, c in enumerate(self.table[s][t]):
                    if not c.is_zero():
                        out[r] = out[r] + uv * c
        return out

    def eval_table(self, point):
        return [[[c.eval(point) for c in self.table[s][t]] for t in range(4)] for s in range(4)]

    def degree_issues(self):
        issues = []
        for s in range(4):
            for t in range(4):
                for r, c in enumerate(self.table[s][t]):
                    want = self.degrees[r] - self.degrees[s] - self.degrees[t]
                    if not c.is_zero() and c.degree != want:
                        issues.append({"pair": [self.labels[s], self.labels[t]], "target": self.labels[r], "expected": want, "got": c.degree})
        return issues

    def unit_issues(self):
        issues = []
        for s in range(4):
            e = self.basis_vector(s)
            if list(self.table[0][s]) != e or list(self.table[s][0]) != e:
                issues.append(self.labels[s])
        return issues

    def commutator(self, s, t):
        return [x - y for x, y in zip(self.table[s][t], self.table[t][s])]

    def commutator_unit_defects(self):
        """Pairs of basis elements whose commutator has a nonzero unit component."""
        out = []
        for s in range(1, 4):
            for t in range(s + 1, 4):
                c = self.commutator(s, t)[0]
                if not c.is_zero():
                    out.append({"pair": [self.labels[s], self.labels[t]], "unit_component": str(c)})
        return out

    def structure_dict(self):
        return {
            f"{self.labels[s]}*{self.labels[t]}": [str(c) for c in self.table[s][t]]
            for s in range(4)
            for t in range(4)
        }


class EvenCliffordAlgebra(FourDimAlgebra):
    def __init__(self, twist: SplitTwist, field, table, index: int = 0, literal: bool = False):
        degrees = [summand_degree(S, twist, 0) - (index // 2) * twist.l for S in EVEN]
        super().__init__(field, twist.nvars, EVEN_LABELS, degrees, table)
        self.twist = twist
        self.index = index
        self.literal = literal


def _wedge_coords(x: int, y: int):
    """x ^ y in the basis (f12, f13, f23) as (sign, position in EVEN) or None."""
    if x == y:
        return None
    if x < y:
        return 1, EVEN.index((x, y))
    return -1, EVEN.index((y, x))


def cliff0(q: TwistedQuadraticForm, literal: bool = False) -> EvenCliffordAlgebra:
    """Structure constants by contracting the middle pair of (u^v)(w^z) with b.

    The f-part is the wedge projection of the contracted tensor; the unit part
    contracts it once more with b and takes half of it. ``literal=True`` drops the
    half, reproducing the scalar squares -2 a_i a_j of the literal diagonal table,
    which is not associative.
    """
    require_valid(q)
    field, nv = q.field, q.nvars
    b = [[q.M[i, j] for j in range(3)] for i in range(3)]
    half = field.one if literal else field.inv(2)
    one = HomogeneousPoly.constant(field, nv, 1)
    zero = _zero(field, nv)
    table = [[None] * 4 for _ in range(4)]
    for s in range(4):
        table[0][s] = [one if r == s else zero for r in range(4)]
        table[s][0] = list(table[0][s])
    for s, (u, v) in enumerate(EVEN[1:], start=1):
        for t, (w, z) in enumerate(EVEN[1:], start=1):
            tensor = [(b[v][w], u, z), (-b[v][z], u, w), (-b[u][w], v, z), (b[u][z], v, w)]
            out = [zero] * 4
            scalar = zero
            for c, x, y in tensor:
                if c.is_zero():
                    continue
                wc = _wedge_coords(x, y)
                if wc is not None:
                    sign, r = wc
                    out[r] = out[r] + (c if sign > 0 else -c)
                scalar = scalar + c * b[x][y]
            out[0] = scalar.scale(half)
            table[s][t] = out
    return EvenCliffordAlgebra(q.twist, field, table, literal=literal)


def literal_example_table(a: Sequence, field: Field) -> FourDimAlgebra:
    """The literal diagonal table over a point: f_ij^2 = -2 a_i a_j."""
    twist = SplitTwist(0, (0, 0, 0), 0)
    diag = [[field.norm(a[i]) if i == j else 0 for j in range(3)] for i in range(3)]
    upper = [HomogeneousPoly.constant(field, 1, diag[i][j]) for i, j in ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))]
    return cliff0(TwistedQuadraticForm.from_upper(twist, upper), literal=True)


# Chevalley product on the exterior algebra ----------------------------------


class Multivectors:
    """Clifford product of wedge-basis multivectors via e_i X = e_i ^ X + e_i _| X."""

    def __init__(self, b, field, nvars):
        self.b = b
        self.field = field
        self.nvars = nvars
        self._cache = {}

    def _add(self, x, y):
        out = dict(x)
        for k, v in y.items():
            out[k] = out[k] + v if k in out else v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _scale(self, x, c):
        out = {k: v * c for k, v in x.items()}
        return {k: v for k, v in out.items() if not v.is_zero()}

    def vec_mul(self, i, x):
        out = {}
        for S, c in x.items():
            if i not in S:
                pos = sum(1 for j in S if j < i)
                T = tuple(sorted(S + (i,)))
                out = self._add(out, {T: c if pos % 2 == 0 else -c})
            for r, j in enumerate(S):
                bij = self.b[i][j]
                if bij.is_zero():
                    continue
                T = S[:r] + S[r + 1:]
                term = c * bij
                out = self._add(out, {T: term if r % 2 == 0 else -term})
        return out

    def contract(self, i, S):
        out = {}
        for r, j in enumerate(S):
            bij = self.b[i][j]
            if not bij.is_zero():
                out = self._add(out, {S[:r] + S[r + 1:]: bij if r % 2 == 0 else -bij})
        return out

    def basis_mul(self, S, T):
        key = (S, T)
        if key not in self._cache:
            one = HomogeneousPoly.constant(self.field, self.nvars, 1)
            if not S:
                res = {T: one}
            else:
                # e_S = e_i ^ e_R = e_i e_R - e_i _| e_R
                i, R = S[0], S[1:]
                res = self.vec_mul(i, self.basis_mul(R, T))
                res = self._add(res, self._scale(self.mul(self.contract(i, R), {T: one}), -1))
            self._cache[key] = res
        return self._cache[key]

    def mul(self, x, y):
        out = {}
        for S, c in x.items():
            for T, d in y.items():
                out = self._add(out, self._scale(self.basis_mul(S, T), c * d))
        return out


def _coords(mv, basis, field, nvars):
    extra = set(mv) - set(basis)
    if extra:
        raise AssertionError(f"product left the expected parity: {extra}")
    return [mv.get(S, _zero(field, nvars)) for S in basis]


@dataclass
class OddCliffordModule:
    twist: SplitTwist
    field: Field
    left: tuple  # left[s][t]: even s times odd t, coordinates in ODD
    right: tuple  # right[s][t]: odd s times even t, coordinates in ODD
    pairing: tuple  # pairing[s][t]: odd s times odd t, coordinates in EVEN (Cliff_2)
    index: int = 1
    labels: tuple = ODD_LABELS

    @property
    def nvars(self):
        return self.twist.nvars

    @property
    def degrees(self):
        return tuple(summand_degree(S, self.twist, 1) - (self.index // 2) * self.twist.l for S in ODD)

    @property
    def pairing_degrees(self):
        return tuple(summand_degree(S, self.twist, 2) - (self.index // 2) * self.twist.l for S in EVEN)


def cliff_odd(q: TwistedQuadraticForm) -> OddCliffordModule:
    require_valid(q)
    field, nv = q.field, q.nvars
    b = [[q.M[i, j] for j in range(3)] for i in range(3)]
    mv = Multivectors(b, field, nv)
    left = [[_coords(mv.basis_mul(S, T), ODD, field, nv) for T in ODD] for S in EVEN]
    right = [[_coords(mv.basis_mul(S, T), ODD, field, nv) for T in EVEN] for S in ODD]
    pairing = [[_coords(mv.basis_mul(S, T), EVEN, field, nv) for T in ODD] for S in ODD]
    return OddCliffordModule(q.twist, field, left, right, pairing)


def even_via_multivectors(q: TwistedQuadraticForm) -> EvenCliffordAlgebra:
    """Cliff_0 from the Chevalley product; an independent route to the same table."""
    field, nv = q.field, q.nvars
    b = [[q.M[i, j] for j in range(3)] for i in range(3)]
    mv = Multivectors(b, field, nv)
    table = [[_coords(mv.basis_mul(S, T), EVEN, field, nv) for T in EVEN] for S in EVEN]
    return EvenCliffordAlgebra(q.twist, field, table)


def _vec_product(field, nv, table, u, v, n_out):
    out = [_zero(field, nv) for _ in range(n_out)]
    for s, us in enumerate(u):
        if us.is_zero():
            continue
        for t, vt in enumerate(v):
            if vt.is_zero():
                continue
            uv = us * vt
            for r, c in enumerate(table[s][t]):
                if not c.is_zero():
                    out[r] = out[r] + uv * c
    return out


def verify_module_axioms(A: EvenCliffordAlgebra, m: OddCliffordModule) -> Report:
    rep = Report()
    field, nv = A.field, A.nvars
    P = lambda table, u, v: _vec_product(field, nv, table, u, v, 4)
    basis = [A.basis_vector(s) for s in range(4)]
    for x in range(4):
        for y in range(4):
            for k in range(4):
                a, a2, g = basis[x], basis[y], basis[k]
                # left module: (a a2) g = a (a2 g)
                if P(m.left, A.product(a, a2), g) != P(m.left, a, P(m.left, a2, g)):
                    rep.fail("left_module", triple=[A.labels[x], A.labels[y], m.labels[k]])
                # right module: (g a) a2 = g (a a2)
                if P(m.right, P(m.right, g, a), a2) != P(m.right, g, A.product(a, a2)):
                    rep.fail("right_module", triple=[m.labels[k], A.labels[x], A.labels[y]])
            # bimodule: (a g) a2 = a (g a2)
            for k in range(4):
                g = basis[k]
                if P(m.right, P(m.left, basis[x], g), basis[y]) != P(m.left, basis[x], P(m.right, g, basis[y])):
                    rep.fail("bimodule", triple=[A.labels[x], m.labels[k], A.labels[y]])
    # balanced pairing: (g a) h = g (a h)
    for k in range(4):
        for x in range(4):
            for j in range(4):
                g, a, h = basis[k], basis[x], basis[j]
                if P(m.pairing, P(m.right, g, a), h) != P(m.pairing, g, P(m.left, a, h)):
                    rep.fail("balanced_pairing", triple=[m.labels[k], A.labels[x], m.labels[j]])
    for name, table, deg_in, deg_out in (
        ("left", m.left, (A.degrees, m.degrees), m.degrees),
        ("right", m.right, (m.degrees, A.degrees), m.degrees),
        ("pairing", m.pairing, (m.degrees, m.degrees), m.pairing_degrees),
    ):
        for s in range(4):
            for t in range(4):
                for r, c in enumerate(table[s][t]):
                    want = deg_out[r] - deg_in[0][s] - deg_in[1][t]
                    if not c.is_zero() and c.degree != want:
                        rep.fail("degree", table=name, entry=[s, t, r], expected=want, got=c.degree)
    return rep


# verification ---------------------------------------------------------------


def verify_associativity(A: FourDimAlgebra) -> Report:
    """(u v) w = u (v w) for all 64 basis triples, as polynomial identities."""
    rep = Report()
    basis = [A.basis_vector(s) for s in range(4)]
    prods = [[A.product(basis[s], basis[t]) for t in range(4)] for s in range(4)]
    fmt = lambda vec: " + ".join(f"({c})*{A.labels[r]}" for r, c in enumerate(vec) if not c.is_zero()) or "0"
    for s in range(4):
        for t in range(4):
            for r in range(4):
                lhs = A.product(prods[s][t], basis[r])
                rhs = A.product(basis[s], prods[t][r])
                if lhs != rhs:
                    rep.fail("associativity", triple=[A.labels[s], A.labels[t], A.labels[r]], left=fmt(lhs), right=fmt(rhs))
    rep.constants["triples_checked"] = 64
    if isinstance(A, EvenCliffordAlgebra):
        rep.constants["normalization"] = "literal" if A.literal else "associative"
    return rep


def radical_dimension(field: Field, table) -> int:
    """dim of the kernel of the trace form tr(L_x L_y) of a scalar structure table."""
    n = len(table)
    L = [[[table[s][t][r] for t in range(n)] for r in range(n)] for s in range(n)]
    tr = lambda m: field.norm(sum(m[i][i] for i in range(n)))
    form = [[tr(linalg.matmul(field, L[x], L[y])) for y in range(n)] for x in range(n)]
    return n - linalg.rank(field, form)


def _scalar_assoc_ok(field, table) -> bool:
    n = len(table)

    def mul(u, v):
        out = [0] * n
        for s in range(n):
            if u[s]:
                for t in range(n):
                    if v[t]:
                        for r in range(n):
                            out[r] += u[s] * v[t] * table[s][t][r]
        return [field.norm(x) for x in out]

    e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return all(
        mul(mul(e[s], e[t]), e[r]) == mul(e[s], mul(e[t], e[r])) for s in range(n) for t in range(n) for r in range(n)
    )


def classify_fiber_algebra(A: FourDimAlgebra, point) -> FiberAlgebraClass:
    table = A.eval_table(point)
    if not _scalar_assoc_ok(A.field, table):
        raise NotPointwiseClifford(f"fiber algebra at {list(point)} is not associative")
    d = radical_dimension(A.field, table)
    for cls in FiberAlgebraClass:
        if cls.value == d:
            return cls
    raise NotPointwiseClifford(f"not a pointwise Clifford fiber: radical dimension {d} at {list(point)}")


def verify_bimodule_tensor_at(q: TwistedQuadraticForm, point, parity: tuple[int, int]) -> Report:
    """Cliff_i (x)_{Cliff_0} Cliff_j at a point: cokernel of the balancing map, then the product map."""
    if parity not in ((1, 1), (1, 0), (0, 1), (0, 0)):
        raise ValueError(f"unsupported parity pair {parity}")
    field = q.field
    A = cliff0(q)
    m = cliff_odd(q)
    alg = A.eval_table(point)
    left = [[[c.eval(point) for c in m.left[s][t]] for t in range(4)] for s in range(4)]
    right = [[[c.eval(point) for c in m.right[s][t]] for t in range(4)] for s in range(4)]
    pair = [[[c.eval(point) for c in m.pairing[s][t]] for t in range(4)] for s in range(4)]
    i, j = parity
    # M_i as right A-module, N_j as left A-module, and the product M_i x N_j -> Cliff_{i+j}
    act_right = right if i == 1 else alg
    act_left = left if j == 1 else alg
    mult = {(1, 1): pair, (1, 0): right, (0, 1): left, (0, 0): alg}[parity]
    rows = []
    for s in range(4):
        for u in range(4):
            for t in range(4):
                vec = [0] * 16
                for s2 in range(4):
                    c = act_right[s][u][s2]
                    if c:
                        vec[s2 * 4 + t] += c
                for t2 in range(4):
                    c = act_left[u][t][t2]
                    if c:
                        vec[s * 4 + t2] -= c
                rows.append([field.norm(x) for x in vec])
    balancing_rank = linalg.rank(field, rows)
    tensor_dim = 16 - balancing_rank
    mu = [[field.norm(mult[s][t][r]) for s in range(4) for t in range(4)] for r in range(4)]
    rep = Report()
    rep.constants.update({"parity": list(parity), "tensor_dimension": tensor_dim})
    r, _ = fiber_rank(q, point)
    if r != 3:
        return rep.error("degenerate_point", fiber_rank=r, tensor_dimension=tensor_dim)
    kills = all(field.norm(sum(mu[r_][k] * row[k] for k in range(16))) == 0 for row in rows for r_ in range(4))
    mu_rank = linalg.rank(field, mu)
    rep.constants["product_map_rank"] = mu_rank
    if not kills:
        rep.fail("product_not_balanced")
    if tensor_dim != 4:
        rep.fail("tensor_dimension", expected=4, got=tensor_dim)
    if mu_rank != 4:
        rep.fail("product_map_not_surjective", rank=mu_rank)
    if rep.passed:
        rep.add("isomorphism", target=f"Cliff_{i + j}")
    return rep


def cliff_shift(obj, k: int):
    """Cliff_n -> Cliff_{n+k} = Cliff_n (x) L^{-k/2}; k must be even."""
    if k % 2:
        raise ValueError("shift must be even: Cliff_{n+2i} = Cliff_n (x) L^{-i}")
    if isinstance(obj, EvenCliffordAlgebra):
        return EvenCliffordAlgebra(obj.twist, obj.field, obj.table, index=obj.index + k, literal=obj.literal)
    if isinstance(obj, OddCliffordModule):
        return OddCliffordModule(obj.twist, obj.field, obj.left, obj.right, obj.pairing, index=obj.index + k)
    raise TypeError(f"cannot shift {type(obj).__name__}")


# pointwise oracle ------------------------------------------------------------


@dataclass
class OracleTables:
    field: Field
    b: list
    full: dict = dc_field(default_factory=dict)  # (S, T) -> {U: scalar}, product basis e_S = e_i1 e_i2 ...
    even: list = None  # 4x4x4 in the wedge basis (1, f12, f13, f23)
    left: list = None
    right: list = None
    pairing: list = None


SUBSETS = ((), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))


def straightening_oracle(b, field: Field) -> OracleTables:
    """Full 8-dim Clifford algebra of a scalar symmetric b by rewriting words.

    Rewrite rules: e_i e_i -> b_ii, e_i e_j -> -e_j e_i + 2 b_ij for i > j.
    The result is also converted to wedge bases (antisymmetrized products) so
    it can be compared with :func:`cliff0` and :func:`cliff_odd` at a point.
    """
    norm = field.norm
    b = [[norm(x) for x in row] for row in b]

    def straighten(word):
        out = {}
        stack = [(tuple(word), field.one)]
        while stack:
            w, c = stack.pop()
            if c == 0:
                continue
            for k in range(len(w) - 1):
                x, y = w[k], w[k + 1]
                if x == y:
                    stack.append((w[:k] + w[k + 2:], norm(c * b[x][x])))
                    break
                if x > y:
                    stack.append((w[:k] + (y, x) + w[k + 2:], norm(-c)))
                    stack.append((w[:k] + w[k + 2:], norm(2 * c * b[x][y])))
                    break
            else:
                out[w] = norm(out.get(w, 0) + c)
        return {w: c for w, c in out.items() if c}

    def mul(x, y):
        out = {}
        for S, c in x.items():
            for T, d in y.items():
                for U, e in straighten(S + T).items():
                    out[U] = norm(out.get(U, 0) + c * d * e)
        return {U: c for U, c in out.items() if c}

    tables = OracleTables(field, b)
    for S in SUBSETS:
        for T in SUBSETS:
            tables.full[(S, T)] = straighten(S + T)

    # wedge basis element = average of signed permuted products
    wedge = {}
    for S in SUBSETS:
        acc = {}
        perms = list(permutations(S))
        for perm in perms:
            sign = linalg.perm_sign([S.index(x) for x in perm])
            for U, c in straighten(perm).items():
                acc[U] = norm(acc.get(U, 0) + sign * c)
        inv = field.inv(len(perms))
        wedge[S] = {U: norm(c * inv) for U, c in acc.items() if norm(c * inv)}
    # change of basis: columns are wedge elements in product coordinates
    cob = [[wedge[S].get(U, 0) for S in SUBSETS] for U in SUBSETS]

    def to_wedge(x):
        rhs = [x.get(U, 0) for U in SUBSETS]
        aug = [row + [r] for row, r in zip(cob, rhs)]
        red, piv = linalg.rref(field, aug)
        sol = [0] * 8
        for r, pc in enumerate(piv):
            sol[pc] = red[r][8]
        return dict(zip(SUBSETS, sol))

    def table(left_basis, right_basis, out_basis):
        res = []
        for S in left_basis:
            row = []
            for T in right_basis:
                w = to_wedge(mul(wedge[S], wedge[T]))
                if any(w[U] for U in SUBSETS if U not in out_basis):
                    raise AssertionError("oracle product left the expected parity")
                row.append([w[U] for U in out_basis])
            res.append(row)
        return res

    tables.even = table(EVEN, EVEN, EVEN)
    tables.left = table(EVEN, ODD, ODD)
    tables.right = table(ODD, EVEN, ODD)
    tables.pairing = table(ODD, ODD, EVEN)
    return tables
