"""From an algebra O + R0 back to a quadratic form, through the commutator map.

The commutator wedge^2 R0 -> R0 is turned into a map det(R0) -> R0 (x) R0 via the
identification wedge^2 R0 = det(R0) (x) R0^v fixed by

    f1^f2 <-> +f3^v,   f1^f3 <-> -f2^v,   f2^f3 <-> +f1^v.

For R = Cliff_0(q) this returns -2 G^T M G with G the signed index reversal
below, whose determinant is -8 det(M).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .clifford import PAIRS, FourDimAlgebra, NotPointwiseClifford, classify_fiber_algebra, cliff0, radical_dimension
from .exactalg.matrix import PolyMatrix, det3
from .exactalg.poly import HomogeneousPoly
from .quadform import SplitTwist, TwistedQuadraticForm, normalized_twist, random_point, require_valid
from .report import Report

# signed index reversal relating q_R to the normalized twist of q
REVERSAL = ((0, 0, 1), (0, -1, 0), (1, 0, 0))
ROUNDTRIP_SCALE = -2
DET_LAW = -8

# row k of q_R comes from the wedge pair complementary to k, with this sign
_DUAL_ROWS = ((2, 1), (1, -1), (0, 1))


class VanishingReconstruction(ValueError):
    pass


class AsymmetricCommutator(NotPointwiseClifford):
    def __init__(self, message, defect):
        super().__init__(message)
        self.defect = defect


class AlgebraWithSplitting(FourDimAlgebra):
    """Candidate pointwise Clifford algebra; R0 = O(d1) + O(d2) + O(d3)."""

    def __init__(self, field, nvars, degrees, table, provenance="user", labels=("1", "f1", "f2", "f3")):
        super().__init__(field, nvars, labels, degrees, table)
        self.provenance = provenance

    @classmethod
    def from_algebra(cls, A: FourDimAlgebra, provenance: str = "cliff0"):
        return cls(A.field, A.nvars, A.degrees, A.table, provenance, A.labels)

    def structural_issues(self):
        issues = []
        if self.degrees[0] != 0:
            issues.append({"kind": "unit_degree", "got": self.degrees[0]})
        for lab in self.unit_issues():
            issues.append({"kind": "unit_law", "basis": lab})
        for d in self.degree_issues():
            issues.append({"kind": "degree", **d})
        return issues


@dataclass(frozen=True)
class CommutatorMap:
    """coeffs[w][m]: coefficient of f_{m+1} in [f_i, f_j] for the w-th pair (i < j)."""

    coeffs: tuple

    def matrix_at(self, point):
        return [[c.eval(point) for c in row] for row in self.coeffs]

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeffs for c in row)


def _as_splitting(R) -> AlgebraWithSplitting:
    return R if isinstance(R, AlgebraWithSplitting) else AlgebraWithSplitting.from_algebra(R)


def commutator_map(R: FourDimAlgebra) -> CommutatorMap:
    R = _as_splitting(R)
    issues = R.structural_issues()
    if issues:
        raise NotPointwiseClifford(f"not a pointwise Clifford candidate: {issues[0]}")
    rows = []
    for i, j in PAIRS:
        comm = R.commutator(i + 1, j + 1)
        if not comm[0].is_zero():
            raise NotPointwiseClifford(
                f"not a pointwise Clifford candidate: [{R.labels[i + 1]}, {R.labels[j + 1]}] has unit component {comm[0]}"
            )
        rows.append(tuple(comm[1:]))
    return CommutatorMap(tuple(rows))


def reconstruct_form(R: FourDimAlgebra) -> TwistedQuadraticForm:
    """q_R : det(R0) -> Sym^2 R0, returned in the dual basis (f1^v, f2^v, f3^v)."""
    R = _as_splitting(R)
    cm = commutator_map(R)
    if cm.is_zero():
        raise VanishingReconstruction("vanishing reconstructed form: all commutators are zero")
    Q = [[cm.coeffs[w][m] if sign > 0 else -cm.coeffs[w][m] for m in range(3)] for w, sign in _DUAL_ROWS]
    defect = [[Q[i][j] - Q[j][i] for j in range(3)] for i in range(3)]
    if any(not d.is_zero() for row in defect for d in row):
        raise AsymmetricCommutator(
            "not pointwise Clifford: commutator map is not symmetric", [[str(d) for d in row] for row in defect]
        )
    d = R.degrees[1:]
    twist = SplitTwist(R.nvars - 1, tuple(d), sum(d))
    return TwistedQuadraticForm(twist, PolyMatrix(Q, symmetric=True))


def reversed_twist(q: TwistedQuadraticForm) -> TwistedQuadraticForm:
    """The same form written in the basis (e3, -e2, e1)."""
    t = q.twist
    return TwistedQuadraticForm(SplitTwist(t.base_dim, t.a[::-1], t.l), q.M.congruence(REVERSAL))


def roundtrip_check(q: TwistedQuadraticForm) -> Report:
    """reconstruct_form(cliff0(q)) against the normalized twist of q."""
    require_valid(q)
    rep = Report()
    rep.constants.update({"c": ROUNDTRIP_SCALE, "det_law": DET_LAW, "G": [list(r) for r in REVERSAL]})
    qR = reconstruct_form(cliff0(q))
    target = reversed_twist(normalized_twist(q))
    rep.constants["twist_reconstructed"] = qR.twist.to_dict()
    rep.constants["twist_normalized"] = normalized_twist(q).twist.to_dict()
    if qR.twist != target.twist:
        rep.fail("twist_mismatch", reconstructed=qR.twist.to_dict(), expected=target.twist.to_dict())
    expected = target.M.scale(ROUNDTRIP_SCALE)
    if qR.M.entries != expected.entries:
        rep.fail(
            "matrix_mismatch",
            reconstructed=[[str(e) for e in row] for row in qR.M.entries],
            expected=[[str(e) for e in row] for row in expected.entries],
        )
    d_q = det3(q.M)
    d_R = det3(qR.M)
    if d_R != d_q.scale(DET_LAW):
        rep.fail("det_law", reconstructed=str(d_R), expected=str(d_q.scale(DET_LAW)))
    if d_q.is_zero():
        rep.add("degenerate_family", note="discriminant is identically zero")
    if rep.passed:
        rep.add("roundtrip", statement="q_R = c * G^T M G, det(q_R) = -8 det(q)")
    return rep


def is_pointwise_clifford(R: FourDimAlgebra, sample_count: int = 20, seed: int = 0) -> Report:
    R = _as_splitting(R)
    rep = Report()
    try:
        qR = reconstruct_form(R)
    except AsymmetricCommutator as exc:
        return rep.fail("asymmetric_commutator", message=str(exc), defect_matrix=exc.defect)
    except VanishingReconstruction as exc:
        return rep.fail("zero_commutators", message=str(exc))
    except NotPointwiseClifford as exc:
        return rep.fail("not_candidate", message=str(exc))
    rep.constants["reconstructed_twist"] = qR.twist.to_dict()
    model = cliff0(qR)
    rng = random.Random(seed)
    field = R.field
    for _ in range(sample_count):
        pt = random_point(field, R.nvars, rng)
        try:
            got = classify_fiber_algebra(R, pt)
        except NotPointwiseClifford as exc:
            return rep.fail("bad_fiber", point=[field.format(x) for x in pt], message=str(exc))
        want = classify_fiber_algebra(model, pt)
        tf_R = 4 - radical_dimension(field, R.eval_table(pt))
        tf_M = 4 - radical_dimension(field, model.eval_table(pt))
        if got != want or tf_R != tf_M:
            return rep.fail("class_mismatch", point=[field.format(x) for x in pt], algebra=got.name, model=want.name)
    rep.add("pointwise_clifford", samples=sample_count)
    return rep


def split_commutative_algebra(field, nvars: int = 1) -> AlgebraWithSplitting:
    """k^4 with unit (1,1,1,1) and R0 spanned by the first three idempotents; commutative."""
    # coordinates: u = c0*1 + sum c_i f_i with f_i = idempotent e_i, i = 1..3
    # f_i f_i = f_i, f_i f_j = 0 (i != j)
    one = HomogeneousPoly.constant(field, nvars, 1)
    zero = HomogeneousPoly.zero(field, nvars)
    table = [[[zero] * 4 for _ in range(4)] for _ in range(4)]
    for s in range(4):
        table[0][s] = [one if r == s else zero for r in range(4)]
        table[s][0] = list(table[0][s])
    for i in range(1, 4):
        table[i][i] = [one if r == i else zero for r in range(4)]
    return AlgebraWithSplitting(field, nvars, (0, 0, 0, 0), table, provenance="split commutative k^4")
