"""Twisted ternary quadratic forms on split bundles over P^n.

A form q : L -> Sym^2 E^v with E = O(-a1) + O(-a2) + O(-a3) and L = O(l) is a
symmetric 3x3 matrix whose (i, j) entry is a homogeneous polynomial of degree
a_i + a_j - l. Entries whose prescribed degree is negative must vanish.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .exactalg import linalg
from .exactalg.fields import DEFAULT_PRIME, Field, PrimeField
from .exactalg.gcd import gcd_many
from .exactalg.matrix import PolyMatrix, det3, rank_at
from .exactalg.poly import HomogeneousPoly, random_poly
from .report import Report

UPPER = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


class InvalidForm(ValueError):
    pass


class VanishingForm(ValueError):
    """The form is identically zero at a point of the base."""


@dataclass(frozen=True)
class SplitTwist:
    base_dim: int
    a: tuple[int, int, int]
    l: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.base_dim < 0 or len(self.a) != 3:
            raise ValueError("need base_dim >= 0 and three dual degrees")

    @property
    def nvars(self) -> int:
        return self.base_dim + 1

    def entry_degree(self, i: int, j: int) -> int:
        return self.a[i] + self.a[j] - self.l

    @property
    def disc_degree(self) -> int:
        return 2 * sum(self.a) - 3 * self.l

    @property
    def is_normalized(self) -> bool:
        return self.l == sum(self.a)

    def normalized(self) -> "SplitTwist":
        """Twist by M = det(E) (x) L, i.e. E' = E (x) M^v and L' = L (x) M^2."""
        m = self.l - sum(self.a)
        return SplitTwist(self.base_dim, tuple(x + m for x in self.a), self.l + 2 * m)

    def to_dict(self):
        return {"base_dim": self.base_dim, "a": list(self.a), "l": self.l}


class FiberClass(enum.Enum):
    SmoothConic = 3
    LinePair = 2
    DoubleLine = 1


@dataclass(frozen=True)
class TwistedQuadraticForm:
    twist: SplitTwist
    M: PolyMatrix

    def __post_init__(self):
        if (self.M.rows, self.M.cols) != (3, 3):
            raise InvalidForm("quadratic form matrix must be 3x3")
        if self.M.nvars != self.twist.nvars:
            raise InvalidForm(f"entries have {self.M.nvars} variables, base P^{self.twist.base_dim} needs {self.twist.nvars}")
        if all(e.is_zero() for row in self.M.entries for e in row):
            raise InvalidForm("quadratic form is identically zero")

    @classmethod
    def from_upper(cls, twist: SplitTwist, upper: Sequence[HomogeneousPoly]) -> "TwistedQuadraticForm":
        """Build from the six entries M11, M12, M13, M22, M23, M33."""
        m = [[None] * 3 for _ in range(3)]
        for (i, j), e in zip(UPPER, upper):
            m[i][j] = m[j][i] = e
        return cls(twist, PolyMatrix(m, symmetric=True))

    @property
    def field(self) -> Field:
        return self.M.field

    @property
    def nvars(self) -> int:
        return self.twist.nvars

    def entry(self, i, j) -> HomogeneousPoly:
        return self.M[i, j]

    def upper(self):
        return [self.M[i, j] for i, j in UPPER]

    def matrix_at(self, point):
        return self.M.eval(point)

    def congruent(self, g) -> "TwistedQuadraticForm":
        """G^T M G for constant G that keeps the degree pattern (e.g. block-diagonal in equal a_i)."""
        return TwistedQuadraticForm(self.twist, self.M.congruence(g))

    def change_field(self, field: Field) -> "TwistedQuadraticForm":
        return TwistedQuadraticForm(
            self.twist, PolyMatrix([[e.change_field(field) for e in row] for row in self.M.entries], symmetric=self.M.symmetric)
        )


def validate(q: TwistedQuadraticForm) -> Report:
    rep = Report()
    rep.constants["twist"] = q.twist.to_dict()
    for i in range(3):
        for j in range(i + 1, 3):
            if q.M[i, j] != q.M[j, i]:
                rep.fail("asymmetry", entry=[i + 1, j + 1], upper=str(q.M[i, j]), lower=str(q.M[j, i]))
    for i in range(3):
        for j in range(3):
            e = q.M[i, j]
            want = q.twist.entry_degree(i, j)
            if e.is_zero():
                continue
            if want < 0:
                rep.fail("degree_pattern", entry=[i + 1, j + 1], expected="zero (negative degree)", got=e.degree)
            elif e.degree != want:
                rep.fail("degree_pattern", entry=[i + 1, j + 1], expected=want, got=e.degree)
    return rep


def require_valid(q: TwistedQuadraticForm):
    rep = validate(q)
    if not rep.passed:
        raise InvalidForm("; ".join(f"{f['kind']} at {f['entry']}" for f in rep.findings))


def discriminant(q: TwistedQuadraticForm) -> HomogeneousPoly:
    """det(M); a section of O(2(a1+a2+a3) - 3l), or the zero polynomial for degenerate families."""
    require_valid(q)
    return det3(q.M)


def fiber_rank(q: TwistedQuadraticForm, point) -> tuple[int, FiberClass]:
    r = rank_at(q.M, point)
    if r == 0:
        raise VanishingForm(f"form vanishes at point {list(point)}")
    return r, FiberClass(r)


def normalized_twist(q: TwistedQuadraticForm) -> TwistedQuadraticForm:
    # the matrix is untouched: twisting by a line bundle only relabels summand degrees
    require_valid(q)
    return TwistedQuadraticForm(q.twist.normalized(), q.M)


def random_point(field: Field, nvars: int, rng: random.Random, bound: int = 20):
    while True:
        if isinstance(field, PrimeField):
            pt = [rng.randrange(field.p) for _ in range(nvars)]
        else:
            pt = [field.norm(rng.randint(-bound, bound)) for _ in range(nvars)]
        if any(pt):
            return pt


def projective_points(p: int, nvars: int):
    """All points of P^{nvars-1}(F_p), first nonzero coordinate equal to 1."""
    for lead in range(nvars):
        for tail in product(range(p), repeat=nvars - lead - 1):
            yield (0,) * lead + (1,) + tail


def random_form(twist: SplitTwist, field: Field, rng: random.Random, density: float = 1.0) -> TwistedQuadraticForm:
    """Random entries of the prescribed degrees; retried until not identically zero."""
    while True:
        upper = []
        for i, j in UPPER:
            d = twist.entry_degree(i, j)
            if d < 0:
                upper.append(HomogeneousPoly.zero(field, twist.nvars))
            else:
                upper.append(random_poly(field, twist.nvars, d, rng, density))
        if any(not e.is_zero() for e in upper):
            return TwistedQuadraticForm.from_upper(twist, upper)


def _common_zero_at(entries, point) -> bool:
    return all(e.eval(point) == 0 for e in entries)


def nowhere_vanishing_check(
    q: TwistedQuadraticForm,
    mode: str = "montecarlo",
    samples: int = 200,
    p: int = DEFAULT_PRIME,
    seed: int = 0,
) -> Report:
    """Look for a point of P^n where all six entries vanish.

    ``montecarlo`` samples random F_p points after an exact common-factor test;
    ``exhaustive`` scans all of P^n(F_p); ``exact_p1`` decides the question on P^1.
    """
    require_valid(q)
    rep = Report()
    rep.constants["mode"] = mode
    entries = [e for e in q.upper() if not e.is_zero()]
    if mode == "exact_p1":
        if q.twist.base_dim != 1:
            raise ValueError("exact_p1 mode needs base dimension 1")
        g = gcd_many(entries)
        if not g.is_constant():
            rep.fail("common_zero", witness=f"{g} = 0")
        else:
            rep.add("nowhere_vanishing", method="gcd of entries is constant")
        return rep
    if q.twist.base_dim == 0:
        rep.add("nowhere_vanishing", method="exact: constant entries not all zero")
        return rep
    g = gcd_many(entries)
    if not g.is_constant():
        return rep.fail("common_zero", witness=f"{g} = 0", method="exact common factor")
    fp = PrimeField(p)
    try:
        red = [e.change_field(fp) for e in entries]
    except ValueError:
        return rep.error("bad_reduction", p=p)
    if mode == "exhaustive":
        for pt in projective_points(p, q.nvars):
            if _common_zero_at(red, pt):
                return rep.fail("common_zero", witness=list(pt), p=p, method="exhaustive")
        rep.add("nowhere_vanishing", method=f"exhaustive over P^{q.twist.base_dim}(F_{p})")
        return rep
    if mode != "montecarlo":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for _ in range(samples):
        pt = random_point(fp, q.nvars, rng)
        if _common_zero_at(red, pt):
            return rep.fail("common_zero", witness=pt, p=p, method="montecarlo")
    rep.add("probabilistically_nonvanishing", samples=samples, p=p)
    return rep


def equivalent_conics_at(q1: TwistedQuadraticForm, q2: TwistedQuadraticForm, point) -> Report:
    """Geometric equivalence of the two fibers is decided by rank alone."""
    if q1.twist.base_dim != q2.twist.base_dim:
        raise ValueError("forms live over different bases")
    r1, c1 = fiber_rank(q1, point)
    r2, c2 = fiber_rank(q2, point)
    rep = Report()
    rep.constants["ranks"] = [r1, r2]
    if r1 != r2:
        rep.fail("rank_mismatch", first=c1.name, second=c2.name)
    else:
        rep.add("geometrically_equivalent", fiber=c1.name)
    field = q1.field
    if r1 == r2 == 3 and field.characteristic == 0:
        d1 = linalg.det(field, q1.matrix_at(point))
        d2 = linalg.det(field, q2.matrix_at(point))
        same = field.is_square(d1 * d2)
        rep.add("Q-rational refinement", det_first=field.format(d1), det_second=field.format(d2), same_square_class=same)
    return rep
