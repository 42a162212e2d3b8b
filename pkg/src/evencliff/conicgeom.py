"""Conic bundles over P^2 from the 1-nodal Fano examples, and geometric probes.

Builders produce split-bundle forms with the twist data of the type 5n bundle and
of the spinor-modified bundles of types 12nb, 10na, 8nb. Probes sample points of
the discriminant curve over F_p by intersecting it with random lines.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field as dc_field

from .exactalg import linalg, univariate
from .exactalg.fields import DEFAULT_PRIME, QQ, Field, PrimeField
from .exactalg.gcd import divides, squarefree_check
from .exactalg.poly import HomogeneousPoly, parse_poly
from .quadform import (
    UPPER,
    SplitTwist,
    TwistedQuadraticForm,
    discriminant,
    nowhere_vanishing_check,
    projective_points,
    random_form,
    random_point,
    validate,
)
from .report import Report

MAX_RESEEDS = 20


class InstanceTag(enum.Enum):
    Type5n = "Type5n"
    Mod12nb = "Mod12nb"
    Mod10na = "Mod10na"
    Mod8nb = "Mod8nb"
    Random = "Random"


# (a1, a2, a3), l for E = O(-a1) + O(-a2) + O(-a3), L = O(l)
TAG_TWIST = {
    InstanceTag.Type5n: ((0, 1, 1), -1),
    InstanceTag.Mod12nb: ((0, 0, 0), -1),
    InstanceTag.Mod10na: ((1, 1, 0), 0),
    InstanceTag.Mod8nb: ((1, 0, 0), -1),
}

TAG_DISC_DEGREE = {
    InstanceTag.Type5n: 7,
    InstanceTag.Mod12nb: 3,
    InstanceTag.Mod10na: 4,
    InstanceTag.Mod8nb: 5,
}


class BuildError(RuntimeError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    tag: InstanceTag
    seed: int = 0
    field: Field = QQ
    overrides: dict = dc_field(default_factory=dict)  # e.g. {"M11": "x0 + x2"}

    def twist(self, rng: random.Random | None = None) -> SplitTwist:
        if self.tag is InstanceTag.Random:
            rng = rng or random.Random(self.seed)
            a = tuple(rng.randint(0, 1) for _ in range(3))
            l = rng.randint(-1, 2 * min(a))
            return SplitTwist(2, a, l)
        a, l = TAG_TWIST[self.tag]
        return SplitTwist(2, a, l)


@dataclass
class ConicBundleInstance:
    q: TwistedQuadraticForm
    tag: InstanceTag
    seed: int
    disc: HomogeneousPoly
    notes: dict = dc_field(default_factory=dict)

    @property
    def disc_degree(self) -> int:
        return self.disc.degree


def _apply_overrides(q, overrides):
    if not overrides:
        return q
    names = {f"M{i + 1}{j + 1}": k for k, (i, j) in enumerate(UPPER)}
    upper = q.upper()
    for name, text in overrides.items():
        if name not in names:
            raise KeyError(f"unknown entry {name!r}; use one of {sorted(names)}")
        upper[names[name]] = parse_poly(text, q.field, q.nvars) if isinstance(text, str) else text
    return TwistedQuadraticForm.from_upper(q.twist, upper)


def _build(spec: InstanceSpec, twist: SplitTwist, rng: random.Random) -> ConicBundleInstance:
    expected = twist.disc_degree
    for attempt in range(MAX_RESEEDS):
        q = _apply_overrides(random_form(twist, spec.field, rng), spec.overrides)
        if spec.tag is InstanceTag.Type5n and q.M[0, 0].is_zero():
            continue
        if not validate(q).passed:
            raise BuildError(f"overrides break the degree pattern for {spec.tag.value}")
        disc = discriminant(q)
        if disc.is_zero() or disc.degree != expected:
            continue
        if not nowhere_vanishing_check(q, samples=50, seed=spec.seed + attempt).passed:
            continue
        return ConicBundleInstance(q, spec.tag, spec.seed, disc, {"attempts": attempt + 1})
    raise BuildError(f"no valid {spec.tag.value} instance after {MAX_RESEEDS} reseeds (seed {spec.seed})")


def make_type_5n(spec: InstanceSpec) -> ConicBundleInstance:
    """E = O + O(-1) + O(-1), L = O(-1); M11 is a nonzero linear form cutting out the line L."""
    if spec.tag is not InstanceTag.Type5n:
        raise ValueError("make_type_5n needs tag Type5n")
    inst = _build(spec, spec.twist(), random.Random(spec.seed))
    line = inst.q.M[0, 0]
    inst.notes["line"] = str(line)
    inst.notes["line_in_discriminant"] = divides(line, inst.disc) is not None
    return inst


def make_modified(spec: InstanceSpec) -> ConicBundleInstance:
    if spec.tag not in (InstanceTag.Mod12nb, InstanceTag.Mod10na, InstanceTag.Mod8nb):
        raise ValueError(f"make_modified does not build {spec.tag.value}")
    return _build(spec, spec.twist(), random.Random(spec.seed))


def make_instance(spec: InstanceSpec) -> ConicBundleInstance:
    if spec.tag is InstanceTag.Type5n:
        return make_type_5n(spec)
    if spec.tag is InstanceTag.Random:
        rng = random.Random(spec.seed)
        return _build(spec, spec.twist(rng), rng)
    return make_modified(spec)


# sampling on the discriminant ------------------------------------------------


def _restrict_to_line(f: HomogeneousPoly, P, Q, p):
    """Coefficients (low first) of t -> f(P + t Q) over F_p."""
    out = []
    for exps, c in f.terms.items():
        term = [c % p]
        for i, k in enumerate(exps):
            for _ in range(k):
                term = univariate.mul(term, [P[i] % p, Q[i] % p], p)
        if len(term) > len(out):
            out += [0] * (len(term) - len(out))
        for i, v in enumerate(term):
            out[i] = (out[i] + v) % p
    return univariate.trim(out)


def normalize_point(pt, p):
    k = next(i for i, v in enumerate(pt) if v % p)
    inv = pow(pt[k], -1, p)
    return tuple(v * inv % p for v in pt)


def sample_curve_points(f: HomogeneousPoly, count: int, p: int = DEFAULT_PRIME, seed: int = 0, max_lines: int | None = None):
    """F_p-points on {f = 0} found as roots of f on random lines; deduplicated, normalized."""
    fp = f.change_field(PrimeField(p))
    if fp.is_zero():
        raise ValueError("cannot sample the zero locus of the zero polynomial")
    n = f.nvars
    rng = random.Random(seed)
    found = []
    seen = set()
    max_lines = max_lines if max_lines is not None else 20 * count + 20
    if n == 1:
        raise ValueError("P^0 has no curve to sample")
    for _ in range(max_lines):
        if len(found) >= count:
            break
        P = [rng.randrange(p) for _ in range(n)]
        Q = [rng.randrange(p) for _ in range(n)]
        if linalg.rank(PrimeField(p), [P, Q]) < 2:
            continue
        g = _restrict_to_line(fp, P, Q, p)
        if not g:
            continue
        for t in univariate.roots(g, p, rng):
            pt = normalize_point([(a + t * b) % p for a, b in zip(P, Q)], p)
            if pt not in seen:
                seen.add(pt)
                found.append(pt)
                if len(found) >= count:
                    break
    return found


# smoothness ---------------------------------------------------------------


def _chart(pt):
    return next(i for i, v in enumerate(pt) if v)


def _quad(field, m, y):
    return field.norm(sum(y[i] * m[i][j] * y[j] for i in range(3) for j in range(3)))


def _is_singular(field, q, dM, x, y) -> bool:
    """(x, y) on the total space is singular iff M(x) y = 0 and y^T dM/dx_t y = 0 off the chart variable."""
    m = q.matrix_at(x)
    if any(field.norm(sum(m[i][j] * y[j] for j in range(3))) for i in range(3)):
        return False
    k = _chart(x)
    return all(_quad(field, [[d.eval(x) for d in row] for row in dM[t]], y) == 0 for t in range(q.nvars) if t != k)


def _singular_points_over(field, q, dM, x, rng):
    """Singular points of the total space over the base point x (scaled so its chart coordinate is 1)."""
    m = q.matrix_at(x)
    ker = linalg.nullspace(field, m)
    k = _chart(x)
    if len(ker) == 1:
        y = ker[0]
        return [y] if _is_singular(field, q, dM, x, y) else []
    if len(ker) == 2:
        # fiber is a double line P(ker); base partials restrict to binary quadrics on it
        u, v = ker
        quads = []
        for t in range(q.nvars):
            if t == k:
                continue
            d = [[e.eval(x) for e in row] for row in dM[t]]
            bil = lambda a, b: field.norm(sum(a[i] * d[i][j] * b[j] for i in range(3) for j in range(3)))
            quads.append((bil(u, u), field.norm(2 * bil(u, v)), bil(v, v)))
        nonzero = [c for c in quads if any(c)]
        if not nonzero:
            return [u, v]
        cands = []
        alpha, beta, gamma = nonzero[0]
        if alpha == 0:
            cands.append((0, 1))  # s = 0 root of alpha s^2 + beta s t + gamma t^2
        if isinstance(field, PrimeField):
            for s in univariate.roots([gamma, beta, alpha], field.p, rng) if any((gamma, beta, alpha)) else []:
                cands.append((s, 1))
        out = []
        for s, t in cands:
            if all(field.norm(a * s * s + b * s * t + c * t * t) == 0 for a, b, c in quads):
                out.append([field.norm(s * ui + t * vi) for ui, vi in zip(u, v)])
        return out
    raise ValueError(f"form vanishes at {list(x)}")


def _scale_to_chart(x, field):
    k = _chart(x)
    inv = field.inv(x[k])
    return [field.norm(v * inv) for v in x]


def smoothness_probe(q: TwistedQuadraticForm, sample_count: int = 50, p: int = DEFAULT_PRIME, seed: int = 0) -> Report:
    rep = Report()
    disc = discriminant(q)
    rep.constants["p"] = p
    if disc.is_zero():
        return rep.fail("degenerate_family", note="discriminant vanishes identically")
    rep.constants["disc_squarefree"] = squarefree_check(disc)
    if not rep.constants["disc_squarefree"]:
        rep.add("disc_not_squarefree", disc=str(disc))
    fp = PrimeField(p)
    qp = q.change_field(fp)
    dM = [[[e.diff(t) for e in row] for row in qp.M.entries] for t in range(q.nvars)]
    rng = random.Random(seed)
    if q.twist.base_dim == 0:
        pts = [(1,)] if disc.constant_value() == 0 else []
    else:
        pts = sample_curve_points(disc, sample_count, p, seed)
    rep.constants["disc_points_sampled"] = len(pts)
    singular = []
    for x in pts:
        x = _scale_to_chart(list(x), fp)
        for y in _singular_points_over(fp, qp, dM, x, rng):
            singular.append({"base": list(x), "fiber": list(y)})
    if singular:
        rep.fail("singular_points", count=len(singular), points=singular[:10])
    else:
        rep.add("no_singular_sample", points_checked=len(pts))
    return rep


def exhaustive_singular_points(q: TwistedQuadraticForm, p: int):
    """Brute force over P^n(F_p) x P^2(F_p); the small-p oracle for :func:`smoothness_probe`."""
    fp = PrimeField(p)
    qp = q.change_field(fp)
    dM = [[[e.diff(t) for e in row] for row in qp.M.entries] for t in range(q.nvars)]
    fibers = list(projective_points(p, 3))
    out = []
    for x in projective_points(p, q.nvars):
        m = qp.matrix_at(x)
        if linalg.det(fp, m) != 0:
            continue
        for y in fibers:
            if _quad(fp, m, y) == 0 and _is_singular(fp, qp, dM, list(x), list(y)):
                out.append((tuple(x), tuple(y)))
    return out


# discriminant data -------------------------------------------------------


def discriminant_data_compare(
    q1: TwistedQuadraticForm, q2: TwistedQuadraticForm, sample_count: int = 20, p: int = DEFAULT_PRIME, seed: int = 0
) -> Report:
    """Same discriminant divisor and same fiber ranks along it; double covers are not compared."""
    from .quadform import fiber_rank

    if q1.twist.base_dim != q2.twist.base_dim:
        raise ValueError("forms live over different bases")
    rep = Report()
    rep.constants["limitation"] = "double covers of the discriminant are not computed"
    d1, d2 = discriminant(q1), discriminant(q2)
    rep.constants["degrees"] = [d1.degree, d2.degree]
    if d1.is_zero() or d2.is_zero():
        return rep.fail("degenerate_family", first=str(d1), second=str(d2))
    c = d2.is_proportional_to(d1) if d1.field == d2.field else None
    if c is None:
        return rep.fail("different_divisors", first=str(d1), second=str(d2))
    rep.constants["c"] = d1.field.format(c)
    if q1.twist.base_dim == 0:
        rep.add("equivalent_discriminant_data", points_checked=0)
        return rep
    fp = PrimeField(p)
    a, b = q1.change_field(fp), q2.change_field(fp)
    pts = sample_curve_points(d1, sample_count, p, seed)
    for x in pts:
        r1, r2 = fiber_rank(a, x)[0], fiber_rank(b, x)[0]
        if r1 != r2:
            return rep.fail("rank_mismatch", point=list(x), ranks=[r1, r2])
    rep.add("equivalent_discriminant_data", points_checked=len(pts))
    return rep


def type5n_section_check(inst: ConicBundleInstance, samples: int = 20, p: int = DEFAULT_PRIME, seed: int = 0) -> Report:
    """Over the line {M11 = 0} the point [1:0:0] of each fiber lies on the conic."""
    from .quadform import fiber_rank

    rep = Report()
    fp = PrimeField(p)
    qp = inst.q.change_field(fp)
    line = [qp.M[0, 0].diff(i).constant_value() for i in range(3)]
    basis = linalg.nullspace(fp, [line])
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        s, t = rng.randrange(p), rng.randrange(p)
        x = [fp.norm(s * u + t * v) for u, v in zip(*basis)]
        if not any(x):
            continue
        m = qp.matrix_at(x)
        if m[0][0] != 0:
            return rep.fail("off_line", point=x)
        if linalg.det(fp, m) == 0:
            continue
        if fiber_rank(qp, x)[0] != 3:
            return rep.fail("rank", point=x)
        checked += 1
    rep.add("section_on_conic", points_checked=checked)
    return rep
