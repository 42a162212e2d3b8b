"""Multivariate gcd by content / primitive-part recursion on the last variable.

Internally polynomials are plain dicts ``{exponent tuple: field value}``;
the public helpers accept and return :class:`HomogeneousPoly`. Homogeneous
inputs are split into their x0-power and their restriction to the chart
x0 = 1, where the recursion runs with one variable fewer; the result is
rehomogenized afterwards.
"""

from __future__ import annotations

from .fields import Field
from .poly import HomogeneousPoly, PolyError


def _clean(field, d):
    norm = field.norm
    out = {}
    for e, c in d.items():
        c = norm(c)
        if c:
            out[e] = c
    return out


def _mul(field, a, b):
    acc: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            acc[e] = acc.get(e, 0) + c1 * c2
    return _clean(field, acc)


def _sub(field, a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) - c
    return _clean(field, out)


def _lead(d):
    return max(d)


def _div_exact(field, a, b):
    """a / b assuming b divides a; lex leading terms drive the division."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lb = _lead(b)
    inv = field.inv(b[lb])
    q: dict = {}
    r = dict(a)
    while r:
        lr = _lead(r)
        shift = tuple(x - y for x, y in zip(lr, lb))
        if any(s < 0 for s in shift):
            raise PolyError("inexact division")
        c = field.norm(r[lr] * inv)
        q[shift] = c
        r = _sub(field, r, _mul(field, {shift: c}, b))
    return q


def _split(d, k):
    """Coefficients in variable k: {deg: poly with x_k exponent zeroed}."""
    out: dict = {}
    for e, c in d.items():
        dk = e[k]
        e0 = e[:k] + (0,) + e[k + 1:]
        out.setdefault(dk, {})[e0] = c
    return out


def _xpow(nv, k, n):
    e = [0] * nv
    e[k] = n
    return tuple(e)


def _monic(field, d):
    if not d:
        return d
    inv = field.inv(d[_lead(d)])
    return {e: field.norm(c * inv) for e, c in d.items()}


def _gcd(field, a, b, k, kmin=0):
    """gcd in variables x_kmin..x_k (others absent), monic in lex order."""
    if not a:
        return _monic(field, b)
    if not b:
        return _monic(field, a)
    nv = len(next(iter(a)))
    if k < kmin:
        return {(0,) * nv: field.one}
    ca = _content(field, a, k, kmin)
    cb = _content(field, b, k, kmin)
    c = _gcd(field, ca, cb, k - 1, kmin)
    f = _div_exact(field, a, ca)
    g = _div_exact(field, b, cb)
    deg = lambda d: max(e[k] for e in d)
    if deg(f) < deg(g):
        f, g = g, f
    while g:
        if deg(g) == 0:
            f = {(0,) * nv: field.one}
            break
        r = _prem(field, f, g, k)
        f, g = g, (_monic(field, _primitive(field, r, k, kmin)) if r else r)
    return _monic(field, _mul(field, c, f))


def _content(field, d, k, kmin=0):
    parts = sorted(_split(d, k).values(), key=len)
    out = parts[0]
    for p in parts[1:]:
        if len(out) == 1 and all(v == 0 for v in next(iter(out))):
            break
        out = _gcd(field, out, p, k - 1, kmin)
    return _monic(field, out)


def _primitive(field, d, k, kmin=0):
    return _div_exact(field, d, _content(field, d, k, kmin))


def _prem(field, f, g, k):
    nv = len(next(iter(f)))
    gs = _split(g, k)
    dg = max(gs)
    lcg = gs[dg]
    r = f
    while r:
        rs = _split(r, k)
        dr = max(rs)
        if dr < dg:
            break
        lcr = rs[dr]
        r = _sub(field, _mul(field, lcg, r), _mul(field, _mul(field, lcr, {_xpow(nv, k, dr - dg): field.one}), g))
    return r


def _x0_valuation(d):
    return min(e[0] for e in d)


def _dehomogenize(d):
    return {(0,) + e[1:]: c for e, c in d.items()}


def poly_gcd(f: HomogeneousPoly, g: HomogeneousPoly) -> HomogeneousPoly:
    """Homogeneous gcd: x0-part by valuation, the rest on the chart x0 = 1."""
    if f.field != g.field or f.nvars != g.nvars:
        raise PolyError("polynomials live in different rings")
    field = f.field
    if f.is_zero() or g.is_zero():
        h = g if f.is_zero() else f
        return HomogeneousPoly(field, f.nvars, _monic(field, h.terms))
    v = min(_x0_valuation(f.terms), _x0_valuation(g.terms))
    if f.nvars == 1:
        return HomogeneousPoly(field, 1, {(v,): field.one})
    a = _dehomogenize({e: c for e, c in f.terms.items()})
    b = _dehomogenize({e: c for e, c in g.terms.items()})
    d = _gcd(field, a, b, f.nvars - 1, kmin=1)
    top = max(sum(e) for e in d)
    d = {(top - sum(e) + v,) + e[1:]: c for e, c in d.items()}
    return HomogeneousPoly(field, f.nvars, _monic(field, d))


def gcd_many(polys) -> HomogeneousPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise PolyError("gcd of zero polynomials")
    out = polys[0]
    for p in polys[1:]:
        if out.is_constant():
            break
        out = poly_gcd(out, p)
    return HomogeneousPoly(out.field, out.nvars, _monic(out.field, out.terms))


def divides(g: HomogeneousPoly, f: HomogeneousPoly):
    """Return f / g if g divides f exactly, else None."""
    try:
        q = _div_exact(f.field, f.terms, g.terms)
    except PolyError:
        return None
    return HomogeneousPoly(f.field, f.nvars, q)


def squarefree_check(f: HomogeneousPoly) -> bool:
    """True iff gcd(f, df/dx_0, ..., df/dx_n) is a nonzero constant."""
    if f.is_zero():
        raise PolyError("squarefree_check of the zero polynomial")
    return gcd_many([f] + [f.diff(i) for i in range(f.nvars)]).is_constant()
