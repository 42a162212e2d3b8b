"""Sparse homogeneous polynomials in x0..xn over an exact field.

A :class:`HomogeneousPoly` stands for a section of O(d) on P^n. Terms are kept
in a dict from exponent tuples to field values; zero coefficients are never
stored. Serialization lists terms in descending graded-lex order, which makes
the text form canonical.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import Field


class PolyError(ValueError):
    pass


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class HomogeneousPoly:
    __slots__ = ("field", "nvars", "terms", "degree")

    def __init__(self, field: Field, nvars: int, terms: dict | None = None):
        if nvars < 1:
            raise PolyError("need at least one variable (P^0 has x0)")
        self.field = field
        self.nvars = nvars
        clean = {}
        degree = None
        for exps, c in (terms or {}).items():
            c = field.norm(c)
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != nvars:
                raise PolyError(f"exponent vector {exps} has wrong length for {nvars} variables")
            d = sum(exps)
            if degree is None:
                degree = d
            elif d != degree:
                raise PolyError(f"non-homogeneous: monomial {_monomial_str(exps)} has degree {d}, expected {degree}")
            clean[exps] = c
        self.terms = clean
        self.degree = degree

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls(field, nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, field, nvars, terms, degree):
        # trusted fast path: terms already normalized and homogeneous
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.terms = terms
        obj.degree = degree if terms else None
        return obj

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or self.degree == 0

    def constant_value(self):
        if self.is_zero():
            return self.field.zero
        if self.degree != 0:
            raise PolyError("not a constant")
        return self.terms[(0,) * self.nvars]

    def _check(self, other: "HomogeneousPoly"):
        if self.field != other.field or self.nvars != other.nvars:
            raise PolyError("polynomials live in different rings")

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HomogeneousPoly):
            other = HomogeneousPoly.constant(self.field, self.nvars, other)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise PolyError(f"cannot add polynomials of degrees {self.degree} and {other.degree}")
        norm = self.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return HomogeneousPoly._raw(self.field, self.nvars, out, self.degree)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.norm
        return HomogeneousPoly._raw(self.field, self.nvars, {e: norm(-c) for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        if not isinstance(other, HomogeneousPoly):
            other = HomogeneousPoly.constant(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.field.norm(c)
        if c == 0:
            return HomogeneousPoly.zero(self.field, self.nvars)
        norm = self.field.norm
        return HomogeneousPoly._raw(self.field, self.nvars, {e: norm(v * c) for e, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return HomogeneousPoly.zero(self.field, self.nvars)
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        norm = self.field.norm
        out = {}
        for e, c in acc.items():
            c = norm(c)
            if c:
                out[e] = c
        return HomogeneousPoly._raw(self.field, self.nvars, out, self.degree + other.degree)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        out = HomogeneousPoly.constant(self.field, self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, HomogeneousPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == self.field.norm(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # evaluation and calculus -------------------------------------------

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise PolyError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        norm = self.field.norm
        pt = [norm(v) for v in point]
        total = 0
        for exps, c in self.terms.items():
            t = c
            for v, k in zip(pt, exps):
                if k:
                    t = t * v**k
            total += t
        return norm(total)

    def diff(self, i: int) -> "HomogeneousPoly":
        out = {}
        for exps, c in self.terms.items():
            k = exps[i]
            if k:
                e = list(exps)
                e[i] -= 1
                out[tuple(e)] = c * k
        return HomogeneousPoly(self.field, self.nvars, out)

    def change_field(self, field: Field) -> "HomogeneousPoly":
        """Coerce coefficients into another field (e.g. reduce Q -> F_p)."""
        return HomogeneousPoly(field, self.nvars, {e: field.norm(c) for e, c in self.terms.items()})

    def is_proportional_to(self, other: "HomogeneousPoly"):
        """Return c with ``self == c * other``, or None. Both nonzero."""
        self._check(other)
        if self.is_zero() or other.is_zero() or set(self.terms) != set(other.terms):
            return None
        e0 = next(iter(other.terms))
        c = self.field.div(self.terms[e0], other.terms[e0])
        return c if other.scale(c) == self else None

    # text ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            cs = self.field.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = _monomial_str(exps)
            if mono == "1":
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            pieces.append(("-" if neg else "+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HomogeneousPoly({str(self)!r}, nvars={self.nvars}, field={self.field!r})"


def _monomial_str(exps: Iterable[int]) -> str:
    parts = []
    for i, k in enumerate(exps):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts) if parts else "1"


# parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|([-+*^()/]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyError(f"unexpected character at position {pos} in {text!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("var", int(var)))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over general sparse dicts; homogeneity checked after."""

    def __init__(self, text, field, nvars):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.nvars = nvars
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolyError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise PolyError("empty polynomial string")
        p = self.expr()
        if self.i != len(self.toks):
            raise PolyError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = _dadd(acc, rhs if op == "+" else _dscale(rhs, -1))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = _dmul(acc, self.factor())
        return acc

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return _dscale(self.factor(), -1)
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise PolyError(f"exponent must be a non-negative integer in {self.text!r}")
            out = {(0,) * self.nvars: Fraction(1)}
            for _ in range(k):
                out = _dmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            c = Fraction(val)
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num" or den == 0:
                    raise PolyError(f"bad rational literal in {self.text!r}")
                c = Fraction(val, den)
            return {(0,) * self.nvars: c}
        if kind == "var":
            if val >= self.nvars:
                raise PolyError(f"variable x{val} out of range (have x0..x{self.nvars - 1})")
            e = [0] * self.nvars
            e[val] = 1
            return {tuple(e): Fraction(1)}
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise PolyError(f"unexpected token {val!r} in {self.text!r}")


def _dadd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def _dscale(a, s):
    return {e: c * s for e, c in a.items()}


def _dmul(a, b):
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def parse_poly(text: str, field: Field, nvars: int) -> HomogeneousPoly:
    """Parse e.g. ``"3*x0^2 - x1*x2"``; non-homogeneous input names the offending monomial."""
    raw = _Parser(text, field, nvars).parse()
    terms = {e: field.norm(c) for e, c in raw.items()}
    terms = {e: c for e, c in terms.items() if c != 0}
    if terms:
        ref = max(terms, key=_grlex_key)
        for e in sorted(terms, key=_grlex_key, reverse=True):
            if sum(e) != sum(ref):
                raise PolyError(
                    f"non-homogeneous polynomial {text!r}: monomial {_monomial_str(e)} has degree "
                    f"{sum(e)}, leading monomial {_monomial_str(ref)} has degree {sum(ref)}"
                )
    return HomogeneousPoly(field, nvars, terms)


def monomials(nvars: int, degree: int):
    """All exponent vectors of the given total degree, descending grlex."""
    if degree < 0:
        return []
    if nvars == 1:
        return [(degree,)]
    out = []
    for k in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - k):
            out.append((k,) + rest)
    return out


def random_poly(field: Field, nvars: int, degree: int, rng, density: float = 1.0) -> HomogeneousPoly:
    """Random homogeneous form; ``density`` < 1 drops monomials at random."""
    terms = {}
    for e in monomials(nvars, degree):
        if density >= 1.0 or rng.random() < density:
            terms[e] = field.random_element(rng)
    return HomogeneousPoly(field, nvars, terms)
