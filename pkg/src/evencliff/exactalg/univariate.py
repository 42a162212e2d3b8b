"""Dense univariate polynomials over F_p (coefficient lists, low degree first).

Only what is needed to find F_p-rational roots: used to sample points on
discriminant curves by restricting to random lines.
"""

from __future__ import annotations

import random


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def divmod_(a, b, p):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1] * inv % p
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] = (r[k + i] - c * y) % p
        r = trim(r)
    return trim(q), r


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def powmod(base, e, mod, p):
    out = [1]
    base = divmod_(base, mod, p)[1]
    while e:
        if e & 1:
            out = divmod_(mul(out, base, p), mod, p)[1]
        base = divmod_(mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def roots(a, p, rng: random.Random | None = None):
    """All distinct roots in F_p, sorted (Cantor-Zassenhaus equal-degree splitting)."""
    a = trim([x % p for x in a])
    if not a:
        raise ValueError("zero polynomial has every element as a root")
    rng = rng or random.Random(0)
    # product of the distinct linear factors: gcd(a, x^p - x)
    h = powmod([0, 1], p, a, p)
    h = h + [0] * max(0, 2 - len(h))
    h[1] = (h[1] - 1) % p
    g = gcd(a, trim(h), p)
    out = []
    _split(g, p, rng, out)
    return sorted(out)


def _split(g, p, rng, out):
    g = trim(g)
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append((-g[0]) * pow(g[1], -1, p) % p)
        return
    while True:
        d = rng.randrange(p)
        h = powmod([d, 1], (p - 1) // 2, g, p)
        h = list(h) or [0]
        h[0] = (h[0] - 1) % p
        f = gcd(g, trim(h), p)
        if 1 < len(f) < len(g):
            _split(f, p, rng, out)
            _split(divmod_(g, f, p)[0], p, rng, out)
            return
