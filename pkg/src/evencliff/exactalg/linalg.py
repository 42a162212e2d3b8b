"""Exact dense linear algebra over a :class:`Field` (lists of lists of raw values)."""

from __future__ import annotations

from itertools import permutations

from .fields import Field


def rref(field: Field, rows):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    norm = field.norm
    m = [[norm(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [norm(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(field: Field, rows) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: Field, rows, ncols: int | None = None):
    """Basis of {v : rows * v = 0} as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.norm(-m[r][f])
        basis.append(v)
    return basis


def det(field: Field, mat) -> object:
    """Determinant by elimination."""
    n = len(mat)
    m = [[field.norm(v) for v in row] for row in mat]
    out = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = field.norm(-out)
        out = field.norm(out * m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = field.norm(m[i][c] * inv)
                m[i] = [field.norm(a - f * b) for a, b in zip(m[i], m[c])]
    return out


def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_leibniz(mat, one=1, zero=0):
    """Permutation-sum determinant; works for any commutative entries with + and *."""
    n = len(mat)
    total = zero
    for perm in permutations(range(n)):
        term = one
        for i in range(n):
            term = term * mat[i][perm[i]]
        total = total + term if perm_sign(perm) > 0 else total - term
    return total


def matmul(field: Field, a, b):
    return [[field.norm(sum(a[i][k] * b[k][j] for k in range(len(b)))) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]
