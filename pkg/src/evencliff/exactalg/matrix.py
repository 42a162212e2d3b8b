"""Matrices of homogeneous polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .poly import HomogeneousPoly, PolyError


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[HomogeneousPoly, ...], ...]
    symmetric: bool = False

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise PolyError("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise PolyError("ragged matrix")
        if self.symmetric:
            for i in range(self.rows):
                for j in range(i + 1, self.cols):
                    if rows[i][j] != rows[j][i]:
                        raise PolyError(f"matrix flagged symmetric but entry ({i + 1},{j + 1}) != ({j + 1},{i + 1})")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def field(self):
        return self.entries[0][0].field

    @property
    def nvars(self) -> int:
        return self.entries[0][0].nvars

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def eval(self, point: Sequence):
        return [[e.eval(point) for e in row] for row in self.entries]

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def congruence(self, g) -> "PolyMatrix":
        """G^T M G for a constant scalar matrix G (raw field values)."""
        n = self.rows
        field = self.field
        zero = HomogeneousPoly.zero(field, self.nvars)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    for m in range(n):
                        c = field.norm(g[k][i] * g[m][j])
                        if c:
                            acc = acc + self.entries[k][m].scale(c)
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, symmetric=self.symmetric)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[e.scale(c) for e in row] for row in self.entries], symmetric=self.symmetric)


def det3(m: PolyMatrix) -> HomogeneousPoly:
    """Cofactor expansion along the first row; rejects degree-inconsistent input."""
    if (m.rows, m.cols) != (3, 3):
        raise PolyError("det3 needs a 3x3 matrix")
    e = m.entries
    field, nvars = m.field, m.nvars
    terms = [
        (e[0][0], e[1][1], e[2][2], 1),
        (e[0][1], e[1][2], e[2][0], 1),
        (e[0][2], e[1][0], e[2][1], 1),
        (e[0][2], e[1][1], e[2][0], -1),
        (e[0][0], e[1][2], e[2][1], -1),
        (e[0][1], e[1][0], e[2][2], -1),
    ]
    degrees = set()
    for a, b, c, _ in terms:
        if not (a.is_zero() or b.is_zero() or c.is_zero()):
            degrees.add(a.degree + b.degree + c.degree)
    if len(degrees) > 1:
        raise PolyError(f"degree-inconsistent matrix: permutation terms have degrees {sorted(degrees)}")
    out = HomogeneousPoly.zero(field, nvars)
    for a, b, c, s in terms:
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        t = a * b * c
        out = out + t if s > 0 else out - t
    return out


def rank_at(m: PolyMatrix, point: Sequence) -> int:
    if len(point) != m.nvars:
        raise PolyError(f"point has {len(point)} coordinates, matrix entries have {m.nvars} variables")
    return linalg.rank(m.field, m.eval(point))
