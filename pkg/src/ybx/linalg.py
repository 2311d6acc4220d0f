"""Sparse matrices over exact rationals.

Matrices that appear here (R matrices, representation matrices) are
weight-preserving and therefore very sparse; a dict-of-rows layout keeps
exact products cheap where a dense object array would not.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

__all__ = ["SparseMatrix", "embed"]


class SparseMatrix:
    __slots__ = ("shape", "rows")

    def __init__(self, shape: tuple[int, int], rows: dict[int, dict[int, Fraction]] | None = None):
        self.shape = shape
        self.rows: dict[int, dict[int, Fraction]] = {}
        for r, row in (rows or {}).items():
            clean = {c: Fraction(v) for c, v in row.items() if v}
            if clean:
                self.rows[r] = clean

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls((n, n), {r: {r: Fraction(1)} for r in range(n)})

    @classmethod
    def from_entries(cls, shape, entries: dict[tuple[int, int], Fraction]) -> "SparseMatrix":
        rows: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in entries.items():
            if v:
                rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + v
        return cls(shape, rows)

    def get(self, r: int, c: int) -> Fraction:
        return self.rows.get(r, {}).get(c, Fraction(0))

    def items(self):
        for r, row in self.rows.items():
            for c, v in row.items():
                yield (r, c), v

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict[int, dict[int, Fraction]] = {}
        for r, row in self.rows.items():
            acc: dict[int, Fraction] = {}
            for m, x in row.items():
                orow = other.rows.get(m)
                if not orow:
                    continue
                for c, y in orow.items():
                    acc[c] = acc.get(c, 0) + x * y
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseMatrix((self.shape[0], other.shape[1]), out)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            target = out.setdefault(r, {})
            for c, v in row.items():
                target[c] = target.get(c, 0) + sign * v
        return SparseMatrix(self.shape, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, s) -> "SparseMatrix":
        s = Fraction(s)
        return SparseMatrix(self.shape, {r: {c: v * s for c, v in row.items()} for r, row in self.rows.items()})

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        n2, m2 = other.shape
        out: dict[int, dict[int, Fraction]] = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                target = out.setdefault(r1 * n2 + r2, {})
                for c1, x in row1.items():
                    for c2, y in row2.items():
                        target[c1 * m2 + c2] = x * y
        return SparseMatrix((self.shape[0] * n2, self.shape[1] * m2), out)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def diff_entries(self, other: "SparseMatrix", limit: int = 10) -> list:
        """Up to ``limit`` positions where the two matrices differ."""
        out = []
        for r in sorted(set(self.rows) | set(other.rows)):
            for c in sorted(set(self.rows.get(r, {})) | set(other.rows.get(r, {}))):
                x, y = self.get(r, c), other.get(r, c)
                if x != y:
                    out.append({"row": r, "col": c, "lhs": str(x), "rhs": str(y)})
                    if len(out) >= limit:
                        return out
        return out

    def to_dense(self) -> list[list[Fraction]]:
        return [[self.get(r, c) for c in range(self.shape[1])] for r in range(self.shape[0])]


def embed(mat: SparseMatrix, dims: Sequence[int], legs: tuple[int, int]) -> SparseMatrix:
    """Lift an operator on two tensor legs to the full tensor product ``prod(dims)``.

    ``mat`` is indexed by ``row = x * dims[legs[1]] + y`` for the pair of legs
    in the order given.
    """
    p, r = legs
    d_r = dims[r]
    others = [t for t in range(len(dims)) if t not in legs]
    total = 1
    for d in dims:
        total *= d

    def flat(idx: list[int]) -> int:
        out = 0
        for t, d in enumerate(dims):
            out = out * d + idx[t]
        return out

    rows: dict[int, dict[int, Fraction]] = {}
    for rest in product(*(range(dims[t]) for t in others)):
        for (row, col), v in mat.items():
            out_idx = [0] * len(dims)
            in_idx = [0] * len(dims)
            for t, val in zip(others, rest):
                out_idx[t] = in_idx[t] = val
            out_idx[p], out_idx[r] = divmod(row, d_r)
            in_idx[p], in_idx[r] = divmod(col, d_r)
            rows.setdefault(flat(out_idx), {})[flat(in_idx)] = v
    return SparseMatrix((total, total), rows)
