"""Truncated Fock-space matrices for the q-oscillator generators.

A :class:`FockMatrix` with cutoff ``N`` represents an operator on
``span{|0>, ..., |N-1>}``; entry ``[m', m]`` is ``<m'| op |m>``. Raising past
the top state is dropped (``a+ |N-1> = 0``), so a product is exact only on
columns whose intermediate images stay below the cutoff. Every check here
states its validity window explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactalg import LaurentPoly, q_binomial
from .report import Report

__all__ = [
    "FockMatrix",
    "generator_matrix",
    "identity",
    "check_osc_relations",
    "ropp_operator",
    "ropp_window",
]

_ZERO = LaurentPoly()


def _zeros(n: int) -> np.ndarray:
    arr = np.empty((n, n), dtype=object)
    arr.fill(_ZERO)
    return arr


@dataclass(frozen=True, eq=False)
class FockMatrix:
    entries: np.ndarray

    @property
    def cutoff(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx) -> LaurentPoly:
        return self.entries[idx]

    def __matmul__(self, other: "FockMatrix") -> "FockMatrix":
        n = self.cutoff
        out = _zeros(n)
        a, b = self.entries, other.entries
        for r in range(n):
            for c in range(n):
                acc = _ZERO
                for m in range(n):
                    x = a[r, m]
                    if x:
                        y = b[m, c]
                        if y:
                            acc = acc + x * y
                out[r, c] = acc
        return FockMatrix(out)

    def __add__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.entries + other.entries)

    def __sub__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.entries + (-1) * other.entries)

    def scale(self, p: LaurentPoly | int) -> "FockMatrix":
        out = _zeros(self.cutoff)
        for idx, v in np.ndenumerate(self.entries):
            out[idx] = v * p
        return FockMatrix(out)

    def __pow__(self, n: int) -> "FockMatrix":
        out = identity(self.cutoff)
        for _ in range(n):
            out = out @ self
        return out

    def agrees_on(self, other: "FockMatrix", columns) -> bool:
        """Equality restricted to the given input columns (all rows)."""
        return all(self.entries[r, c] == other.entries[r, c]
                   for c in columns for r in range(self.cutoff))

    def to_json(self) -> list:
        return [[v.to_json() for v in row] for row in self.entries]


def identity(cutoff: int) -> FockMatrix:
    out = _zeros(cutoff)
    for m in range(cutoff):
        out[m, m] = LaurentPoly.constant(1)
    return FockMatrix(out)


def generator_matrix(name: str, cutoff: int) -> FockMatrix:
    """Matrix of ``aplus``, ``aminus``, ``k`` or ``h`` truncated at ``cutoff`` states."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    out = _zeros(cutoff)
    for m in range(cutoff):
        if name == "aplus":
            if m + 1 < cutoff:
                out[m + 1, m] = LaurentPoly.constant(1)
        elif name == "aminus":
            if m >= 1:
                out[m - 1, m] = 1 - LaurentPoly.q(2 * m)
        elif name == "k":
            out[m, m] = LaurentPoly.q(m)
        elif name == "h":
            out[m, m] = LaurentPoly.constant(m)
        else:
            raise ValueError(f"unknown generator {name!r}")
    return FockMatrix(out)


def check_osc_relations(cutoff: int, aminus: FockMatrix | None = None) -> Report:
    """Check the q-oscillator relations on columns ``m <= cutoff - 2``.

    ``aminus`` may be replaced to run a negative control.
    """
    if cutoff < 3:
        raise ValueError("cutoff must be >= 3")
    ap = generator_matrix("aplus", cutoff)
    am = aminus if aminus is not None else generator_matrix("aminus", cutoff)
    k = generator_matrix("k", cutoff)
    one = identity(cutoff)
    q = LaurentPoly.q()
    qinv = LaurentPoly.q(-1)
    window = range(cutoff - 1)
    relations = {
        "k a+ = q a+ k": (k @ ap, (ap @ k).scale(q)),
        "k a- = q^-1 a- k": (k @ am, (am @ k).scale(qinv)),
        "a+ a- = 1 - k^2": (ap @ am, one - k @ k),
        "a- a+ = 1 - q^2 k^2": (am @ ap, one - (k @ k).scale(q * q)),
    }
    results = {name: lhs.agrees_on(rhs, window) for name, (lhs, rhs) in relations.items()}
    return Report(
        check="osc-relations",
        identity="q-oscillator commutation relations",
        equal=all(results.values()),
        mismatches=[name for name, ok in results.items() if not ok],
        checked=len(results),
        details={"relations": results, "cutoff": cutoff, "window_max_state": cutoff - 2},
    )


def ropp_window(j: int, cutoff: int) -> range:
    """Input states for which the truncated operator R^{a,b}_{i,j} is exact.

    The product raises by at most ``j`` before lowering, so inputs up to
    ``cutoff - 1 - j`` never touch the truncation.
    """
    return range(max(cutoff - j, 0))


def ropp_operator(a: int, b: int, i: int, j: int, cutoff: int) -> FockMatrix:
    """The Fock-space operator ``R^{a,b}_{i,j}`` built from powers of a+, a-, k."""
    if a + b != i + j or min(a, b, i, j) < 0:
        return FockMatrix(_zeros(cutoff))
    ap = generator_matrix("aplus", cutoff)
    am = generator_matrix("aminus", cutoff)
    k = generator_matrix("k", cutoff)
    total = FockMatrix(_zeros(cutoff))
    for mu in range(0, min(i, b) + 1):
        lam = b - mu
        if lam > j:
            continue
        coeff = q_binomial(i, mu, 2) * q_binomial(j, lam, 2)
        coeff = coeff.shift(lam + mu * mu - i * b) * (-1 if lam % 2 else 1)
        op = (am ** mu) @ (ap ** (j - lam)) @ (k ** (i + lam - mu))
        total = total + op.scale(coeff)
    return total
