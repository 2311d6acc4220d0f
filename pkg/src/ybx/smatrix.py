"""Matrix-product solutions S(z) of the Yang-Baxter equation.

``S(z)^{a,b}_{i,j}`` is the trace over an auxiliary Fock space of a product
of 3D R (``eps_t = 0``) and 3D L (``eps_t = 1``) elements weighted by
``z**h``. Conservation ties every auxiliary index to a single free one, so
each element is a finite sum of geometric series; we carry it in closed
form as a :class:`~ybx.exactalg.SpectralSum`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .crystal import CrystalVector, comb_r, enumerate_crystal, parse_eps
from .errors import PoleAtPoint
from .exactalg import (
    ZERO,
    LaurentPoly,
    Monomial,
    QxPoly,
    SpectralSum,
    Zero,
    q_binomial,
    scaled_q0_limit,
    spectral_to_fraction,
)
from .linalg import SparseMatrix, embed
from .report import Report

__all__ = [
    "SBlock",
    "state_basis",
    "s_element",
    "s_block",
    "evaluate_block",
    "verify_ybe_point",
    "sweep_ybe",
    "s_scaled_limit",
    "verify_limit_theorem",
    "random_rational",
]

_QX_ONE = QxPoly.constant(1)


def _valid_state(eps: Sequence[int], m: Sequence[int]) -> bool:
    return len(m) == len(eps) and all(x >= 0 and (e == 0 or x <= 1) for e, x in zip(eps, m))


def state_basis(eps: Sequence[int], level: int) -> list[tuple[int, ...]]:
    """Basis of W_level as occupation tuples in ascending lexicographic order."""
    return [v.a for v in enumerate_crystal(tuple(eps), level)]


def _r_layer(a, b, i, j, d_out, d_in) -> QxPoly:
    """R element with output aux index ``c + d_out`` and input ``c + d_in`` as a polynomial in X = q^c."""
    total = QxPoly()
    for mu in range(0, min(i, b) + 1):
        lam = b - mu
        if lam > j:
            continue
        q_exp = i * (d_out - j) + (d_in + 1) * lam + mu * (mu - d_in)
        term = QxPoly.monomial(-1 if lam % 2 else 1, q_exp, i + lam - mu)
        for s in range(1, mu + 1):
            term = term * (_QX_ONE - QxPoly.monomial(1, 2 * d_out + 2 * s, 2))
        term = term * QxPoly.from_laurent(q_binomial(i, mu, 2) * q_binomial(j, lam, 2))
        total = total + term
    return total


def _l_layer(a, b, i, j, d_in) -> QxPoly:
    """L element with input aux index ``c + d_in`` as a polynomial in X = q^c."""
    key = (a, b, i, j)
    if key in ((0, 0, 0, 0), (1, 1, 1, 1)):
        return _QX_ONE
    if key == (0, 1, 0, 1):
        return QxPoly.monomial(-1, d_in + 1, 1)
    if key == (1, 0, 1, 0):
        return QxPoly.monomial(1, d_in, 1)
    if key == (0, 1, 1, 0):
        return _QX_ONE - QxPoly.monomial(1, 2 * d_in, 2)
    if key == (1, 0, 0, 1):
        return _QX_ONE
    return QxPoly()


@lru_cache(maxsize=None)
def _s_element_cached(eps, a, b, i, j) -> SpectralSum:
    n = len(eps)
    # offsets[t] = sum_{s > t} (j_s - b_s); aux index c_t = c + offsets[t]
    offsets = [0] * (n + 1)
    for t in range(n - 1, -1, -1):
        offsets[t] = offsets[t + 1] + j[t] - b[t]
    c_min = max(0, -min(offsets))
    product = _QX_ONE
    for t in range(n):
        d_out, d_in = offsets[t], offsets[t + 1]
        if eps[t] == 0:
            layer = _r_layer(a[t], b[t], i[t], j[t], d_out, d_in)
        else:
            layer = _l_layer(a[t], b[t], i[t], j[t], d_in)
        if not layer:
            return SpectralSum()
        product = product * layer
    terms = []
    for k, tau in product.x_coefficients().items():
        terms.append((c_min, k, tau.shift(k * c_min)))
    return SpectralSum(terms)


def s_element(eps: Sequence[int], a: Sequence[int], b: Sequence[int],
              i: Sequence[int], j: Sequence[int]) -> SpectralSum:
    """Closed form of ``S(z)^{a,b}_{i,j}`` for signature ``eps``.

    Returns the empty sum when the selection rule ``a + b = i + j``,
    ``|a| = |i|``, ``|b| = |j|`` fails.
    """
    eps = parse_eps(eps)
    a, b, i, j = (tuple(int(x) for x in v) for v in (a, b, i, j))
    for v in (a, b, i, j):
        if not _valid_state(eps, v):
            raise ValueError(f"state {v} is not a basis vector for eps={eps}")
    if sum(a) != sum(i) or sum(b) != sum(j) or any(x + y != u + w for x, y, u, w in zip(a, b, i, j)):
        return SpectralSum()
    return _s_element_cached(eps, a, b, i, j)


@dataclass
class SBlock:
    """All nonzero elements of ``S_{l,m}(z)`` keyed by ``((a, b), (i, j))``."""

    eps: tuple[int, ...]
    l: int
    m: int
    basis_l: list[tuple[int, ...]]
    basis_m: list[tuple[int, ...]]
    entries: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis_l) * len(self.basis_m)

    def index(self, x: tuple[int, ...], y: tuple[int, ...]) -> int:
        return self._pos_l[x] * len(self.basis_m) + self._pos_m[y]

    def __post_init__(self):
        self._pos_l = {v: n for n, v in enumerate(self.basis_l)}
        self._pos_m = {v: n for n, v in enumerate(self.basis_m)}

    def degree_summary(self) -> dict:
        """Observed numerator/denominator sizes over the block."""
        max_num_q = max_num_z = max_den = 0
        for s in self.entries.values():
            num, slopes = spectral_to_fraction(s)
            lo, hi = num.q_degree_range() or (0, 0)
            max_num_q = max(max_num_q, hi - lo)
            max_num_z = max(max_num_z, num.z_degree() or 0)
            max_den = max(max_den, len(slopes))
        return {"numerator_q_span": max_num_q, "numerator_z_degree": max_num_z,
                "denominator_factors": max_den}

    def to_json(self) -> dict:
        return {
            "eps": "".join(map(str, self.eps)),
            "l": self.l,
            "m": self.m,
            "basis_l": [list(v) for v in self.basis_l],
            "basis_m": [list(v) for v in self.basis_m],
            "entries": [
                {"a": list(a), "b": list(b), "i": list(i), "j": list(j), "value": s.to_json()}
                for ((a, b), (i, j)), s in sorted(self.entries.items())
            ],
        }


def s_block(eps: Sequence[int], l: int, m: int) -> SBlock:
    eps = parse_eps(eps)
    return _s_block_cached(eps, l, m)


@lru_cache(maxsize=None)
def _s_block_cached(eps, l, m) -> SBlock:
    basis_l = state_basis(eps, l)
    basis_m = state_basis(eps, m)
    set_m = set(basis_m)
    entries = {}
    for i in basis_l:
        for j in basis_m:
            for a in basis_l:
                b = tuple(x + y - z for x, y, z in zip(i, j, a))
                if b not in set_m:
                    continue
                s = _s_element_cached(eps, a, b, i, j)
                if s:
                    entries[((a, b), (i, j))] = s
    return SBlock(eps, l, m, basis_l, basis_m, entries)


def evaluate_block(block: SBlock, q, z) -> SparseMatrix:
    """Exact rational matrix of ``S_{l,m}(z)`` on W_l (x) W_m; raises PoleAtPoint."""
    q, z = Fraction(q), Fraction(z)
    entries = {}
    for ((a, b), (i, j)), s in block.entries.items():
        entries[(block.index(a, b), block.index(i, j))] = s.evaluate(q, z)
    return SparseMatrix.from_entries((block.dim, block.dim), entries)


def verify_ybe_point(eps: Sequence[int], k: int, l: int, m: int, q, x, y) -> Report:
    """``S12(x) S13(xy) S23(y) = S23(y) S13(xy) S12(x)`` on W_k (x) W_l (x) W_m at one rational point."""
    eps = parse_eps(eps)
    q, x, y = Fraction(q), Fraction(x), Fraction(y)
    b12, b13, b23 = s_block(eps, k, l), s_block(eps, k, m), s_block(eps, l, m)
    dims = (len(b12.basis_l), len(b12.basis_m), len(b23.basis_m))
    point = {"q": str(q), "x": str(x), "y": str(y)}
    details = {"eps": "".join(map(str, eps)), "levels": [k, l, m], "point": point, "dims": list(dims)}
    if 0 in dims:
        return Report("ybe-s", "Yang-Baxter equation for S(z)", True, [], 0, details)
    s12 = embed(evaluate_block(b12, q, x), dims, (0, 1))
    s13 = embed(evaluate_block(b13, q, x * y), dims, (0, 2))
    s23 = embed(evaluate_block(b23, q, y), dims, (1, 2))
    lhs = s12 @ s13 @ s23
    rhs = s23 @ s13 @ s12
    mismatches = lhs.diff_entries(rhs)
    return Report("ybe-s", "Yang-Baxter equation for S(z)", not mismatches, mismatches, 1, details)


def random_rational(rng: random.Random, max_den: int = 12, positive: bool = False) -> Fraction:
    """A random nonzero rational with small denominator, avoiding +-1."""
    while True:
        num = rng.randint(1 if positive else -max_den, max_den)
        den = rng.randint(1, max_den)
        v = Fraction(num, den)
        if v not in (0, 1, -1):
            return v


def sweep_ybe(eps: Sequence[int], max_total: int = 5, points: int = 5, seed: int = 0,
              levels: Iterable[tuple[int, int, int]] | None = None) -> Report:
    """YBE at random rational points for every level triple with ``k + l + m <= max_total``."""
    eps = parse_eps(eps)
    rng = random.Random(seed)
    cap = len(eps) if all(eps) else max_total
    if levels is None:
        levels = [t for t in itertools.product(range(max_total + 1), repeat=3)
                  if sum(t) <= max_total and max(t) <= cap]
    reports = []
    for k, l, m in levels:
        done = 0
        while done < points:
            q, x, y = random_rational(rng), random_rational(rng), random_rational(rng)
            try:
                reports.append(verify_ybe_point(eps, k, l, m, q, x, y))
            except PoleAtPoint:
                continue
            done += 1
    mismatches = [r.details | {"diff": r.mismatches} for r in reports if not r.equal]
    return Report("ybe-s", "Yang-Baxter equation for S(z)", not mismatches, mismatches[:10],
                  len(reports), {"eps": "".join(map(str, eps)), "max_total": max_total, "points": points})


def s_scaled_limit(eps: Sequence[int], l: int, m: int, a, b, i, j) -> Zero | Monomial:
    """``(1 - z)**[l == m] * lim_{q -> 0} q**(-(m - l)_+) * S^{a,b}_{i,j}(z)``.

    For ``l < m`` the limit carries the sign ``(-1)**(m - l)``, so a ``-z**H``
    leading term is accepted there and reported via ``Monomial.sign``.
    """
    a, b, i, j = (tuple(v) for v in (a, b, i, j))
    if sum(i) != l or sum(a) != l or sum(j) != m or sum(b) != m:
        raise ValueError("levels of a, i must be l and of b, j must be m")
    s = s_element(eps, a, b, i, j)
    return scaled_q0_limit(s, max(m - l, 0), 1 if l == m else 0, signed=l < m)


def verify_limit_theorem(eps: Sequence[int], l: int, m: int,
                         columns: Iterable[tuple[Sequence[int], Sequence[int]]] | None = None) -> Report:
    """Compare every scaled q -> 0 limit with ``z**H * [R(i (x) j) = b (x) a]``.

    ``columns`` restricts the check to the listed ``(i, j)``; by default all
    of B_l x B_m are used.
    """
    eps = parse_eps(eps)
    basis_l = state_basis(eps, l)
    set_m = set(state_basis(eps, m))
    if columns is None:
        columns = list(itertools.product(basis_l, state_basis(eps, m)))
    # l < m: the limit is (-1)**(m - l) z**H, not z**H
    sign = -1 if l < m and (m - l) % 2 else 1
    mismatches = []
    nonzero = []
    count = 0
    for i, j in columns:
        i, j = tuple(i), tuple(j)
        rb, ra, h, _ = comb_r(CrystalVector(eps, i), CrystalVector(eps, j))
        for a in basis_l:
            b = tuple(x + y - w for x, y, w in zip(i, j, a))
            if b not in set_m:
                continue
            count += 1
            got = s_scaled_limit(eps, l, m, a, b, i, j)
            want = Monomial(h, sign) if (ra.a, rb.a) == (a, b) else ZERO
            if got != want:
                mismatches.append({"i": list(i), "j": list(j), "a": list(a), "b": list(b),
                                   "limit": str(got), "expected": str(want)})
            elif isinstance(got, Monomial):
                nonzero.append({"i": list(i), "j": list(j), "a": list(a), "b": list(b), "H": got.power})
    return Report("limit-theorem", "q -> 0 limit of S(z) equals z^H times combinatorial R",
                  not mismatches, mismatches[:20], count,
                  {"eps": "".join(map(str, eps)), "l": l, "m": m, "sign": sign, "nonzero": nonzero[:50]})
