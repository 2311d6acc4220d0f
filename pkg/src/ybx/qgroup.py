"""The generalized quantum group U_A(eps) and its representations on W_l.

Generators are indexed by ``i`` in ``Z_n``. Box ``i`` (1-based, so ``i = 0``
means box ``n``) is stored at tuple position ``(i - 1) % n``. Everything is
evaluated at exact rational points; nothing here is symbolic in ``q``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .crystal import parse_eps
from .errors import DegenerateParameter, PoleAtPoint
from .exactalg import as_fraction
from .linalg import SparseMatrix
from .report import Report, merge
from .smatrix import evaluate_block, random_rational, s_block, state_basis

__all__ = [
    "AlgebraParams",
    "RepMatrices",
    "q_int",
    "rep_matrices",
    "check_algebra_relations",
    "coproduct_action",
    "verify_intertwiner",
    "random_weight_preserving",
    "sweep_qgroup",
    "GENERATOR_KINDS",
]

GENERATOR_KINDS = ("e", "f", "k")


def _check_q(q: Fraction) -> None:
    if q in (0, 1, -1):
        raise DegenerateParameter(f"q = {q} makes the q-integers ill-defined")


def q_int(m: int, q) -> Fraction:
    """``[m] = (q^m - q^-m) / (q - q^-1)``."""
    q = as_fraction(q)
    _check_q(q)
    return (q**m - q**-m) / (q - 1 / q)


@dataclass(frozen=True)
class AlgebraParams:
    """Structure constants ``q_i`` and ``D_{i,j}`` at a rational ``q``."""

    eps: tuple[int, ...]
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", parse_eps(self.eps))
        object.__setattr__(self, "q", as_fraction(self.q))
        _check_q(self.q)

    @property
    def n(self) -> int:
        return len(self.eps)

    def box(self, i: int) -> int:
        """Tuple position of box ``i``."""
        return (i - 1) % self.n

    def q_box(self, i: int) -> Fraction:
        e = self.eps[self.box(i)]
        return (-1) ** e * self.q ** (1 - 2 * e)

    def D(self, i: int, j: int) -> Fraction:
        n = self.n
        shared = {i % n, (i + 1) % n} & {j % n, (j + 1) % n}
        power = 1 if i % n == j % n else -1
        out = Fraction(1)
        for k in shared:
            out *= self.q_box(k) ** power
        return out


@dataclass
class RepMatrices:
    """Matrices of ``e_i, f_i, k_i, k_i^{-1}`` on W_l, keyed by ``(kind, i)``."""

    params: AlgebraParams
    level: int
    x: Fraction
    basis: list[tuple[int, ...]]
    mats: dict

    def __getitem__(self, key) -> SparseMatrix:
        return self.mats[key]

    @property
    def dim(self) -> int:
        return len(self.basis)


def rep_matrices(eps: Sequence[int], l: int, q, x) -> RepMatrices:
    """The representation ``pi^(l)_x`` as exact matrices on the weight basis of W_l."""
    params = AlgebraParams(eps, q)
    x = as_fraction(x)
    if x == 0:
        raise DegenerateParameter("x = 0: f_0 carries x^-1")
    eps, q, n = params.eps, params.q, params.n
    basis = state_basis(eps, l)
    pos = {v: r for r, v in enumerate(basis)}
    dim = len(basis)
    mats = {}
    for i in range(n):
        p, p1 = params.box(i), params.box(i + 1)
        qi, qi1 = params.q_box(i), params.q_box(i + 1)
        e_rows, f_rows, k_diag = {}, {}, {}
        for c, m in enumerate(basis):
            k_diag[c] = qi ** -m[p] * qi1 ** m[p1]
            if n == 1:
                continue
            # e_i: move a particle from box i to box i+1; f_i the reverse
            tgt = list(m)
            tgt[p] -= 1
            tgt[p1] += 1
            r = pos.get(tuple(tgt))
            if r is not None and m[p]:
                e_rows.setdefault(r, {})[c] = (x if i == 0 else 1) * q_int(m[p], q)
            tgt = list(m)
            tgt[p] += 1
            tgt[p1] -= 1
            r = pos.get(tuple(tgt))
            if r is not None and m[p1]:
                f_rows.setdefault(r, {})[c] = (1 / x if i == 0 else 1) * q_int(m[p1], q)
        mats[("e", i)] = SparseMatrix((dim, dim), e_rows)
        mats[("f", i)] = SparseMatrix((dim, dim), f_rows)
        mats[("k", i)] = SparseMatrix((dim, dim), {c: {c: v} for c, v in k_diag.items()})
        mats[("kinv", i)] = SparseMatrix((dim, dim), {c: {c: 1 / v} for c, v in k_diag.items()})
    return RepMatrices(params, l, x, basis, mats)


def check_algebra_relations(eps: Sequence[int], l: int, q, x, rep: RepMatrices | None = None) -> Report:
    """Check the defining relations of U_A on ``pi^(l)_x`` as exact matrix identities.

    Pass a modified ``rep`` to run a negative control.
    """
    if rep is None:
        rep = rep_matrices(eps, l, q, x)
    params = rep.params
    n, q = params.n, params.q
    one = SparseMatrix.identity(rep.dim)
    zero = SparseMatrix((rep.dim, rep.dim))
    mismatches = []
    checked = 0

    def check(name, lhs, rhs):
        nonlocal checked
        checked += 1
        if lhs != rhs:
            mismatches.append({"relation": name, "entries": lhs.diff_entries(rhs, 3)})

    for i in range(n):
        k, kinv = rep[("k", i)], rep[("kinv", i)]
        check(f"k_{i} k_{i}^-1 = 1", k @ kinv, one)
        check(f"k_{i}^-1 k_{i} = 1", kinv @ k, one)
        for j in range(n):
            kj = rep[("k", j)]
            check(f"[k_{i}, k_{j}] = 0", k @ kj, kj @ k)
            d = params.D(i, j)
            check(f"k_{i} e_{j} = D e_{j} k_{i}", k @ rep[("e", j)], (rep[("e", j)] @ k).scale(d))
            check(f"k_{i} f_{j} = D^-1 f_{j} k_{i}", k @ rep[("f", j)], (rep[("f", j)] @ k).scale(1 / d))
            comm = rep[("e", i)] @ rep[("f", j)] - rep[("f", j)] @ rep[("e", i)]
            rhs = (k - kinv).scale(1 / (q - 1 / q)) if i == j else zero
            check(f"[e_{i}, f_{j}] = delta (k - k^-1)/(q - q^-1)", comm, rhs)
    return Report(
        check="algebra-relations",
        identity="defining relations of the generalized quantum group",
        equal=not mismatches,
        mismatches=mismatches,
        checked=checked,
        details={"eps": "".join(map(str, params.eps)), "l": l, "q": q, "x": rep.x},
    )


def _kron_of(rep_l: RepMatrices, rep_m: RepMatrices, kind: str, i: int, side: str) -> SparseMatrix:
    one_l = SparseMatrix.identity(rep_l.dim)
    one_m = SparseMatrix.identity(rep_m.dim)
    if kind in ("k", "kinv"):
        return rep_l[(kind, i)].kron(rep_m[(kind, i)])
    if side == "Delta":
        if kind == "e":
            return one_l.kron(rep_m[("e", i)]) + rep_l[("e", i)].kron(rep_m[("k", i)])
        return rep_l[("f", i)].kron(one_m) + rep_l[("kinv", i)].kron(rep_m[("f", i)])
    if side == "DeltaPrime":
        if kind == "e":
            return rep_l[("e", i)].kron(one_m) + rep_l[("k", i)].kron(rep_m[("e", i)])
        return one_l.kron(rep_m[("f", i)]) + rep_l[("f", i)].kron(rep_m[("kinv", i)])
    raise ValueError(f"side must be 'Delta' or 'DeltaPrime', got {side!r}")


def coproduct_action(eps: Sequence[int], l: int, m: int, q, x, y, generator, side: str = "Delta") -> SparseMatrix:
    """``(pi^(l)_x (x) pi^(m)_y)`` applied to ``Delta(g)`` or ``Delta'(g)``.

    ``generator`` is a pair such as ``("e", 1)``; kinds are e, f, k, kinv.
    """
    kind, i = generator
    if side not in ("Delta", "DeltaPrime"):
        raise ValueError(f"side must be 'Delta' or 'DeltaPrime', got {side!r}")
    rep_l = rep_matrices(eps, l, q, x)
    rep_m = rep_matrices(eps, m, q, y)
    return _kron_of(rep_l, rep_m, kind, i % len(rep_l.params.eps), side)


def verify_intertwiner(eps: Sequence[int], l: int, m: int, q, x, y,
                       s_matrix: SparseMatrix | None = None) -> Report:
    """``Delta'(g) S_{l,m}(x/y) = S_{l,m}(x/y) Delta(g)`` for every e_i, f_i, k_i.

    ``s_matrix`` replaces S for negative controls.
    """
    eps = parse_eps(eps)
    q, x, y = as_fraction(q), as_fraction(x), as_fraction(y)
    rep_l = rep_matrices(eps, l, q, x)
    rep_m = rep_matrices(eps, m, q, y)
    if s_matrix is None:
        s_matrix = evaluate_block(s_block(eps, l, m), q, x / y)
    mismatches = []
    checked = 0
    for kind in GENERATOR_KINDS:
        for i in range(len(eps)):
            lhs = _kron_of(rep_l, rep_m, kind, i, "DeltaPrime") @ s_matrix
            rhs = s_matrix @ _kron_of(rep_l, rep_m, kind, i, "Delta")
            checked += 1
            if lhs != rhs:
                mismatches.append({"generator": f"{kind}_{i}", "entries": lhs.diff_entries(rhs, 3)})
    return Report(
        check="intertwiner",
        identity="S(x/y) intertwines the coproduct with its opposite",
        equal=not mismatches,
        mismatches=mismatches,
        checked=checked,
        details={"eps": "".join(map(str, eps)), "l": l, "m": m, "q": q, "x": x, "y": y},
    )


def random_weight_preserving(eps: Sequence[int], l: int, m: int, seed: int = 0) -> SparseMatrix:
    """A random matrix on W_l (x) W_m with the sparsity pattern of S_{l,m}."""
    block = s_block(eps, l, m)
    rng = random.Random(seed)
    entries = {}
    for ((a, b), (i, j)) in block.entries:
        entries[(block.index(a, b), block.index(i, j))] = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    return SparseMatrix.from_entries((block.dim, block.dim), entries)


def sweep_qgroup(eps: Sequence[int], max_total: int = 6, points: int = 3, seed: int = 0) -> Report:
    """Relations on every W_l and intertwining on every block with ``l + m <= max_total``."""
    eps = parse_eps(eps)
    rng = random.Random(seed)
    reports = []
    for l in range(max_total + 1):
        if not state_basis(eps, l):
            continue
        for m in range(max_total - l + 1):
            if not state_basis(eps, m):
                continue
            done = 0
            while done < points:
                q, x, y = random_rational(rng), random_rational(rng), random_rational(rng)
                try:
                    rep = verify_intertwiner(eps, l, m, q, x, y)
                except PoleAtPoint:
                    continue
                reports.append(check_algebra_relations(eps, l, q, x))
                reports.append(rep)
                done += 1
    return merge("qgroup-sweep", "relations and intertwining at random points", reports)
