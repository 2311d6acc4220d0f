"""3D R and 3D L matrix elements, tetrahedron equations and their q = 0 limits.

Index convention: ``r_elem(a, b, c, i, j, k)`` is the coefficient of
``|a, b, c>`` in the image of ``|i, j, k>``; upper indices are outputs and
lower indices are inputs. The same holds for ``l_elem`` where the first two
legs are two-dimensional (values 0 or 1) and the third is a Fock leg.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .exactalg import LaurentPoly, q_binomial, q_pochhammer
from .errors import NonPolynomialResult
from .report import Report, merge

__all__ = [
    "r_elem",
    "r_elem_alt",
    "r_elem_contour",
    "l_elem",
    "layer_elem",
    "layer_outputs",
    "apply_operator",
    "verify_te_rrrr",
    "verify_te_rlll",
    "verify_te_nlayer",
    "sweep_te_rrrr",
    "sweep_te_rlll",
    "sweep_te_nlayer",
    "q0_r_map",
    "q0_l_map",
    "q0_layer_map",
    "combinatorial_chain",
    "verify_combinatorial_te",
    "check_r_properties",
    "REFERENCE_CHAINS",
]

_ONE = LaurentPoly.constant(1)
_ZERO = LaurentPoly()

ElemFn = Callable[[int, int, int, int, int, int, int], LaurentPoly]


def _conserves(a, b, c, i, j, k) -> bool:
    return a + b == i + j and b + c == j + k


def _sign(n: int) -> int:
    return -1 if n & 1 else 1


@lru_cache(maxsize=None)
def r_elem(a: int, b: int, c: int, i: int, j: int, k: int) -> LaurentPoly:
    """3D R element by the double sum over ``lambda + mu = b``, ``mu <= i``, ``lambda <= j``."""
    if min(a, b, c, i, j, k) < 0 or not _conserves(a, b, c, i, j, k):
        return _ZERO
    total = _ZERO
    for mu in range(0, min(i, b) + 1):
        lam = b - mu
        if lam > j:
            continue
        exp = i * (c - j) + (k + 1) * lam + mu * (mu - k)
        # (q^2)_{c+mu} / (q^2)_c as a finite product
        ratio = _ONE
        for s in range(c + 1, c + mu + 1):
            ratio = ratio * (1 - LaurentPoly.q(2 * s))
        term = ratio * q_binomial(i, mu, 2) * q_binomial(j, lam, 2)
        total = total + term.shift(exp) * _sign(lam)
    return total


@lru_cache(maxsize=None)
def r_elem_alt(a: int, b: int, c: int, i: int, j: int, k: int) -> LaurentPoly:
    """3D R element by the single-constraint sum (``lambda + mu = b``, ``mu <= i``)."""
    if min(a, b, c, i, j, k) < 0 or not _conserves(a, b, c, i, j, k):
        return _ZERO
    total = _ZERO
    for mu in range(0, min(i, b) + 1):
        lam = b - mu
        exp = i * k + b + lam * (c - a) + mu * (mu - i - k - 1)
        term = q_binomial(i, mu, 2) * q_binomial(lam + a, a, 2)
        total = total + term.shift(exp) * _sign(lam)
    return total


def _series(scale_exp: int, order: int, inverse: bool) -> list[tuple[LaurentPoly, int]]:
    """Power-series coefficients in ``u`` of ``(x u; q^2)_inf`` or its inverse.

    Here ``x = -q**scale_exp``. Coefficient ``j`` is returned as
    ``(numerator, j)`` meaning ``numerator / (q^2)_j``.
    """
    out = []
    for n in range(order + 1):
        if inverse:
            # 1/(xu;q^2)_inf = sum x^n u^n / (q^2)_n
            num = LaurentPoly.monomial(_sign(n), scale_exp * n)
        else:
            # (xu;q^2)_inf = sum (-1)^n q^{n(n-1)} x^n u^n / (q^2)_n
            num = LaurentPoly.monomial(1, n * (n - 1) + scale_exp * n)
        out.append((num, n))
    return out


@lru_cache(maxsize=None)
def r_elem_contour(a: int, b: int, c: int, i: int, j: int, k: int) -> LaurentPoly:
    """3D R element as the ``u**b`` coefficient of a ratio of infinite q-products.

    Intermediate series coefficients live in the fraction field; they are
    put over the common denominator ``((q^2)_b)**4`` and the final quotient
    is required to be a Laurent polynomial.
    """
    if min(a, b, c, i, j, k) < 0 or not _conserves(a, b, c, i, j, k):
        return _ZERO
    factors = [
        _series(2 + a + c, b, inverse=False),
        _series(-i - k, b, inverse=False),
        _series(a - c, b, inverse=True),
        _series(c - a, b, inverse=True),
    ]
    pb = q_pochhammer(b, 2)
    common = pb**4
    numerator = _ZERO
    for js in itertools.product(range(b + 1), repeat=3):
        j4 = b - sum(js)
        if j4 < 0:
            continue
        idx = (*js, j4)
        num = _ONE
        cofactor = _ONE
        for series, n in zip(factors, idx):
            term_num, deg = series[n]
            num = num * term_num
            cofactor = cofactor * pb.exact_div(q_pochhammer(deg, 2))
        numerator = numerator + num * cofactor
    try:
        coeff = numerator.exact_div(common)
    except NonPolynomialResult as exc:
        raise NonPolynomialResult(f"contour form of R^{a},{b},{c}_{i},{j},{k} is not polynomial") from exc
    return coeff.shift(i * k + b)


def l_elem(a: int, b: int, c: int, i: int, j: int, k: int) -> LaurentPoly:
    """3D L element; legs 1, 2 are two-dimensional, leg 3 is a Fock leg."""
    if min(c, k) < 0:
        return _ZERO
    if (a, b) == (i, j) and (a, b) in ((0, 0), (1, 1)):
        return _ONE if c == k else _ZERO
    if (a, b, i, j) == (0, 1, 0, 1):
        return LaurentPoly.monomial(-1, k + 1) if c == k else _ZERO
    if (a, b, i, j) == (1, 0, 1, 0):
        return LaurentPoly.q(k) if c == k else _ZERO
    if (a, b, i, j) == (0, 1, 1, 0):
        return 1 - LaurentPoly.q(2 * k) if c == k - 1 else _ZERO
    if (a, b, i, j) == (1, 0, 0, 1):
        return _ONE if c == k + 1 else _ZERO
    return _ZERO


def layer_elem(eps: int, a: int, b: int, c: int, i: int, j: int, k: int) -> LaurentPoly:
    """R element for ``eps == 0``, L element for ``eps == 1``."""
    if eps == 0:
        return r_elem(a, b, c, i, j, k)
    if eps == 1:
        return l_elem(a, b, c, i, j, k)
    raise ValueError("layer kind must be 0 or 1")


def layer_outputs(eps: int, i: int, j: int, k: int) -> Iterable[tuple[int, int, int]]:
    """All output triples allowed by conservation for input ``(i, j, k)``."""
    if eps == 0:
        for b in range(0, min(i + j, j + k) + 1):
            yield i + j - b, b, j + k - b
    else:
        for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)):
            if a + b == i + j and j + k - b >= 0:
                yield a, b, j + k - b


Vector = dict[tuple[int, ...], LaurentPoly]


def apply_operator(vec: Vector, eps: int, pos: Sequence[int], elem: ElemFn = layer_elem) -> Vector:
    """Apply a 3D R (eps=0) or 3D L (eps=1) on the legs ``pos`` of every basis vector in ``vec``."""
    p1, p2, p3 = pos
    out: Vector = {}
    for state, coeff in vec.items():
        i, j, k = state[p1], state[p2], state[p3]
        for a, b, c in layer_outputs(eps, i, j, k):
            w = elem(eps, a, b, c, i, j, k)
            if not w:
                continue
            new = list(state)
            new[p1], new[p2], new[p3] = a, b, c
            new = tuple(new)
            v = out.get(new, _ZERO) + coeff * w
            if v:
                out[new] = v
            else:
                out.pop(new, None)
    return out


def _apply_product(state: tuple[int, ...], product: Sequence[tuple[int, Sequence[int]]],
                   elem: ElemFn) -> Vector:
    """Apply an operator product written left to right (rightmost acts first)."""
    vec: Vector = {tuple(state): _ONE}
    for eps, pos in reversed(product):
        vec = apply_operator(vec, eps, pos, elem)
    return vec


def _compare(check: str, identity: str, state, lhs: Vector, rhs: Vector) -> Report:
    keys = set(lhs) | set(rhs)
    mismatches = []
    for key in sorted(keys):
        x, y = lhs.get(key, _ZERO), rhs.get(key, _ZERO)
        if x != y:
            mismatches.append({"input": list(state), "output": list(key), "lhs": str(x), "rhs": str(y)})
    return Report(
        check=check,
        identity=identity,
        equal=not mismatches,
        mismatches=mismatches,
        checked=1,
        details={"input": list(state), "lhs_terms": len(lhs), "rhs_terms": len(rhs)},
    )


_TE_POSITIONS = ((0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5))


def _te_sides(eps: int):
    s124, s135, s236, r456 = _TE_POSITIONS
    lhs = [(eps, s124), (eps, s135), (eps, s236), (0, r456)]
    rhs = [(0, r456), (eps, s236), (eps, s135), (eps, s124)]
    return lhs, rhs


def verify_te_rrrr(state: Sequence[int], elem: ElemFn = layer_elem) -> Report:
    """Check R124 R135 R236 R456 = R456 R236 R135 R124 on one basis vector of F^6."""
    state = tuple(int(x) for x in state)
    if len(state) != 6 or min(state) < 0:
        raise ValueError("RRRR input must be six nonnegative integers")
    lhs, rhs = _te_sides(0)
    return _compare("te-rrrr", "tetrahedron equation RRRR", state,
                    _apply_product(state, lhs, elem), _apply_product(state, rhs, elem))


def verify_te_rlll(v_in: Sequence[int], fock: Sequence[int], elem: ElemFn = layer_elem) -> Report:
    """Check L124 L135 L236 R456 = R456 L236 L135 L124 on one basis vector of V^3 (x) F^3."""
    v_in, fock = tuple(v_in), tuple(fock)
    if len(v_in) != 3 or any(x not in (0, 1) for x in v_in):
        raise ValueError("RLLL V-input must be three values in {0, 1}")
    if len(fock) != 3 or min(fock) < 0:
        raise ValueError("RLLL Fock input must be three nonnegative integers")
    state = v_in + fock
    lhs, rhs = _te_sides(1)
    return _compare("te-rlll", "tetrahedron equation RLLL", state,
                    _apply_product(state, lhs, elem), _apply_product(state, rhs, elem))


def _nlayer_sides(eps: Sequence[int]):
    n = len(eps)
    f4, f5, f6 = 3 * n, 3 * n + 1, 3 * n + 2
    lhs, rhs_tail = [], []
    for t, e in enumerate(eps):
        al, be, ga = t, n + t, 2 * n + t
        lhs += [(e, (al, be, f4)), (e, (al, ga, f5)), (e, (be, ga, f6))]
        rhs_tail += [(e, (be, ga, f6)), (e, (al, ga, f5)), (e, (al, be, f4))]
    lhs.append((0, (f4, f5, f6)))
    rhs = [(0, (f4, f5, f6))] + rhs_tail
    return lhs, rhs


def verify_te_nlayer(eps: Sequence[int], alpha: Sequence[int], beta: Sequence[int],
                     gamma: Sequence[int], fock: Sequence[int], elem: ElemFn = layer_elem) -> Report:
    """Check the n-layer tetrahedron equation on ``|alpha, beta, gamma, m4, m5, m6>``."""
    eps = tuple(eps)
    n = len(eps)
    if n < 1 or any(len(x) != n for x in (alpha, beta, gamma)) or len(fock) != 3:
        raise ValueError("alpha, beta, gamma must have length len(eps); fock has length 3")
    for vec in (alpha, beta, gamma):
        for e, m in zip(eps, vec):
            if m < 0 or (e == 1 and m > 1):
                raise ValueError("state entries must be nonnegative and <= 1 on L layers")
    state = tuple(alpha) + tuple(beta) + tuple(gamma) + tuple(fock)
    lhs, rhs = _nlayer_sides(eps)
    return _compare("te-n", f"n-layer tetrahedron equation, eps={''.join(map(str, eps))}", state,
                    _apply_product(state, lhs, elem), _apply_product(state, rhs, elem))


def sweep_te_rrrr(max_sum: int = 2, n_random: int = 0, max_entry: int = 3, seed: int = 0,
                  elem: ElemFn = layer_elem) -> Report:
    """All inputs with component sum <= ``max_sum`` plus random inputs with entries <= ``max_entry``."""
    inputs = [s for s in itertools.product(range(max_sum + 1), repeat=6) if sum(s) <= max_sum]
    rng = random.Random(seed)
    inputs += [tuple(rng.randint(0, max_entry) for _ in range(6)) for _ in range(n_random)]
    reports = [verify_te_rrrr(s, elem) for s in inputs]
    return merge("te-rrrr", "tetrahedron equation RRRR", reports)


def sweep_te_rlll(max_fock_sum: int = 3, elem: ElemFn = layer_elem) -> Report:
    reports = []
    for v in itertools.product((0, 1), repeat=3):
        for f in itertools.product(range(max_fock_sum + 1), repeat=3):
            if sum(f) <= max_fock_sum:
                reports.append(verify_te_rlll(v, f, elem))
    return merge("te-rlll", "tetrahedron equation RLLL", reports)


def sweep_te_nlayer(eps: Sequence[int], max_entry: int = 1, elem: ElemFn = layer_elem) -> Report:
    """Every basis vector whose entries are <= ``max_entry`` (<= 1 on L legs)."""
    eps = tuple(eps)
    n = len(eps)
    leg_ranges = [range((1 if e else max_entry) + 1) for e in eps] * 3
    leg_ranges += [range(max_entry + 1)] * 3
    reports = []
    for state in itertools.product(*leg_ranges):
        reports.append(verify_te_nlayer(eps, state[:n], state[n:2 * n], state[2 * n:3 * n],
                                        state[3 * n:], elem))
    return merge("te-n", f"n-layer tetrahedron equation, eps={''.join(map(str, eps))}", reports)


# -- q = 0 set-theoretical maps ----------------------------------------------

def q0_r_map(i: int, j: int, k: int) -> tuple[int, int, int]:
    return j + max(i - k, 0), min(i, k), j + max(k - i, 0)


def q0_l_map(i: int, j: int, k: int) -> tuple[int, int, int]:
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError("L map needs i, j in {0, 1}")
    return j + max(i - j - k, 0), min(i, k + j), max(k + j - i, 0)


def q0_layer_map(eps: int, i: int, j: int, k: int) -> tuple[int, int, int]:
    return q0_r_map(i, j, k) if eps == 0 else q0_l_map(i, j, k)


def _comb_apply(state: tuple[int, ...], product) -> list[tuple[int, ...]]:
    chain = [state]
    for eps, (p1, p2, p3) in reversed(product):
        s = list(chain[-1])
        s[p1], s[p2], s[p3] = q0_layer_map(eps, s[p1], s[p2], s[p3])
        chain.append(tuple(s))
    return chain


def combinatorial_chain(kind: str, start: Sequence[int], side: str) -> list[tuple[int, ...]]:
    """States visited by one side of the combinatorial tetrahedron equation.

    ``side="lhs"`` applies the 456 map first; ``side="rhs"`` applies the 124 map first.
    """
    eps = {"RRRR": 0, "RLLL": 1}[kind.upper()]
    lhs, rhs = _te_sides(eps)
    return _comb_apply(tuple(start), lhs if side == "lhs" else rhs)


REFERENCE_CHAINS = {
    "RRRR": {
        "start": (2, 6, 1, 4, 3, 5),
        "lhs": [(2, 6, 1, 4, 3, 5), (2, 6, 1, 3, 4, 4), (2, 3, 4, 3, 4, 1), (4, 3, 2, 3, 6, 1),
                (4, 3, 2, 3, 6, 1)],
        "rhs": [(2, 6, 1, 4, 3, 5), (6, 2, 1, 8, 3, 5), (4, 2, 3, 8, 1, 5), (4, 3, 2, 8, 1, 6),
                (4, 3, 2, 3, 6, 1)],
    },
    "RLLL": {
        "start": (0, 1, 1, 4, 3, 5),
        "lhs": [(0, 1, 1, 4, 3, 5), (0, 1, 1, 3, 4, 4), (0, 1, 1, 3, 4, 4), (1, 1, 0, 3, 5, 4),
                (1, 1, 0, 3, 5, 4)],
        "rhs": [(0, 1, 1, 4, 3, 5), (1, 0, 1, 5, 3, 5), (1, 0, 1, 5, 3, 5), (1, 1, 0, 5, 3, 6),
                (1, 1, 0, 3, 5, 4)],
    },
}


def verify_combinatorial_te(kind: str, max_entry: int = 3) -> Report:
    """Brute-force the q = 0 tetrahedron equation and replay the reference chains."""
    kind = kind.upper()
    eps = {"RRRR": 0, "RLLL": 1}[kind]
    lhs, rhs = _te_sides(eps)
    mismatches = []
    v_range = range(2) if eps else range(max_entry + 1)
    ranges = [v_range] * 3 + [range(max_entry + 1)] * 3
    count = 0
    for state in itertools.product(*ranges):
        count += 1
        left = _comb_apply(state, lhs)[-1]
        right = _comb_apply(state, rhs)[-1]
        if left != right:
            mismatches.append({"input": list(state), "lhs": list(left), "rhs": list(right)})
    reference = REFERENCE_CHAINS[kind]
    chains = {side: combinatorial_chain(kind, reference["start"], side) for side in ("lhs", "rhs")}
    for side in ("lhs", "rhs"):
        if chains[side] != reference[side]:
            mismatches.append({"reference_chain": side, "expected": reference[side], "got": chains[side]})
    return Report(
        check="te-comb",
        identity=f"combinatorial tetrahedron equation {kind}",
        equal=not mismatches,
        mismatches=mismatches[:20],
        checked=count,
        details={"chains": {s: ["".join(map(str, st)) for st in c] for s, c in chains.items()}},
    )


# -- structural properties of the 3D R ------------------------------------------

def _block_basis(s1: int, s2: int) -> list[tuple[int, int, int]]:
    return [(s1 - j, j, s2 - j) for j in range(min(s1, s2) + 1)]


def check_r_properties(bound: int = 4) -> Report:
    """Involution, index reversal symmetry, factorial transpose relation and parity class.

    Every conservation block ``(i + j, j + k) = (s1, s2)`` with ``s1, s2 <= bound``
    is checked.
    """
    failures = {"involution": [], "symmetry": [], "transpose": [], "parity": []}
    count = 0
    for s1 in range(bound + 1):
        for s2 in range(bound + 1):
            basis = _block_basis(s1, s2)
            # R squared is the identity on the block
            for col in basis:
                for row in basis:
                    acc = _ZERO
                    for mid in basis:
                        acc = acc + r_elem(*row, *mid) * r_elem(*mid, *col)
                    if acc != (1 if row == col else 0):
                        failures["involution"].append({"row": row, "col": col, "value": str(acc)})
            for (a, b, c), (i, j, k) in itertools.product(basis, repeat=2):
                count += 1
                v = r_elem(a, b, c, i, j, k)
                if v != r_elem(c, b, a, k, j, i):
                    failures["symmetry"].append({"upper": (a, b, c), "lower": (i, j, k)})
                lhs = q_pochhammer(a) * q_pochhammer(b) * q_pochhammer(c) * v
                rhs = q_pochhammer(i) * q_pochhammer(j) * q_pochhammer(k) * r_elem(i, j, k, a, b, c)
                if lhs != rhs:
                    failures["transpose"].append({"upper": (a, b, c), "lower": (i, j, k)})
                xi = ((a - j) * (c - j)) % 2
                if v and v.parity_exponents() != {xi}:
                    failures["parity"].append({"upper": (a, b, c), "lower": (i, j, k), "value": str(v)})
    mismatches = [{"property": name, **f} for name, fs in failures.items() for f in fs]
    return Report(
        check="r-props",
        identity="3D R: involution, index symmetry, factorial transpose, parity class",
        equal=not mismatches,
        mismatches=mismatches[:20],
        checked=count,
        details={"properties": {name: not fs for name, fs in failures.items()}, "bound": bound},
    )
