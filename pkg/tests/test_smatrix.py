import itertools
import json
import random
from fractions import Fraction

import pytest

from ybx.crystal import CrystalVector, comb_r
from ybx.errors import PoleAtPoint
from ybx.exactalg import ZERO, BiPoly, Monomial, SpectralSum, same_rational_function, spectral_to_fraction
from ybx.linalg import embed
from ybx.smatrix import (
    evaluate_block,
    random_rational,
    s_block,
    s_element,
    s_scaled_limit,
    state_basis,
    sweep_ybe,
    verify_limit_theorem,
    verify_ybe_point,
)
from ybx.threed import layer_elem

Q, Z = BiPoly.q(), BiPoly.z()


def w(text):
    return tuple(int(ch) for ch in text)


def trace_oracle(eps, a, b, i, j, x, z, cutoff=40):
    """Truncated sum over the auxiliary Fock space of the layer product, evaluated at (x, z)."""
    total = Fraction(0)
    for c in range(cutoff):
        vec = {c: Fraction(1)}
        for t in reversed(range(len(eps))):
            new = {}
            for c_in, v in vec.items():
                for c_out in range(0, c_in + a[t] + b[t] + 2):
                    e = layer_elem(eps[t], a[t], b[t], c_out, i[t], j[t], c_in)
                    if e:
                        new[c_out] = new.get(c_out, 0) + v * e.evaluate(x)
            vec = new
        total += z**c * vec.get(c, 0)
    return total


def matches(s: SpectralSum, num: BiPoly, slopes):
    got_num, got_slopes = spectral_to_fraction(s)
    return same_rational_function(got_num, got_slopes, num, slopes)


GOLDEN_101 = {
    ("031", "110"): (Q**3 * (Q**2 - Z), [4, 6]),
    ("040", "101"): (-Q**2 * (1 - Q**2) * Z, [4, 6]),
    ("121", "020"): (-Q**2 * (1 - Q**6) * (Q**2 - Z) * Z, [2, 4, 6]),
    ("130", "011"): (-(1 - Q**2) * Z * (Q**4 - Z - Q**2 * Z + Q**8 * Z), [2, 4, 6]),
}

GOLDEN_FOUR_LAYER = {
    (0, 1, 0, 1): ((1 - Q**4) * Z, [1, 3]),
    (0, 1, 0, 0): ((1 - Q**4) * Z * (1 - Q**2 - Q**4 + Q**3 * Z), [1, 3, 5]),
    (0, 0, 0, 1): (-Q * (1 - Q**4) * Z * (Q - Z - Q**2 * Z + Q**4 * Z), [1, 3, 5]),
}


@pytest.mark.parametrize("ab", sorted(GOLDEN_101))
def test_reference_elements_101(ab):
    a, b = ab
    s = s_element((1, 0, 1), w(a), w(b), w("031"), w("110"))
    assert matches(s, *GOLDEN_101[ab])


@pytest.mark.parametrize("eps", sorted(GOLDEN_FOUR_LAYER))
def test_reference_elements_four_layers(eps):
    s = s_element(eps, w("1111"), w("0111"), w("0121"), w("1101"))
    assert matches(s, *GOLDEN_FOUR_LAYER[eps])


def test_reference_column_is_complete():
    block = s_block((1, 0, 1), 4, 2)
    outputs = {(a, b) for ((a, b), (i, j)) in block.entries if (i, j) == (w("031"), w("110"))}
    assert outputs == {(w(a), w(b)) for a, b in GOLDEN_101}


@pytest.mark.parametrize("eps, a, b, i, j", [
    ((1, 0, 1), "031", "110", "031", "110"),
    ((1, 0, 1), "130", "011", "031", "110"),
    ((0, 0), "21", "11", "12", "20"),
    ((0, 1, 0), "201", "110", "111", "200"),
    ((0, 0, 0), "120", "101", "210", "011"),
    ((1, 1, 0), "102", "011", "012", "101"),
])
def test_closed_form_against_trace(eps, a, b, i, j):
    a, b, i, j = w(a), w(b), w(i), w(j)
    s = s_element(eps, a, b, i, j)
    assert s
    for x in (Fraction(1, 3), Fraction(-2, 5)):
        z = Fraction(1, 40)
        assert abs(s.evaluate(x, z) - trace_oracle(eps, a, b, i, j, x, z)) < Fraction(1, 10**40)


def test_random_elements_against_trace():
    rng = random.Random(3)
    for _ in range(12):
        eps = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 3)))
        l, m = rng.randint(0, 3), rng.randint(0, 3)
        block = s_block(eps, l, m)
        if not block.entries:
            continue
        (a, b), (i, j) = rng.choice(sorted(block.entries))
        s = block.entries[((a, b), (i, j))]
        x, z = Fraction(1, 3), Fraction(1, 40)
        assert abs(s.evaluate(x, z) - trace_oracle(eps, a, b, i, j, x, z)) < Fraction(1, 10**40)


def test_selection_rule():
    assert s_element((0, 0), (1, 0), (0, 1), (1, 0), (1, 0)).is_zero()
    assert s_element((0, 0), (2, 0), (0, 1), (1, 0), (1, 1)).is_zero()
    with pytest.raises(ValueError):
        s_element((1, 1), (2, 0), (0, 0), (2, 0), (0, 0))


def test_trivial_block():
    block = s_block((1, 1), 0, 0)
    assert list(block.entries.values()) == [SpectralSum.geometric()]


def test_basis_sizes():
    assert len(state_basis((1, 1, 1, 1), 2)) == 6
    assert len(state_basis((0, 0, 0), 2)) == 6
    assert state_basis((1, 0, 1), 4) == [w("031"), w("040"), w("121"), w("130")]


def test_block_json_round_trip():
    block = s_block((1, 0, 1), 2, 1)
    doc = json.loads(json.dumps(block.to_json()))
    for entry in doc["entries"]:
        key = ((tuple(entry["a"]), tuple(entry["b"])), (tuple(entry["i"]), tuple(entry["j"])))
        assert SpectralSum.from_json(entry["value"]) == block.entries[key]


def test_degree_summary():
    summary = s_block((1, 0, 1), 4, 2).degree_summary()
    assert summary["denominator_factors"] == 3


def test_evaluate_block_pole():
    with pytest.raises(PoleAtPoint):
        evaluate_block(s_block((0, 0), 1, 1), Fraction(1, 2), 1)


@pytest.mark.parametrize("eps, levels, point", [
    ((0, 0), (1, 1, 1), ("1/2", "1/3", "1/5")),
    ((1, 0, 1), (1, 2, 1), ("2/7", "1/4", "1/9")),
    ((0, 1), (2, 1, 2), ("-3/5", "7/2", "2/9")),
])
def test_ybe_points(eps, levels, point):
    report = verify_ybe_point(eps, *levels, *map(Fraction, point))
    assert report.passed, report.mismatches


def test_ybe_sweep_small():
    assert sweep_ybe((0, 1), max_total=3, points=2).passed


def test_ybe_negative_control():
    # giving the middle factor y instead of xy breaks the equation
    eps, q, x, y = (0, 0), Fraction(1, 3), Fraction(2, 5), Fraction(1, 7)
    dims = (2, 3, 2)
    s12 = embed(evaluate_block(s_block(eps, 1, 2), q, x), dims, (0, 1))
    s23 = embed(evaluate_block(s_block(eps, 2, 1), q, y), dims, (1, 2))
    good = embed(evaluate_block(s_block(eps, 1, 1), q, x * y), dims, (0, 2))
    bad = embed(evaluate_block(s_block(eps, 1, 1), q, y), dims, (0, 2))
    assert s12 @ good @ s23 == s23 @ good @ s12
    assert s12 @ bad @ s23 != s23 @ bad @ s12


def test_random_rational_avoids_degenerate():
    rng = random.Random(0)
    for _ in range(200):
        assert random_rational(rng) not in (0, 1, -1)


# -- q -> 0 limit ----------------------------------------------------------------

def test_limits_of_golden_elements():
    want = {("031", "110"): ZERO, ("040", "101"): ZERO, ("121", "020"): ZERO, ("130", "011"): Monomial(2)}
    for (a, b), lim in want.items():
        assert s_scaled_limit((1, 0, 1), 4, 2, w(a), w(b), w("031"), w("110")) == lim


def test_limits_four_layers():
    want = {(0, 1, 0, 1): Monomial(1), (0, 1, 0, 0): Monomial(1), (0, 0, 0, 1): ZERO}
    for eps, lim in want.items():
        assert s_scaled_limit(eps, 4, 3, w("1111"), w("0111"), w("0121"), w("1101")) == lim


@pytest.mark.parametrize("eps, l, m", [
    ((1, 0, 1), 4, 2), ((0, 0), 2, 2), ((1, 1), 1, 1), ((0, 1, 1), 2, 1), ((1, 0), 3, 3),
])
def test_limit_theorem(eps, l, m):
    report = verify_limit_theorem(eps, l, m)
    assert report.passed, report.mismatches


@pytest.mark.parametrize("eps, l, m", [((0, 0), 0, 1), ((0, 1, 0), 1, 3), ((1, 0, 1), 2, 4)])
def test_limit_theorem_l_below_m_sign(eps, l, m):
    report = verify_limit_theorem(eps, l, m)
    assert report.passed, report.mismatches
    assert report.details["sign"] == (-1) ** (m - l)


def test_l_below_m_smallest_case():
    # S = -q / (1 - q z): scaled by q^-1 the limit is -1, not +1
    s = s_element((0, 0), (0, 0), (0, 1), (0, 0), (0, 1))
    assert s_scaled_limit((0, 0), 0, 1, (0, 0), (0, 1), (0, 0), (0, 1)) == Monomial(0, -1)
    assert s.evaluate(Fraction(1, 2), Fraction(1, 3)) == Fraction(-1, 2) / (1 - Fraction(1, 6))


def test_equal_levels_limit_is_swap():
    # for l = m the scaled limit is nonzero only for a = j, b = i
    for eps in ((0, 0), (1, 1), (0, 1, 0)):
        for l in (1, 2):
            basis = state_basis(eps, l)
            for i, j in itertools.product(basis, repeat=2):
                for a in basis:
                    b = tuple(x + y - u for x, y, u in zip(i, j, a))
                    if b not in basis:
                        continue
                    lim = s_scaled_limit(eps, l, l, a, b, i, j)
                    if (a, b) == (j, i):
                        _, _, h, _ = comb_r(CrystalVector(eps, i), CrystalVector(eps, j))
                        assert lim == Monomial(h)
                    else:
                        assert lim == ZERO
