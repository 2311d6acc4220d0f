import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybx.errors import LimitUndefined, NonPolynomialResult, PoleAtPoint
from ybx.exactalg import (
    ZERO,
    BiPoly,
    LaurentPoly,
    Monomial,
    QxPoly,
    SpectralSum,
    as_fraction,
    eval_point,
    lp_arith,
    q_binomial,
    q_pochhammer,
    same_rational_function,
    scaled_q0_limit,
    spectral_to_fraction,
)

q = LaurentPoly.q()

laurent = st.dictionaries(st.integers(-6, 6), st.integers(-10**20, 10**20), max_size=6).map(LaurentPoly)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=9).filter(lambda x: x != 0)


def dense_mul(a: LaurentPoly, b: LaurentPoly) -> dict:
    """Schoolbook product over a dense coefficient window."""
    if not a or not b:
        return {}
    lo_a, hi_a = a.valuation(), a.degree()
    lo_b, hi_b = b.valuation(), b.degree()
    ca = [a.coeff(e) for e in range(lo_a, hi_a + 1)]
    cb = [b.coeff(e) for e in range(lo_b, hi_b + 1)]
    out = [0] * (len(ca) + len(cb) - 1)
    for s, x in enumerate(ca):
        for t, y in enumerate(cb):
            out[s + t] += x * y
    return {lo_a + lo_b + n: c for n, c in enumerate(out) if c}


def test_str_of_product():
    assert str((1 + q**2) * (1 - q**6)) == "1+q^2-q^6-q^8"
    assert str(LaurentPoly()) == "0"
    assert str(-2 * q**-3 + 1) == "-2*q^(-3)+1"


def test_big_integer_coefficients_stay_exact():
    p = LaurentPoly({0: 10**40 + 1, 3: -(10**39)})
    sq = p * p
    assert sq.coeff(0) == (10**40 + 1) ** 2
    assert sq.coeff(6) == 10**78


@settings(max_examples=60, deadline=None)
@given(laurent, laurent)
def test_mul_matches_dense_oracle(a, b):
    assert lp_arith(a, b, "mul").terms == dense_mul(a, b)


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert lp_arith(a, a, "sub").is_zero()


@settings(max_examples=40, deadline=None)
@given(laurent, laurent, rationals)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


@settings(max_examples=40, deadline=None)
@given(laurent, laurent)
def test_exact_div_inverts_mul(a, b):
    if b:
        assert (a * b).exact_div(b) == a


def test_exact_div_rejects_remainder():
    with pytest.raises(NonPolynomialResult):
        (1 + q).exact_div(1 - q)


def test_json_round_trip():
    p = LaurentPoly({-2: 5, 0: -(10**30), 7: 1})
    again = LaurentPoly.from_json(json.loads(json.dumps(p.to_json())))
    assert again == p


@pytest.mark.parametrize("m", range(0, 8))
def test_q_binomial_against_product_formula(m):
    # [m, k]_{q^2} = prod_{s<k} (1 - t^{m-s}) / (1 - t^{s+1}) at rational q
    for x in (Fraction(1, 3), Fraction(-2, 5), Fraction(7, 4)):
        t = x * x
        for k in range(m + 1):
            want = Fraction(1)
            for s in range(k):
                want *= (1 - t ** (m - s)) / (1 - t ** (s + 1))
            assert q_binomial(m, k).evaluate(x) == want


def test_q_binomial_small_values():
    assert q_binomial(2, 1) == 1 + q**2
    assert q_binomial(3, 1) == 1 + q**2 + q**4
    assert q_binomial(3, 4).is_zero()


def test_q_binomial_symmetry_and_pochhammer():
    for m in range(7):
        for k in range(m + 1):
            assert q_binomial(m, k) == q_binomial(m, m - k)
            assert q_binomial(m, k) * q_pochhammer(k) * q_pochhammer(m - k) == q_pochhammer(m)


def test_as_fraction_refuses_floats():
    assert as_fraction("2/7") == Fraction(2, 7)
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_qxpoly_specialize():
    p = QxPoly.monomial(3, 1, 2) + QxPoly.from_laurent(1 - q**2)
    assert p.specialize(4) == 3 * q**9 + 1 - q**2
    assert set(p.x_coefficients()) == {0, 2}


# -- SpectralSum -------------------------------------------------------------

spectral = st.lists(
    st.tuples(st.integers(0, 3), st.integers(-2, 5), laurent), max_size=4
).map(SpectralSum)


def test_geometric_series():
    s = SpectralSum.geometric()
    assert s.evaluate(Fraction(1, 2), Fraction(1, 3)) == Fraction(3, 2)
    assert str(s) == "[(1)] / (1-z)"


@settings(max_examples=50, deadline=None)
@given(spectral, st.sampled_from([Fraction(1, 3), Fraction(-2, 7)]), st.sampled_from([Fraction(1, 5), Fraction(-3, 11)]))
def test_spectral_to_fraction_pointwise(s, x, z):
    num, slopes = spectral_to_fraction(s)
    den = Fraction(1)
    for k in slopes:
        den *= 1 - z * x**k
    assert num.evaluate(x, z) / den == s.evaluate(x, z)


def test_same_rational_function_detects_cancellation():
    # z/(1 - z) and z(1 - qz)/((1 - z)(1 - qz)) are the same function
    z = BiPoly.z()
    assert same_rational_function(z, [0], z * BiPoly.one_minus_zq(1), [0, 1])
    assert not same_rational_function(z, [0], z * z, [0])


def test_pole_detection():
    s = SpectralSum([(0, 1, LaurentPoly.constant(1))])
    with pytest.raises(PoleAtPoint):
        s.evaluate(Fraction(1, 2), 2)
    with pytest.raises(PoleAtPoint):
        SpectralSum([(0, -1, LaurentPoly.constant(1))]).evaluate(0, Fraction(1, 3))


def test_spectral_json_round_trip():
    s = SpectralSum([(1, 4, -q**2 + q**4), (0, 6, 3 * q**-1)])
    assert SpectralSum.from_json(json.loads(json.dumps(s.to_json()))) == s


def test_eval_point_dispatch():
    assert eval_point(q**2, Fraction(1, 2)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        eval_point(SpectralSum.geometric(), 1)


# -- scaled q -> 0 limit --------------------------------------------------------

TINY = Fraction(1, 10**40)


def tiny_q_value(s: SpectralSum, scale_s: int, delta: int, z: Fraction) -> Fraction:
    """Exact value of (1 - z)^delta q^-scale_s s at a very small q."""
    return (1 - z) ** delta * TINY ** (-scale_s) * s.evaluate(TINY, z)


def limit_value(lim, z):
    return Fraction(0) if lim == ZERO else lim.sign * z**lim.power


@pytest.mark.parametrize("s, scale_s, delta", [
    (SpectralSum([(0, 0, LaurentPoly.constant(1))]), 0, 1),
    (SpectralSum([(1, 4, q**2 - q**4), (0, 6, q**3)]), 2, 0),
    (SpectralSum([(2, 1, 1 - q**2), (0, 3, q**5)]), 0, 0),
    (SpectralSum([(0, -1, q**-1)]), -1, 0),
    (SpectralSum([(0, 0, LaurentPoly.constant(1)), (1, 2, q + q**2)]), 0, 1),
])
def test_limit_against_tiny_q_oracle(s, scale_s, delta):
    lim = scaled_q0_limit(s, scale_s, delta)
    for z in (Fraction(1, 3), Fraction(-2, 7)):
        got = tiny_q_value(s, scale_s, delta, z)
        assert abs(got - limit_value(lim, z)) < Fraction(1, 10**30)


def test_limit_examples():
    assert scaled_q0_limit(SpectralSum.geometric(), 0, 1) == Monomial(0)
    assert scaled_q0_limit(SpectralSum([(2, 1, LaurentPoly.constant(1))]), 0, 0) == Monomial(2)
    assert scaled_q0_limit(SpectralSum([(0, 1, q**3)]), 1, 0) == ZERO


def test_limit_undefined_cases():
    with pytest.raises(LimitUndefined):
        scaled_q0_limit(SpectralSum([(0, 1, q**-1)]), 0, 0)
    # 2z is not a unit monomial
    with pytest.raises(LimitUndefined):
        scaled_q0_limit(SpectralSum([(1, 1, LaurentPoly.constant(2))]), 0, 0)
    with pytest.raises(LimitUndefined):
        scaled_q0_limit(SpectralSum([(1, 1, LaurentPoly.constant(-1))]), 0, 0)


def test_signed_limit_is_opt_in():
    s = SpectralSum([(1, 1, LaurentPoly.constant(-1))])
    assert scaled_q0_limit(s, 0, 0, signed=True) == Monomial(1, -1)
    assert Monomial(1, -1).to_json() == {"limit": "monomial", "power": 1, "sign": -1}
