"""Exact arithmetic kernels.

Everything here works over arbitrary-precision integers and
:class:`fractions.Fraction`; there is no floating point anywhere.

* :class:`LaurentPoly` -- integer Laurent polynomials in ``q``.
* :class:`BiPoly` -- integer polynomials in ``(q, z)``, Laurent in ``q``.
* :class:`QxPoly` -- integer polynomials in ``(q, X)``, ``X`` a formal stand-in
  for ``q**c`` when an expression depends on a summation variable ``c``.
* :class:`SpectralSum` -- a finite sum ``sum z**d * p(q) / (1 - z*q**k)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import LimitUndefined, NonPolynomialResult, PoleAtPoint

__all__ = [
    "LaurentPoly",
    "BiPoly",
    "QxPoly",
    "SpectralSum",
    "Zero",
    "Monomial",
    "ZERO",
    "lp_arith",
    "q_binomial",
    "q_pochhammer",
    "spectral_to_fraction",
    "same_rational_function",
    "scaled_q0_limit",
    "eval_point",
    "as_fraction",
]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"2/7"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass a Fraction or a string")
    return Fraction(x)


class _SparsePoly:
    """Shared machinery for sparse integer polynomials keyed by exponents.

    Subclasses fix the key type (an int or a tuple of ints) by overriding
    ``_add_keys`` and ``_zero_key``.
    """

    __slots__ = ("_terms", "_hash")

    _zero_key = 0

    def __init__(self, terms=None):
        if terms is None:
            clean = {}
        elif isinstance(terms, type(self)):
            clean = terms._terms
        else:
            clean = {}
            for key, c in dict(terms).items():
                c = int(c)
                if c:
                    clean[self._norm_key(key)] = clean.get(self._norm_key(key), 0) + c
            clean = {k: v for k, v in clean.items() if v}
        self._terms = clean
        self._hash = None

    @staticmethod
    def _norm_key(key):
        return key

    @staticmethod
    def _add_keys(k1, k2):
        raise NotImplementedError

    @classmethod
    def _from_clean(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int):
        return cls._from_clean({cls._zero_key: int(c)} if c else {})

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, int):
            return self.constant(other)
        return NotImplemented

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return self._from_clean({})
            return self._from_clean({k: c * other for k, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        add = self._add_keys
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = add(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return self._from_clean({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomial")
        result = self.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


class LaurentPoly(_SparsePoly):
    """Integer Laurent polynomial in ``q``, stored as ``{exponent: coefficient}``.

    >>> q = LaurentPoly.q()
    >>> str((1 + q**2) * (1 - q**6))
    '1+q^2-q^6-q^8'
    """

    __slots__ = ()

    @staticmethod
    def _add_keys(k1, k2):
        return k1 + k2

    @classmethod
    def q(cls, power: int = 1) -> "LaurentPoly":
        return cls._from_clean({power: 1})

    @classmethod
    def monomial(cls, coeff: int, power: int) -> "LaurentPoly":
        return cls._from_clean({power: coeff} if coeff else {})

    def __pow__(self, n: int):
        if n < 0:
            # only units of Z[q, 1/q] (that is +-q^e) have inverses
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError(f"{self} is not invertible in Z[q, 1/q]")
            (e, c), = self._terms.items()
            return LaurentPoly._from_clean({e * n: c ** (-n)})
        return super().__pow__(n)

    def coeff(self, power: int) -> int:
        return self._terms.get(power, 0)

    def valuation(self) -> int | None:
        return min(self._terms) if self._terms else None

    def degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return self._from_clean({e + k: c for e, c in self._terms.items()})

    def subs_power(self, k: int) -> "LaurentPoly":
        """Substitute ``q -> q**k`` (k != 0)."""
        if k == 0:
            raise ValueError("q -> q**0 collapses the polynomial")
        return self._from_clean({e * k: c for e, c in self._terms.items()})

    def parity_exponents(self) -> set[int]:
        return {e % 2 for e in self._terms}

    def evaluate(self, q) -> Fraction:
        q = as_fraction(q)
        if q == 0:
            if any(e < 0 for e in self._terms):
                raise PoleAtPoint("negative power of q at q=0")
            return Fraction(self._terms.get(0, 0))
        return sum((c * q**e for e, c in self._terms.items()), Fraction(0))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Z[q, 1/q]; raise NonPolynomialResult otherwise."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly()
        vb = other.valuation()
        db = other.degree()
        lead = other._terms[db]
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        # Long division from the top; the quotient's lowest exponent is
        # valuation(self) - valuation(other) when exact.
        floor = self.valuation() - vb
        while rem:
            top = max(rem)
            shift = top - db
            if shift < floor:
                raise NonPolynomialResult(f"{self} is not divisible by {other}")
            c, r = divmod(rem[top], lead)
            if r:
                raise NonPolynomialResult(f"{self} is not divisible by {other}")
            quot[shift] = c
            for e, b in other._terms.items():
                k = e + shift
                v = rem.get(k, 0) - c * b
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly._from_clean(quot)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}" if e > 0 else f"q^({e})"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[e, str(self._terms[e])] for e in sorted(self._terms)]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=None)
def q_pochhammer(m: int, base_exp: int = 2) -> LaurentPoly:
    """``(t; t)_m`` with ``t = q**base_exp``."""
    out = LaurentPoly.constant(1)
    for s in range(1, m + 1):
        out = out * (1 - LaurentPoly.q(base_exp * s))
    return out


@lru_cache(maxsize=None)
def q_binomial(m: int, k: int, base_exp: int = 2) -> LaurentPoly:
    """Gaussian binomial in base ``t = q**base_exp`` via the Pascal recurrence.

    ``[m, k] = [m-1, k-1] + t**k [m-1, k]``; no division is performed.
    """
    if k < 0 or k > m or m < 0:
        return LaurentPoly()
    if k == 0 or k == m:
        return LaurentPoly.constant(1)
    return q_binomial(m - 1, k - 1, base_exp) + q_binomial(m - 1, k, base_exp).shift(base_exp * k)


class BiPoly(_SparsePoly):
    """Integer polynomial in ``(q, z)`` keyed by ``(q_exp, z_exp)``; z-exponents are >= 0."""

    __slots__ = ()
    _zero_key = (0, 0)

    @staticmethod
    def _norm_key(key):
        qe, ze = key
        if ze < 0:
            raise ValueError("BiPoly z-exponents must be nonnegative")
        return (int(qe), int(ze))

    @staticmethod
    def _add_keys(k1, k2):
        return (k1[0] + k2[0], k1[1] + k2[1])

    @classmethod
    def q(cls, power: int = 1) -> "BiPoly":
        return cls._from_clean({(power, 0): 1})

    @classmethod
    def z(cls, power: int = 1) -> "BiPoly":
        return cls._from_clean({(0, power): 1})

    @classmethod
    def from_laurent(cls, p: LaurentPoly, z_power: int = 0) -> "BiPoly":
        return cls._from_clean({(e, z_power): c for e, c in p.items()})

    @classmethod
    def one_minus_zq(cls, k: int) -> "BiPoly":
        """``1 - z*q**k``."""
        return cls._from_clean({(0, 0): 1, (k, 1): -1})

    def q_valuation(self) -> int | None:
        return min(qe for qe, _ in self._terms) if self._terms else None

    def q_coefficient(self, qe: int) -> dict[int, int]:
        """Coefficient of ``q**qe`` as a ``{z_exp: coeff}`` dict."""
        return {ze: c for (e, ze), c in self._terms.items() if e == qe}

    def q_degree_range(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        qs = [qe for qe, _ in self._terms]
        return min(qs), max(qs)

    def z_degree(self) -> int | None:
        return max(ze for _, ze in self._terms) if self._terms else None

    def evaluate(self, q, z) -> Fraction:
        q, z = as_fraction(q), as_fraction(z)
        return sum((c * q**qe * z**ze for (qe, ze), c in self._terms.items()), Fraction(0))

    def __str__(self):
        if not self._terms:
            return "0"
        by_z: dict[int, dict[int, int]] = {}
        for (qe, ze), c in self._terms.items():
            by_z.setdefault(ze, {})[qe] = c
        parts = []
        for ze in sorted(by_z):
            coeff = LaurentPoly(by_z[ze])
            zs = "" if ze == 0 else ("z" if ze == 1 else f"z^{ze}")
            if not zs:
                parts.append(f"({coeff})")
            else:
                parts.append(f"({coeff})*{zs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[qe, ze, str(c)] for (qe, ze), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "BiPoly":
        return cls({(int(qe), int(ze)): int(c) for qe, ze, c in data})


class QxPoly(_SparsePoly):
    """Integer polynomial in ``(q, X)`` keyed by ``(q_exp, X_exp)``; ``X`` stands for ``q**c``."""

    __slots__ = ()
    _zero_key = (0, 0)

    @staticmethod
    def _add_keys(k1, k2):
        return (k1[0] + k2[0], k1[1] + k2[1])

    @classmethod
    def monomial(cls, coeff: int, q_exp: int, x_exp: int) -> "QxPoly":
        return cls._from_clean({(q_exp, x_exp): coeff} if coeff else {})

    @classmethod
    def from_laurent(cls, p: LaurentPoly, x_exp: int = 0) -> "QxPoly":
        return cls._from_clean({(e, x_exp): c for e, c in p.items()})

    def x_coefficients(self) -> dict[int, LaurentPoly]:
        """Split as ``sum_k tau_k(q) X**k``."""
        out: dict[int, dict[int, int]] = {}
        for (qe, xe), c in self._terms.items():
            out.setdefault(xe, {})[qe] = c
        return {xe: LaurentPoly._from_clean(d) for xe, d in out.items()}

    def specialize(self, c: int) -> LaurentPoly:
        """Substitute ``X = q**c``."""
        out: dict[int, int] = {}
        for (qe, xe), coeff in self._terms.items():
            e = qe + xe * c
            out[e] = out.get(e, 0) + coeff
        return LaurentPoly(out)


@dataclass(frozen=True)
class Zero:
    """The scaled q -> 0 limit vanishes."""

    def to_json(self):
        return {"limit": "zero"}

    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Monomial:
    """The scaled q -> 0 limit equals ``sign * z**power``."""

    power: int
    sign: int = 1

    def to_json(self):
        out = {"limit": "monomial", "power": self.power}
        if self.sign != 1:
            out["sign"] = self.sign
        return out

    def __str__(self):
        body = "1" if self.power == 0 else f"z^{self.power}"
        return body if self.sign == 1 else f"-{body}"


ZERO = Zero()


class SpectralSum:
    """Finite sum ``sum_{(d, k)} z**d * p_{d,k}(q) / (1 - z*q**k)``.

    Terms sharing the same ``(d, k)`` are merged; zero terms are dropped.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, int, LaurentPoly]] | dict | None = None):
        merged: dict[tuple[int, int], LaurentPoly] = {}
        if isinstance(terms, dict):
            terms = [(d, k, p) for (d, k), p in terms.items()]
        for d, k, p in terms or ():
            if d < 0:
                raise ValueError("z-shift d must be nonnegative")
            if isinstance(p, int):
                p = LaurentPoly.constant(p)
            key = (int(d), int(k))
            merged[key] = merged.get(key, LaurentPoly()) + p
        self._terms = {key: p for key, p in merged.items() if p}

    @classmethod
    def geometric(cls) -> "SpectralSum":
        """``1 / (1 - z)``."""
        return cls([(0, 0, LaurentPoly.constant(1))])

    @property
    def terms(self) -> dict[tuple[int, int], LaurentPoly]:
        return dict(self._terms)

    def slopes(self) -> list[int]:
        return sorted({k for _, k in self._terms})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, SpectralSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "SpectralSum") -> "SpectralSum":
        return SpectralSum([(d, k, p) for (d, k), p in self._terms.items()]
                           + [(d, k, p) for (d, k), p in other._terms.items()])

    def scale(self, p: LaurentPoly) -> "SpectralSum":
        return SpectralSum([(d, k, p * t) for (d, k), t in self._terms.items()])

    def evaluate(self, q, z) -> Fraction:
        q, z = as_fraction(q), as_fraction(z)
        total = Fraction(0)
        for (d, k), p in self._terms.items():
            if q == 0 and k < 0:
                raise PoleAtPoint("negative slope at q=0")
            den = 1 - z * (q**k if k else 1)
            if den == 0:
                raise PoleAtPoint(f"1 - z*q^{k} vanishes at q={q}, z={z}")
            total += z**d * p.evaluate(q) / den
        return total

    def __str__(self):
        num, slopes = spectral_to_fraction(self)
        if not slopes:
            return "0"
        den = "".join(f"(1-{_zq(k)})" for k in slopes)
        return f"[{num}] / {den}"

    def __repr__(self):
        return f"SpectralSum({self.to_json()!r})"

    def to_json(self) -> list:
        return [{"d": d, "k": k, "p": p.to_json()} for (d, k), p in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "SpectralSum":
        return cls([(int(t["d"]), int(t["k"]), LaurentPoly.from_json(t["p"])) for t in data])


def _zq(k: int) -> str:
    if k == 0:
        return "z"
    if k == 1:
        return "q*z"
    return f"q^{k}*z" if k > 0 else f"q^({k})*z"


def _denominator(slopes: Iterable[int]) -> BiPoly:
    out = BiPoly.constant(1)
    for k in slopes:
        out = out * BiPoly.one_minus_zq(k)
    return out


def spectral_to_fraction(s: SpectralSum) -> tuple[BiPoly, list[int]]:
    """Write ``s`` as ``numerator / prod_{k in slopes} (1 - z*q**k)``.

    The slope list holds each distinct slope of ``s`` once, ascending.
    """
    slopes = s.slopes()
    num = BiPoly()
    for (d, k), p in s.terms.items():
        term = BiPoly.from_laurent(p, d)
        for k2 in slopes:
            if k2 != k:
                term = term * BiPoly.one_minus_zq(k2)
        num = num + term
    return num, slopes


def same_rational_function(num1: BiPoly, slopes1: Iterable[int],
                           num2: BiPoly, slopes2: Iterable[int]) -> bool:
    """Cross-multiplied equality of two ``BiPoly / prod(1 - z q^k)`` fractions."""
    return num1 * _denominator(slopes2) == num2 * _denominator(slopes1)


def _zpoly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def scaled_q0_limit(s: SpectralSum, scale_s: int, delta: int, signed: bool = False) -> Zero | Monomial:
    """Exact value of ``(1 - z)**delta * q**(-scale_s) * s`` as ``q -> 0``.

    The result must be zero or a unit monomial ``z**H``; anything else raises
    :class:`LimitUndefined`. With ``signed=True`` a leading coefficient of
    ``-1`` is also accepted and reported through ``Monomial.sign``.
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    num, slopes = spectral_to_fraction(s)
    if not num:
        return ZERO
    slopes = list(slopes)
    if delta:
        if 0 in slopes:
            slopes.remove(0)
        else:
            num = num * BiPoly.one_minus_zq(0)
    # 1 - z q^k has q-valuation min(k, 0); its leading coefficient is
    # 1 for k > 0, (1 - z) for k = 0 and -z for k < 0.
    den_val = sum(k for k in slopes if k < 0)
    den_lead: dict[int, int] = {0: 1}
    for k in slopes:
        if k == 0:
            den_lead = _zpoly_mul(den_lead, {0: 1, 1: -1})
        elif k < 0:
            den_lead = _zpoly_mul(den_lead, {1: -1})
    num_val = num.q_valuation()
    order = num_val - den_val
    if order > scale_s:
        return ZERO
    if order < scale_s:
        raise LimitUndefined(f"q-order {order} is below the scale {scale_s}; limit diverges")
    num_lead = num.q_coefficient(num_val)
    power = min(num_lead) - min(den_lead)
    for sign in ((1, -1) if signed else (1,)):
        if power >= 0 and num_lead == {e + power: sign * c for e, c in den_lead.items()}:
            return Monomial(power, sign)
    raise LimitUndefined(f"leading ratio {num_lead} / {den_lead} is not a unit monomial in z")


def eval_point(obj, q, z=None) -> Fraction:
    """Exact value of a LaurentPoly, BiPoly or SpectralSum at rational ``q`` (and ``z``)."""
    if isinstance(obj, LaurentPoly):
        return obj.evaluate(q)
    if z is None:
        raise ValueError(f"{type(obj).__name__} needs a value for z")
    if isinstance(obj, (SpectralSum, BiPoly)):
        return obj.evaluate(q, z)
    raise TypeError(f"cannot evaluate {type(obj).__name__}")
