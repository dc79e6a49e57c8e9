"""Exact arithmetic in Q(q), the field of rational functions in the deformation
parameter.

A :class:`RatFunc` is stored as ``q**shift * num(q) / den(q)`` where ``num`` and
``den`` are ordinary polynomials with nonzero constant terms, ``den`` is monic
and ``gcd(num, den) == 1``.  That makes the representation canonical, so ``==``
and ``hash`` are structural.  Polynomial kernels come from python-flint.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from flint import fmpq, fmpq_poly

Rational = Union[int, Fraction]

_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def _to_fmpq(c: Rational) -> fmpq:
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    return fmpq(c)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _low_degree(p: fmpq_poly) -> int:
    """Index of the lowest nonzero coefficient (``p`` must be nonzero)."""
    i = 0
    while p[i] == 0:
        i += 1
    return i


class LaurentPoly:
    """Finite sum of rational multiples of integer powers of q."""

    __slots__ = ("_shift", "_poly")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        terms = {e: c for e, c in (terms or {}).items() if c != 0}
        if not terms:
            self._shift, self._poly = 0, _ZERO_POLY
            return
        lo = min(terms)
        coeffs = [0] * (max(terms) - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = _to_fmpq(c)
        self._shift, self._poly = lo, fmpq_poly(coeffs)

    @classmethod
    def _raw(cls, shift: int, poly: fmpq_poly) -> "LaurentPoly":
        obj = cls.__new__(cls)
        if poly.is_zero():
            obj._shift, obj._poly = 0, _ZERO_POLY
        else:
            low = _low_degree(poly)
            if low:
                poly = poly.right_shift(low)
            obj._shift, obj._poly = shift + low, poly
        return obj

    @property
    def terms(self) -> dict[int, Fraction]:
        return {
            self._shift + k: _to_fraction(c)
            for k, c in enumerate(self._poly.coeffs())
            if c != 0
        }

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s = min(self._shift, other._shift)
        a = self._poly.left_shift(self._shift - s)
        b = other._poly.left_shift(other._shift - s)
        return LaurentPoly._raw(s, a + b)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self._shift, -self._poly)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly._raw(self._shift + other._shift, self._poly * other._poly)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._shift == other._shift and self._poly == other._poly

    def __hash__(self) -> int:
        return hash((self._shift, tuple(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({_render_terms(self.terms)})"

    def to_json(self) -> list[dict]:
        return [{"e": e, "c": _frac_str(c)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "LaurentPoly":
        return cls({int(t["e"]): Fraction(t["c"]) for t in data})


class RatFunc:
    """Element of Q(q) in canonical form (see module docstring)."""

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, value: Rational = 0):
        if value == 0:
            self.shift, self.num, self.den = 0, _ZERO_POLY, _ONE_POLY
        else:
            self.shift, self.num, self.den = 0, fmpq_poly([_to_fmpq(value)]), _ONE_POLY
        self._hash = None

    @classmethod
    def _make(cls, shift: int, num: fmpq_poly, den: fmpq_poly) -> "RatFunc":
        # num, den already coprime, den monic with den(0) != 0
        obj = cls.__new__(cls)
        obj._hash = None
        if num.is_zero():
            obj.shift, obj.num, obj.den = 0, _ZERO_POLY, _ONE_POLY
            return obj
        low = _low_degree(num)
        if low:
            num = num.right_shift(low)
        obj.shift, obj.num, obj.den = shift + low, num, den
        return obj

    @classmethod
    def _normalize(cls, shift: int, num: fmpq_poly, den: fmpq_poly) -> "RatFunc":
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if num.is_zero():
            return ZERO
        low = _low_degree(den)
        if low:
            den = den.right_shift(low)
            shift -= low
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        return cls._make(shift, num, den)

    @classmethod
    def q_power(cls, k: int, coeff: Rational = 1) -> "RatFunc":
        if coeff == 0:
            return ZERO
        return cls._make(k, fmpq_poly([_to_fmpq(coeff)]), _ONE_POLY)

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly | None = None) -> "RatFunc":
        if den is None:
            return cls._make(num._shift, num._poly, _ONE_POLY)
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return cls._normalize(num._shift - den._shift, num._poly, den._poly)

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.shift == 0 and self.den.is_one() and self.num.is_one()

    def is_monomial(self) -> bool:
        return self.den.is_one() and self.num.degree() == 0

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly._raw(self.shift, self.num)

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly._raw(0, self.den)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = _coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s = min(self.shift, other.shift)
        a = self.num.left_shift(self.shift - s) if self.shift != s else self.num
        b = other.num.left_shift(other.shift - s) if other.shift != s else other.num
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = a + b
            if num.is_zero():
                return ZERO
            if d1.is_one():
                return RatFunc._make(s, num, d1)
            return RatFunc._normalize(s, num, d1)
        if d1.is_one():
            return RatFunc._normalize(s, a * d2 + b, d2)
        if d2.is_one():
            return RatFunc._normalize(s, a + b * d1, d1)
        g = d1.gcd(d2)
        if g.is_one():
            return RatFunc._normalize(s, a * d2 + b * d1, d1 * d2)
        d2g = d2 // g
        return RatFunc._normalize(s, a * d2g + b * (d1 // g), d1 * d2g)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._make(self.shift, -self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = _coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return _coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = _coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        shift = self.shift + other.shift
        d1, d2 = self.den, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc._make(shift, self.num * other.num, d1)
        n1, n2 = self.num, other.num
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 // g, d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 // g, d1 // g
        return RatFunc._make(shift, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lc = self.num.leading_coefficient()
        return RatFunc._make(-self.shift, self.den / lc, self.num / lc)

    def __truediv__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = _coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_monomial():
            c = self.num[0] ** k
            return RatFunc._make(self.shift * k, fmpq_poly([c]), _ONE_POLY)
        return RatFunc._make(self.shift * k, self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = _coerce(other)
            else:
                return NotImplemented
        return (
            self.shift == other.shift and self.num == other.num and self.den == other.den
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self.shift, tuple(map(str, self.num.coeffs())), tuple(map(str, self.den.coeffs())))
            )
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        num = _render_terms(self.numerator.terms)
        if self.den.is_one():
            return num
        den = _render_terms(self.denominator.terms)
        return f"({num})/({den})"

    # -- evaluation & serialization ----------------------------------------
    def evaluate(self, q0: Rational) -> Fraction:
        return rf_eval(self, q0)

    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFunc":
        return rf_normalize(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _coerce(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        if x == 0:
            return ZERO
        if x == 1:
            return ONE
        return RatFunc(x)
    if isinstance(x, LaurentPoly):
        return RatFunc.from_laurent(x)
    raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")


ZERO = RatFunc.__new__(RatFunc)
ZERO.shift, ZERO.num, ZERO.den, ZERO._hash = 0, _ZERO_POLY, _ONE_POLY, None
ONE = RatFunc.__new__(RatFunc)
ONE.shift, ONE.num, ONE.den, ONE._hash = 0, _ONE_POLY, _ONE_POLY, None
Q = RatFunc.q_power(1)

_QPOW_CACHE: dict[int, RatFunc] = {}


def qpow(k: int) -> RatFunc:
    """``q**k`` (cached; these are by far the most common scalars)."""
    r = _QPOW_CACHE.get(k)
    if r is None:
        r = _QPOW_CACHE[k] = RatFunc.q_power(k)
    return r


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Canonical representative of ``num/den``."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    return RatFunc.from_laurent(num, den)


def gauss_integer(m: int) -> LaurentPoly:
    """The symmetric q-integer ``[m] = (q^m - q^-m)/(q - q^-1)``."""
    if m == 0:
        return LaurentPoly()
    sign = 1 if m > 0 else -1
    m = abs(m)
    return LaurentPoly({m - 1 - 2 * k: sign for k in range(m)})


def rf_eval(f: RatFunc, q0: Rational) -> Fraction:
    """Exact value of ``f`` at the rational point ``q0``."""
    q0 = _to_fmpq(q0)
    den = f.den(q0)
    if den == 0 or (q0 == 0 and f.shift < 0):
        raise ZeroDivisionError(f"{f} has a pole at q = {q0}")
    if f.num.is_zero():
        return Fraction(0)
    val = f.num(q0) / den
    if f.shift:
        val = val * q0 ** f.shift
    return _to_fraction(val)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _render_terms(terms: Mapping[int, Fraction]) -> str:
    """Human form, highest power first: ``q - 1 + q^-1``."""
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
