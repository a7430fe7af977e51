"""Exact coefficient arithmetic for the q-calculus engine.

Three layers, all immutable and exact (no floating point ever enters a value):

* ``GaussianRational`` -- complex numbers a + b*i with arbitrary-precision
  rational parts.  Hosts the imaginary unit and every plain numeric factor.
* ``LaurentPoly`` -- Laurent polynomials in a single formal variable s over
  the Gaussian rationals.  The deformation parameter is q = s**2, so square
  roots of q and half-integer powers q**(k/2) are ordinary monomials in s,
  and the substitution s -> 1/s realises q -> 1/q exactly.
* ``CoefExpr`` -- the fraction field num/den of Laurent polynomials.
  Equality is decided by cross-multiplication; no canonical form or GCD
  machinery is required (or used).  A denominator that is a single monomial
  is folded into the numerator on construction, so most values in practice
  are plain Laurent polynomials with den == 1.

LaurentPoly is canonical (zero coefficients are never stored), which makes
zero tests and denominator sharing cheap: mathematically equal denominators
are structurally equal dicts.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "QCalcError",
    "ZeroDenominatorError",
    "PoleError",
    "NeedsSquareRootError",
    "UnsupportedOrderError",
    "GaussianRational",
    "LaurentPoly",
    "CoefExpr",
    "as_gaussian",
    "GR_ZERO",
    "GR_ONE",
    "GR_I",
    "LP_ZERO",
    "LP_ONE",
    "LP_S",
    "LP_Q",
    "CE_ZERO",
    "CE_ONE",
    "CE_I",
    "CE_Q",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


class QCalcError(Exception):
    """Base class for errors raised by the engine."""


class ZeroDenominatorError(QCalcError, ZeroDivisionError):
    """Inversion of zero, or construction of a fraction with zero denominator."""


class PoleError(QCalcError, ZeroDivisionError):
    """Evaluation at a point where the denominator vanishes."""


class NeedsSquareRootError(QCalcError, ValueError):
    """Evaluation with odd powers of s present but no square root of q supplied."""


class UnsupportedOrderError(QCalcError, ValueError):
    """Negative index where only nonnegative indices are defined."""


class GaussianRational:
    """a + b*i with exact Fraction components; supports field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> GaussianRational:
        return _gr(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDenominatorError("inverse of zero")
        return _gr(self.re / n, -self.im / n)

    def __add__(self, other):
        other = as_gaussian(other)
        if self.im or other.im:
            return _gr(self.re + other.re, self.im + other.im)
        return _gr(self.re + other.re, _F0)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gaussian(other)
        if self.im or other.im:
            return _gr(self.re - other.re, self.im - other.im)
        return _gr(self.re - other.re, _F0)

    def __rsub__(self, other):
        return as_gaussian(other) - self

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __mul__(self, other):
        other = as_gaussian(other)
        if self.im or other.im:
            return _gr(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return _gr(self.re * other.re, _F0)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * as_gaussian(other).inverse()

    def __rtruediv__(self, other):
        return as_gaussian(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            other = as_gaussian(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


def _gr(re: Fraction, im: Fraction) -> GaussianRational:
    out = GaussianRational.__new__(GaussianRational)
    out.re = re
    out.im = im
    return out


def as_gaussian(x) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational to GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return _gr(Fraction(x), _F0)
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


GR_ZERO = _gr(_F0, _F0)
GR_ONE = _gr(_F1, _F0)
GR_I = _gr(_F0, _F1)


class LaurentPoly:
    """Laurent polynomial in s, stored as {exponent: nonzero GaussianRational}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean: dict[int, GaussianRational] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = as_gaussian(c)
                if c:
                    clean[int(e)] = c
        self.coeffs = clean

    @staticmethod
    def _raw(coeffs: dict[int, GaussianRational]) -> LaurentPoly:
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = coeffs
        return out

    @classmethod
    def const(cls, value) -> LaurentPoly:
        c = as_gaussian(value)
        return cls._raw({0: c} if c else {})

    @classmethod
    def term(cls, exponent: int, value=1) -> LaurentPoly:
        c = as_gaussian(value)
        return cls._raw({exponent: c} if c else {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: GR_ONE} or (
            len(self.coeffs) == 1 and self.coeffs.get(0) == GR_ONE
        )

    def as_monomial(self):
        """Return (exponent, coefficient) if this is a single term, else None."""
        if len(self.coeffs) == 1:
            return next(iter(self.coeffs.items()))
        return None

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def span(self) -> int:
        """Degree span max_exp - min_exp (0 for the zero polynomial)."""
        if not self.coeffs:
            return 0
        return max(self.coeffs) - min(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LP_ZERO
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, GaussianRational] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                v = out.get(e)
                p = ca * cb
                if v is None:
                    if p:
                        out[e] = p
                else:
                    v = v + p
                    if v:
                        out[e] = v
                    else:
                        del out[e]
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def scale(self, value) -> LaurentPoly:
        c = as_gaussian(value)
        if not c:
            return LP_ZERO
        return LaurentPoly._raw({e: v * c for e, v in self.coeffs.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by s**k (add k to every exponent)."""
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self.coeffs.items()})

    def __pow__(self, n: int):
        if n < 0:
            mono = self.as_monomial()
            if mono is None:
                raise ZeroDenominatorError(
                    "negative power of a non-monomial Laurent polynomial"
                )
            e, c = mono
            return LaurentPoly._raw({e * n: _gauss_pow(c.inverse(), -n)})
        out = LP_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def stretch(self, k: int) -> LaurentPoly:
        """Substitute s -> s**k (k nonzero); k = -1 is the involution q -> 1/q."""
        if k == 0:
            raise ValueError("stretch factor must be nonzero")
        if k == 1:
            return self
        return LaurentPoly._raw({e * k: c for e, c in self.coeffs.items()})

    def invert_s(self) -> LaurentPoly:
        return self.stretch(-1)

    def eval_s(self, s_value) -> GaussianRational:
        """Exact evaluation at a nonzero rational (or Gaussian rational) s."""
        s = as_gaussian(s_value)
        if not s:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at s = 0")
        total = GR_ZERO
        for e, c in self.coeffs.items():
            if e >= 0:
                p = GR_ONE if e == 0 else _gauss_pow(s, e)
            else:
                p = _gauss_pow(s.inverse(), -e)
            total = total + c * p
        return total

    def eval_q(self, q_value) -> GaussianRational:
        """Exact evaluation with q = s**2 given; requires even exponents only."""
        q = as_gaussian(q_value)
        total = GR_ZERO
        qinv = None
        for e, c in self.coeffs.items():
            if e % 2:
                raise NeedsSquareRootError(
                    "odd power of s present; supply a square root of q"
                )
            k = e // 2
            if k >= 0:
                p = GR_ONE if k == 0 else _gauss_pow(q, k)
            else:
                if qinv is None:
                    qinv = q.inverse()
                p = _gauss_pow(qinv, -k)
            total = total + c * p
        return total

    def at_one(self) -> GaussianRational:
        """The q -> 1 limit: substitute s = 1 (sum of all coefficients)."""
        total = GR_ZERO
        for c in self.coeffs.values():
            total = total + c
        return total

    def divexact(self, other: LaurentPoly):
        """Exact quotient self / other, or None when the division leaves a remainder."""
        if other.is_zero():
            raise ZeroDenominatorError("division by the zero polynomial")
        if not self.coeffs:
            return LP_ZERO
        rem = dict(self.coeffs)
        dmax = max(other.coeffs)
        dmin = min(other.coeffs)
        lead_inv = other.coeffs[dmax].inverse()
        qmin = min(rem) - dmin
        out: dict[int, GaussianRational] = {}
        while rem:
            e = max(rem)
            qe = e - dmax
            if qe < qmin:
                return None
            c = rem[e] * lead_inv
            out[qe] = c
            for de, dc in other.coeffs.items():
                te = de + qe
                v = rem.get(te, GR_ZERO) - c * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return LaurentPoly._raw(out)

    def conjugate_i(self) -> LaurentPoly:
        """Conjugate every coefficient (i -> -i); the identity on real values."""
        return LaurentPoly._raw({e: c.conjugate() for e, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"({c})")
            elif e == 1:
                parts.append(f"({c})*s")
            else:
                parts.append(f"({c})*s^{e}")
        return " + ".join(parts)


def _gauss_pow(base: GaussianRational, n: int) -> GaussianRational:
    out = GR_ONE
    b = base
    while n:
        if n & 1:
            out = out * b
        n >>= 1
        if n:
            b = b * b
    return out


LP_ZERO = LaurentPoly._raw({})
LP_ONE = LaurentPoly._raw({0: GR_ONE})
LP_S = LaurentPoly._raw({1: GR_ONE})
LP_Q = LaurentPoly._raw({2: GR_ONE})


class CoefExpr:
    """Fraction num/den of Laurent polynomials in s; equality by cross-multiplication.

    Monomial denominators are folded into the numerator on construction, and a
    zero numerator normalises the denominator to 1, so ``num.is_zero()`` is a
    reliable zero test.  Denominators are otherwise left unreduced.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = LP_ONE):
        if not isinstance(num, LaurentPoly) or not isinstance(den, LaurentPoly):
            raise TypeError("CoefExpr needs LaurentPoly numerator and denominator")
        if den is not LP_ONE:
            if den.is_zero():
                raise ZeroDenominatorError("zero denominator")
            if num.is_zero():
                den = LP_ONE
            else:
                mono = den.as_monomial()
                if mono is not None:
                    e, c = mono
                    if e or c != GR_ONE:
                        num = num.shift(-e).scale(c.inverse())
                    den = LP_ONE
        self.num = num
        self.den = den

    @classmethod
    def of(cls, x) -> CoefExpr:
        """Coerce CoefExpr | LaurentPoly | GaussianRational | Fraction | int."""
        if isinstance(x, CoefExpr):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        return cls(LaurentPoly.const(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _same_den(self, other: CoefExpr) -> bool:
        return self.den is other.den or self.den.coeffs == other.den.coeffs

    def __add__(self, other):
        other = CoefExpr.of(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self._same_den(other):
            return CoefExpr(self.num + other.num, self.den)
        return CoefExpr(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-CoefExpr.of(other))

    def __rsub__(self, other):
        return CoefExpr.of(other) + (-self)

    def __neg__(self):
        return CoefExpr(-self.num, self.den)

    def __mul__(self, other):
        other = CoefExpr.of(other)
        if self.num.is_zero() or other.num.is_zero():
            return CE_ZERO
        if self.den is LP_ONE and other.den is LP_ONE:
            return CoefExpr(self.num * other.num)
        return CoefExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> CoefExpr:
        if self.num.is_zero():
            raise ZeroDenominatorError("inverse of zero")
        return CoefExpr(self.den, self.num)

    def __truediv__(self, other):
        return self * CoefExpr.of(other).inverse()

    def __rtruediv__(self, other):
        return CoefExpr.of(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CE_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (CoefExpr, LaurentPoly, GaussianRational, int, Fraction)):
            other = CoefExpr.of(other)
            if self._same_den(other):
                return self.num == other.num
            if self.num.is_zero():
                return other.num.is_zero()
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def eq_by_sampling(self, other) -> bool:
        """Decide equality by evaluating the cross-product difference at
        span+1 distinct rational points s = 1, 2, 3, ...; agrees with
        cross-multiplication because a polynomial of degree span with that
        many roots is zero."""
        other = CoefExpr.of(other)
        diff = self.num * other.den - other.num * self.den
        if diff.is_zero():
            return True
        span = diff.span()
        return all(
            diff.eval_s(Fraction(k)).is_zero() for k in range(1, span + 2)
        )

    def substitute_inverse_q(self) -> CoefExpr:
        """Apply s -> 1/s to numerator and denominator (realises q -> 1/q)."""
        return CoefExpr(self.num.invert_s(), self.den.invert_s())

    def stretch(self, k: int) -> CoefExpr:
        return CoefExpr(self.num.stretch(k), self.den.stretch(k))

    def conjugate_i(self) -> CoefExpr:
        return CoefExpr(self.num.conjugate_i(), self.den.conjugate_i())

    def is_real(self) -> bool:
        """True when the value is fixed by i -> -i (real coefficients up to
        the fraction-field equality)."""
        return self == self.conjugate_i()

    def lower(self) -> LaurentPoly:
        """Lossless lowering to a LaurentPoly; exact division must succeed."""
        if self.den is LP_ONE:
            return self.num
        q = self.num.divexact(self.den)
        if q is None:
            raise ValueError("denominator does not divide numerator exactly")
        return q

    def eval_q(self, q_value, s_value=None) -> GaussianRational:
        """Exact evaluation at rational q (and optional s with s**2 == q).

        Raises PoleError when the denominator vanishes at the point and
        NeedsSquareRootError when odd powers of s appear but no s is given.
        """
        if s_value is not None:
            s = as_gaussian(s_value)
            if s * s != as_gaussian(q_value):
                raise ValueError("s_value squared must equal q_value")
            n = self.num.eval_s(s)
            d = self.den.eval_s(s)
        else:
            n = self.num.eval_q(q_value)
            d = self.den.eval_q(q_value)
        if not d:
            raise PoleError(f"denominator vanishes at q = {q_value}")
        return n / d

    def at_one(self) -> GaussianRational:
        d = self.den.at_one()
        if not d:
            raise PoleError("denominator vanishes at q = 1")
        return self.num.at_one() / d

    def __repr__(self):
        if self.den is LP_ONE:
            return f"CoefExpr({self.num!s})"
        return f"CoefExpr(({self.num!s}) / ({self.den!s}))"


CE_ZERO = CoefExpr(LP_ZERO)
CE_ONE = CoefExpr(LP_ONE)
CE_I = CoefExpr(LaurentPoly.const(GR_I))
CE_Q = CoefExpr(LP_Q)
