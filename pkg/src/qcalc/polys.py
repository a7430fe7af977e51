"""Multivariate polynomials over CoefExpr and the q-difference operators.

MPoly keys terms by exponent tuples aligned with a fixed, ordered variable
list.  The q-derivative is implemented by the monomial rule
x**n -> [n]_q x**(n-1), which agrees with the difference quotient
(f(qx) - f(x)) / ((q-1)x) on every polynomial and is total at x = 0.

Also here: the q-binomial power (a + b)(a + qb)...(a + q**(n-1) b) in both
its product and closed (Gaussian-binomial sum) routes, the holomorphic-pair
operators on (z, w), the q-Laplacian family, Jackson antidifferentiation,
and the truncated numeric Jackson integral.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import (
    CE_ONE,
    CE_ZERO,
    CoefExpr,
    GR_I,
    LaurentPoly,
    PoleError,
    UnsupportedOrderError,
)
from .qcore import gauss_binomial, q_int, q_int_reciprocal

__all__ = [
    "MPoly",
    "coef_to_complex",
    "q_binomial_power",
    "q_binomial_power_by_product",
    "q_power_closed",
    "q_power_product",
    "dbar_operator",
    "d_operator",
    "q_laplacian",
    "q_laplacian_chain",
    "jackson_antiderivative",
    "jackson_integral_numeric",
]


def _laurent_to_complex(p: LaurentPoly, s_value: float) -> complex:
    total = 0j
    for e, c in p.coeffs.items():
        total += complex(c) * s_value**e
    return total


def coef_to_complex(c: CoefExpr, q_value: float) -> complex:
    """Floating-point image of an exact coefficient at numeric q > 0.

    The only place where symbolic values meet floats; used by grid sampling.
    """
    s = q_value**0.5
    d = _laurent_to_complex(c.den, s)
    if d == 0:
        raise PoleError(f"denominator vanishes at q = {q_value}")
    return _laurent_to_complex(c.num, s) / d


class MPoly:
    """Sparse polynomial in named variables with CoefExpr coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean: dict[tuple[int, ...], CoefExpr] = {}
        if terms:
            width = len(self.vars)
            for exps, coef in terms.items():
                coef = CoefExpr.of(coef)
                if coef.is_zero():
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != width:
                    raise ValueError(f"exponent tuple {exps} does not match {self.vars}")
                if any(e < 0 for e in exps):
                    raise UnsupportedOrderError("negative exponents are not supported")
                clean[exps] = coef
        self.terms = clean

    @staticmethod
    def _raw(variables: tuple[str, ...], terms: dict) -> MPoly:
        out = MPoly.__new__(MPoly)
        out.vars = variables
        out.terms = terms
        return out

    @classmethod
    def zero(cls, variables) -> MPoly:
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, variables, value) -> MPoly:
        variables = tuple(variables)
        c = CoefExpr.of(value)
        if c.is_zero():
            return cls._raw(variables, {})
        return cls._raw(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name) -> MPoly:
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls._raw(variables, {tuple(exps): CE_ONE})

    @classmethod
    def monomial(cls, variables, exps, coef=1) -> MPoly:
        return cls(variables, {tuple(exps): coef})

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ValueError(f"variable {name!r} not among {self.vars}") from None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps) -> CoefExpr:
        return self.terms.get(tuple(exps), CE_ZERO)

    def total_degree(self, names=None) -> int:
        """Max total degree over the given variables (all by default); -1 if zero."""
        if not self.terms:
            return -1
        if names is None:
            return max(sum(e) for e in self.terms)
        idx = [self._index(n) for n in names]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self._index(name)
        return max(e[i] for e in self.terms)

    def _check_vars(self, other: MPoly):
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        self._check_vars(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[e]
                else:
                    out[e] = v
        return MPoly._raw(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check_vars(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly._raw(self.vars, {})
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], CoefExpr] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                v = out.get(e)
                if v is None:
                    if not p.is_zero():
                        out[e] = p
                else:
                    v = v + p
                    if v.is_zero():
                        del out[e]
                    else:
                        out[e] = v
        return MPoly._raw(self.vars, out)

    __rmul__ = __mul__

    def scale(self, value) -> MPoly:
        c = CoefExpr.of(value)
        if c.is_zero():
            return MPoly._raw(self.vars, {})
        return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise UnsupportedOrderError("negative polynomial powers are not supported")
        out = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction, CoefExpr, LaurentPoly)):
                other = MPoly.const(self.vars, other)
            else:
                return NotImplemented
        if self.vars != other.vars:
            return False
        for e in self.terms.keys() | other.terms.keys():
            if self.terms.get(e, CE_ZERO) != other.terms.get(e, CE_ZERO):
                return False
        return True

    def map_coeffs(self, fn) -> MPoly:
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[e] = v
        return MPoly._raw(self.vars, out)

    def at_s_one(self) -> MPoly:
        """Substitute s = 1 in every coefficient (the q -> 1 limit)."""
        return self.map_coeffs(lambda c: CoefExpr.of(LaurentPoly.const(c.at_one())))

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def with_vars(self, new_vars) -> MPoly:
        """Re-express over a variable list that contains every used variable."""
        new_vars = tuple(new_vars)
        pos = {}
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos[i] = new_vars.index(v)
            elif self.degree_in(v) > 0:
                raise ValueError(f"variable {v!r} in use but absent from {new_vars}")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, d in enumerate(e):
                if d:
                    ne[pos[i]] = d
            out[tuple(ne)] = c
        return MPoly._raw(new_vars, out)

    def rename_var(self, old: str, new: str) -> MPoly:
        i = self._index(old)
        if new in self.vars:
            raise ValueError(f"variable {new!r} already present")
        return MPoly._raw(
            self.vars[:i] + (new,) + self.vars[i + 1 :], dict(self.terms)
        )

    def substitute(self, name: str, replacement) -> MPoly:
        """Replace a variable by an MPoly (over the same variables) or scalar."""
        if not isinstance(replacement, MPoly):
            replacement = MPoly.const(self.vars, replacement)
        self._check_vars(replacement)
        i = self._index(name)
        powers = {0: MPoly.const(self.vars, 1)}
        out = MPoly.zero(self.vars)
        for e, c in self.terms.items():
            d = e[i]
            if d not in powers:
                powers[d] = replacement**d
            rest = e[:i] + (0,) + e[i + 1 :]
            out = out + powers[d] * MPoly._raw(self.vars, {rest: c})
        return out

    def eval_univariate(self, value) -> CoefExpr:
        """Evaluate a one-variable polynomial at a CoefExpr point."""
        if len(self.vars) != 1:
            raise ValueError("eval_univariate needs a univariate polynomial")
        value = CoefExpr.of(value)
        powers = {0: CE_ONE}
        total = CE_ZERO
        for (d,), c in sorted(self.terms.items()):
            if d not in powers:
                powers[d] = value**d
            total = total + c * powers[d]
        return total

    def q_derivative(self, name: str, direction: str = "q") -> MPoly:
        """Monomial-rule q-derivative in one variable.

        direction "q" sends x**n to [n]_q x**(n-1); direction "1/q" uses the
        reciprocal q-integers [n]_{1/q} = [n]_q / q**(n-1).
        """
        if direction not in ("q", "1/q"):
            raise ValueError("direction must be 'q' or '1/q'")
        factor = q_int if direction == "q" else q_int_reciprocal
        i = self._index(name)
        out: dict[tuple[int, ...], CoefExpr] = {}
        for e, c in self.terms.items():
            d = e[i]
            if d == 0:
                continue
            ne = e[:i] + (d - 1,) + e[i + 1 :]
            v = c * factor(d)
            prev = out.get(ne)
            if prev is not None:
                v = prev + v
            if not v.is_zero():
                out[ne] = v
            elif ne in out:
                del out[ne]
        return MPoly._raw(self.vars, out)

    def scale_substitute(self, name: str, s_power: int) -> MPoly:
        """Substitute var -> s**s_power * var; degree-d coefficients pick up
        s**(d*s_power).  s_power = 2 is x -> qx, s_power = 1 is x -> sqrt(q)x."""
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            out[e] = c * LaurentPoly.term(d * s_power) if d else c
        return MPoly._raw(self.vars, out)

    def jackson_antiderivative(self, name: str) -> MPoly:
        """Inverse of the q-derivative: x**n -> x**(n+1) / [n+1]_q."""
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            ne = e[:i] + (d + 1,) + e[i + 1 :]
            out[ne] = c * CoefExpr(LaurentPoly({0: 1}), q_int(d + 1))
        return MPoly._raw(self.vars, out)

    def shift_var_exact(self, name: str, delta: int) -> MPoly:
        """Multiply by var**delta; for negative delta every term must carry
        enough powers of the variable (exact division)."""
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            d = e[i] + delta
            if d < 0:
                raise ValueError(f"term {e} not divisible by {name}**{-delta}")
            out[e[:i] + (d,) + e[i + 1 :]] = c
        return MPoly._raw(self.vars, out)

    def truncate_total_degree(self, bound: int, names=None) -> MPoly:
        """Keep terms whose total degree over the given variables is <= bound."""
        if names is None:
            keep = lambda e: sum(e) <= bound
        else:
            idx = [self._index(n) for n in names]
            keep = lambda e: sum(e[i] for i in idx) <= bound
        return MPoly._raw(self.vars, {e: c for e, c in self.terms.items() if keep(e)})

    def eval_float(self, q_value: float, assign: dict[str, float]) -> complex:
        point = [assign[v] for v in self.vars]
        total = 0j
        for e, c in self.terms.items():
            p = coef_to_complex(c, q_value)
            for x, d in zip(point, e):
                if d:
                    p *= x**d
            total += p
        return total

    def __repr__(self):
        return f"MPoly({self.vars}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(
                f"{v}^{d}" if d > 1 else v
                for v, d in zip(self.vars, e)
                if d
            )
            c = self.terms[e]
            parts.append(f"[{c!r}]{('*' + mono) if mono else ''}")
        return " + ".join(parts)


def q_power_product(a: MPoly, b: MPoly, n: int) -> MPoly:
    """The ordered product (a + b)(a + qb)(a + q^2 b)...(a + q^(n-1) b)."""
    if n < 0:
        raise UnsupportedOrderError("q-binomial powers need n >= 0")
    out = MPoly.const(a.vars, 1)
    for k in range(n):
        out = out * (a + b.scale(LaurentPoly.term(2 * k)))
    return out


def q_power_closed(a: MPoly, b: MPoly, n: int) -> MPoly:
    """Gaussian-binomial closed form of the same product:
    sum_k gauss(n,k) q^(k(k-1)/2) a^(n-k) b^k."""
    if n < 0:
        raise UnsupportedOrderError("q-binomial powers need n >= 0")
    out = MPoly.zero(a.vars)
    a_pow = {0: MPoly.const(a.vars, 1)}
    b_pow = {0: MPoly.const(a.vars, 1)}
    for k in range(n + 1):
        if n - k not in a_pow:
            a_pow[n - k] = a ** (n - k)
        if k not in b_pow:
            b_pow[k] = b_pow[k - 1] * b
        coef = CoefExpr.of(gauss_binomial(n, k) * LaurentPoly.term(k * (k - 1)))
        out = out + (a_pow[n - k] * b_pow[k]).scale(coef)
    return out


def q_binomial_power(a_var: str, b_coef, b_var: str, n: int, variables=None) -> MPoly:
    """Expansion of (a + b_coef*b)(a + q*b_coef*b)...(a + q^(n-1)*b_coef*b)
    by the closed Gaussian-binomial form, built term by term."""
    if n < 0:
        raise UnsupportedOrderError("q-binomial powers need n >= 0")
    if a_var == b_var:
        raise ValueError("q_binomial_power needs two distinct variables")
    variables = tuple(variables) if variables is not None else (a_var, b_var)
    ia, ib = variables.index(a_var), variables.index(b_var)
    b_coef = CoefExpr.of(b_coef)
    terms = {}
    bc = CE_ONE
    for k in range(n + 1):
        exps = [0] * len(variables)
        exps[ia] = n - k
        exps[ib] = k
        coef = bc * CoefExpr.of(gauss_binomial(n, k) * LaurentPoly.term(k * (k - 1)))
        if not coef.is_zero():
            terms[tuple(exps)] = coef
        bc = bc * b_coef
    return MPoly._raw(variables, terms)


def q_binomial_power_by_product(
    a_var: str, b_coef, b_var: str, n: int, variables=None
) -> MPoly:
    """Same value as q_binomial_power but via the repeated product; kept as the
    independent route for cross-checking."""
    variables = tuple(variables) if variables is not None else (a_var, b_var)
    a = MPoly.var(variables, a_var)
    b = MPoly.var(variables, b_var).scale(b_coef)
    return q_power_product(a, b, n)


def dbar_operator(p: MPoly, zvar: str = "z", wvar: str = "w") -> MPoly:
    """Half the sum D_q in z plus i times D_{1/q} in w; annihilates every
    q-binomial power of z + i w."""
    return (
        p.q_derivative(zvar, "q") + p.q_derivative(wvar, "1/q").scale(GR_I)
    ).scale(Fraction(1, 2))


def d_operator(p: MPoly, zvar: str = "z", wvar: str = "w") -> MPoly:
    """The conjugate combination: half of D_q in z minus i D_{1/q} in w."""
    return (
        p.q_derivative(zvar, "q") - p.q_derivative(wvar, "1/q").scale(GR_I)
    ).scale(Fraction(1, 2))


def q_laplacian(p: MPoly, level: int = 0, zvar: str = "z", wvar: str = "w") -> MPoly:
    """(D_q^z)^2 + q^level (D_{1/q}^w)^2 applied exactly."""
    if level < 0:
        raise UnsupportedOrderError("q-Laplacian level must be >= 0")
    zz = p.q_derivative(zvar, "q").q_derivative(zvar, "q")
    ww = p.q_derivative(wvar, "1/q").q_derivative(wvar, "1/q")
    if level:
        ww = ww.scale(LaurentPoly.term(2 * level))
    return zz + ww


def q_laplacian_chain(p: MPoly, m: int, zvar: str = "z", wvar: str = "w") -> MPoly:
    """Compose the q-Laplacian levels 0, 1, ..., m-1 (level 0 innermost)."""
    if m < 0:
        raise UnsupportedOrderError("chain length must be >= 0")
    out = p
    for level in range(m):
        out = q_laplacian(out, level, zvar, wvar)
    return out


def jackson_antiderivative(p: MPoly, name: str) -> MPoly:
    """Module-level alias for MPoly.jackson_antiderivative."""
    return p.jackson_antiderivative(name)


def jackson_integral_numeric(g, a, b, q_value, terms: int):
    """Truncated Jackson integral of g from a to b with J = terms summands.

    Returns (value, tail_bound) where value is
    (1-q) b sum_{j<J} q^j g(q^j b) - (1-q) a sum_{j<J} q^j g(q^j a)
    and tail_bound = (|a| + |b|) q^J max|g| over the residual interval
    [-q^J max(|a|,|b|), q^J max(|a|,|b|)], with max|g| estimated on a dense
    grid.  Exact input types (Fraction) are preserved in the value.
    """
    if not 0 < q_value < 1:
        raise ValueError("the Jackson sum requires 0 < q < 1")
    if terms < 0:
        raise ValueError("the number of terms must be >= 0")
    one_minus_q = 1 - q_value

    def endpoint(p):
        total = 0
        qj = q_value**0
        for _ in range(terms):
            total += qj * g(qj * p)
            qj *= q_value
        return one_minus_q * p * total

    value = endpoint(b) - endpoint(a)
    reach = (q_value**terms) * max(abs(a), abs(b))
    grid_max = 0.0
    if reach:
        steps = 128
        for i in range(steps + 1):
            xi = reach * (Fraction(2 * i, steps) - 1)
            grid_max = max(grid_max, abs(float(g(xi))))
    else:
        grid_max = abs(float(g(0 * q_value)))
    bound = float((abs(a) + abs(b)) * q_value**terms) * grid_max
    return value, bound
