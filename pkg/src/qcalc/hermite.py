"""Classical and q-deformed Hermite polynomials.

The q-family is constructed from the closed-form sum extracted from its
generating function e_q(-t^2) e_q([2]_q t x): every coefficient is the
exact polynomial (-1)^k [n]_q! [2]_q^(n-2k) / ([k]_q! [n-2k]_q!), assembled
from cached q-factorial ratios so no division is ever performed.  The
sqrt(q) recurrence is exercised in the test suite rather than used to build.

Degree-n entries are cached per family; caches are append-only behind a lock
and every returned value is immutable.
"""

from __future__ import annotations

import threading

from .coeffs import CE_ZERO, CoefExpr, UnsupportedOrderError
from .polys import MPoly
from .qcore import factorial_ratio, gauss_binomial, q_int

__all__ = [
    "hermite_classical",
    "q_hermite",
    "q_hermite_dual",
    "q_hermite_special_value",
]

_lock = threading.Lock()
_classical: list[MPoly] = []
_deformed: list[MPoly] = []
_dual: list[MPoly] = []


def hermite_classical(n: int) -> MPoly:
    """Physicists' Hermite polynomial of degree n, by the standard recurrence
    H_{k+1} = 2x H_k - 2k H_{k-1}; integer coefficients, leading term (2x)^n."""
    if n < 0:
        raise UnsupportedOrderError("Hermite degree must be >= 0")
    with _lock:
        if not _classical:
            _classical.append(MPoly.const(("x",), 1))
            _classical.append(MPoly.monomial(("x",), (1,), 2))
        x2 = _classical[1]
        while len(_classical) <= n:
            k = len(_classical) - 1
            _classical.append(
                x2 * _classical[k] - _classical[k - 1].scale(2 * k)
            )
        return _classical[n]


def q_hermite(n: int) -> MPoly:
    """Degree-n q-Hermite polynomial in x with LaurentPoly coefficients.

    H_n = sum over k <= n/2 of
    (-1)^k ([n]_q!/([k]_q! [n-2k]_q!)) [2]_q^(n-2k) x^(n-2k);
    reduces to the classical polynomial at q = 1 and has leading
    coefficient [2]_q^n.
    """
    if n < 0:
        raise UnsupportedOrderError("Hermite degree must be >= 0")
    with _lock:
        while len(_deformed) <= n:
            _deformed.append(_build_q_hermite(len(_deformed)))
        return _deformed[n]


def _build_q_hermite(n: int) -> MPoly:
    two = q_int(2)
    terms = {}
    for k in range(n // 2 + 1):
        d = n - 2 * k
        # [n]!/([k]![n-2k]!) = gauss(n, 2k) * ([2k]!/[k]!)
        coef = gauss_binomial(n, 2 * k) * factorial_ratio(2 * k, k) * two**d
        if k % 2:
            coef = -coef
        terms[(d,)] = CoefExpr.of(coef)
    return MPoly._raw(("x",), terms)


def q_hermite_dual(k: int, var: str = "w") -> MPoly:
    """The companion polynomial H_k(q w; 1/q): the q -> 1/q image of the
    degree-k q-Hermite polynomial with its variable rescaled by q."""
    if k < 0:
        raise UnsupportedOrderError("Hermite degree must be >= 0")
    with _lock:
        while len(_dual) <= k:
            m = len(_dual)
            while len(_deformed) <= m:
                _deformed.append(_build_q_hermite(len(_deformed)))
            p = _deformed[m].map_coeffs(lambda c: c.substitute_inverse_q())
            _dual.append(p.scale_substitute("x", 2))
        entry = _dual[k]
    return entry.rename_var("x", var) if var != "x" else entry


def q_hermite_special_value(n: int) -> CoefExpr:
    """Value at the origin: (-1)^m [2m]_q!/[m]_q! for even n = 2m, zero for odd n."""
    if n < 0:
        raise UnsupportedOrderError("Hermite degree must be >= 0")
    if n % 2:
        return CE_ZERO
    m = n // 2
    value = factorial_ratio(2 * m, m)
    if m % 2:
        value = -value
    return CoefExpr.of(value)
