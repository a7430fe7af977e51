"""Multivariate polynomial and q-operator tests."""

import random
from fractions import Fraction

import pytest

from qcalc.coeffs import (
    CE_ONE,
    CoefExpr,
    GaussianRational,
    GR_I,
    LaurentPoly,
    LP_ONE,
    LP_Q,
    UnsupportedOrderError,
)
from qcalc.polys import (
    MPoly,
    d_operator,
    dbar_operator,
    jackson_integral_numeric,
    q_binomial_power,
    q_binomial_power_by_product,
    q_laplacian,
    q_laplacian_chain,
)
from qcalc.qcore import q_int


def xpoly(terms):
    return MPoly(("x",), terms)


class TestMPolyBasics:
    def test_arithmetic(self):
        p = MPoly(("x", "y"), {(1, 0): 1, (0, 1): 2})
        q = MPoly(("x", "y"), {(1, 0): -1, (1, 1): 3})
        assert (p + q) - q == p
        assert p * q == MPoly(
            ("x", "y"),
            {(2, 0): -1, (1, 1): -2, (2, 1): 3, (1, 2): 6},
        )

    def test_eq_against_scalars(self):
        assert MPoly.const(("x",), 5) == 5
        assert not MPoly.var(("x",), "x") == 5

    def test_negative_exponent_rejected(self):
        with pytest.raises(UnsupportedOrderError):
            MPoly(("x",), {(-1,): 1})

    def test_substitute_zero_and_poly(self):
        p = MPoly(("x", "t"), {(2, 0): 1, (1, 1): 4, (0, 0): 7})
        at2 = p.substitute("t", 0)
        assert at2 == MPoly(("x", "t"), {(2, 0): 1, (0, 0): 7})
        swapped = p.substitute("t", MPoly.var(("x", "t"), "x"))
        assert swapped == MPoly(("x", "t"), {(2, 0): 5, (0, 0): 7})

    def test_with_vars_and_rename(self):
        p = MPoly(("x",), {(3,): 2})
        q = p.with_vars(("a", "x", "b"))
        assert q.degree_in("x") == 3 and q.degree_in("a") == 0
        with pytest.raises(ValueError):
            p.with_vars(("a", "b"))
        assert p.rename_var("x", "z").vars == ("z",)

    def test_truncate_total_degree(self):
        p = MPoly(("x", "t", "c"), {(2, 2, 5): 1, (1, 0, 0): 1})
        assert p.truncate_total_degree(3, names=("x", "t")).terms == {
            (1, 0, 0): CE_ONE
        }

    def test_pow_matches_repeated_mul(self):
        p = MPoly(("x",), {(1,): 1, (0,): 1})
        assert p**3 == p * p * p

    def test_shift_var_exact(self):
        p = MPoly(("x", "c"), {(1, 2): 1})
        assert p.shift_var_exact("c", -2) == MPoly(("x", "c"), {(1, 0): 1})
        with pytest.raises(ValueError):
            p.shift_var_exact("c", -3)


class TestQDerivative:
    def test_monomial_rule(self):
        assert xpoly({(3,): 1}).q_derivative("x") == xpoly({(2,): q_int(3)})

    def test_reciprocal_direction(self):
        w2 = MPoly(("w",), {(2,): 1})
        d = w2.q_derivative("w", "1/q")
        # [2]_{1/q} = (1+q)/q
        assert d == MPoly(("w",), {(1,): CoefExpr(q_int(2), LP_Q)})

    def test_constant(self):
        assert MPoly.const(("x",), 7).q_derivative("x").is_zero()

    def test_difference_quotient_cross_check(self):
        """The monomial rule agrees with (f(qx) - f(x)) / ((q-1)x) at random
        nonzero rational points."""
        rng = random.Random(7)
        for _ in range(25):
            coeffs = {
                (d,): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                for d in range(rng.randint(1, 7))
            }
            p = xpoly(coeffs)
            a = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([-1, 1])
            q0 = Fraction(rng.randint(2, 9), rng.randint(1, 9))
            if q0 == 1:
                q0 += 1

            def value(poly, point):
                return poly.eval_univariate(CoefExpr.of(point)).eval_q(q0)

            lhs = value(p.q_derivative("x"), a)
            rhs = (value(p, q0 * a) - value(p, a)) / GaussianRational((q0 - 1) * a)
            assert lhs == rhs

    def test_monomial_splitting_consistency(self):
        # q^m [n] + [m] == [m+n], the two-way product evaluation of D_q x^(m+n)
        for total in range(25):
            for m in range(total + 1):
                n = total - m
                assert LaurentPoly.term(2 * m) * q_int(n) + q_int(m) == q_int(total)


class TestScaleSubstitute:
    def test_examples(self):
        x2 = xpoly({(2,): 1})
        assert x2.scale_substitute("x", 2) == xpoly({(2,): LaurentPoly.term(4)})
        assert x2.scale_substitute("x", 1) == xpoly({(2,): LP_Q})
        h1 = xpoly({(1,): q_int(2)})
        assert h1.scale_substitute("x", 2) == xpoly({(1,): q_int(2) * LP_Q})


class TestQBinomialPower:
    def test_printed_expansion(self):
        p = q_binomial_power("z", GR_I, "w", 2)
        assert p == MPoly(
            ("z", "w"),
            {
                (2, 0): 1,
                (1, 1): CoefExpr.of(q_int(2)) * GR_I,
                (0, 2): LaurentPoly({2: -1}),
            },
        )

    def test_real_signs(self):
        c = Fraction(2, 3)
        p = q_binomial_power("x", -c, "t", 2)
        assert p == MPoly(
            ("x", "t"),
            {
                (2, 0): 1,
                (1, 1): CoefExpr.of(q_int(2)) * (-c),
                (0, 2): LaurentPoly({2: c * c}),
            },
        )

    def test_empty_product(self):
        assert q_binomial_power("z", GR_I, "w", 0) == MPoly.const(("z", "w"), 1)

    def test_product_route_agreement(self):
        for n in range(13):
            closed = q_binomial_power("z", GR_I, "w", n)
            product = q_binomial_power_by_product("z", GR_I, "w", n)
            assert closed == product
        c = Fraction(-3, 2)
        for n in range(9):
            assert q_binomial_power("x", c, "t", n) == q_binomial_power_by_product(
                "x", c, "t", n
            )

    def test_negative_power_rejected(self):
        with pytest.raises(UnsupportedOrderError):
            q_binomial_power("z", GR_I, "w", -1)


class TestPairOperators:
    def test_dbar_examples(self):
        assert dbar_operator(q_binomial_power("z", GR_I, "w", 2)).is_zero()
        z_plus_iw = q_binomial_power("z", GR_I, "w", 1)
        assert dbar_operator(z_plus_iw).is_zero()
        z_minus_iw = MPoly(("z", "w"), {(1, 0): 1, (0, 1): -GR_I})
        assert dbar_operator(z_minus_iw) == MPoly.const(("z", "w"), 1)

    def test_d_examples(self):
        assert d_operator(q_binomial_power("z", GR_I, "w", 1)) == MPoly.const(
            ("z", "w"), 1
        )
        assert d_operator(q_binomial_power("z", GR_I, "w", 2)) == q_binomial_power(
            "z", GR_I, "w", 1
        ).scale(q_int(2))
        assert d_operator(MPoly.const(("z", "w"), 5)).is_zero()

    def test_operator_relations_up_to_twelve(self):
        for n in range(1, 13):
            p = q_binomial_power("z", GR_I, "w", n)
            assert dbar_operator(p).is_zero()
            assert d_operator(p) == q_binomial_power("z", GR_I, "w", n - 1).scale(
                q_int(n)
            )

    def test_classical_limit_annihilation(self):
        # at s = 1 the pair operator annihilates the classical binomial power
        z_plus_iw = MPoly(("z", "w"), {(1, 0): 1, (0, 1): GR_I})
        for n in range(7):
            assert dbar_operator(z_plus_iw**n).at_s_one().is_zero()


class TestQLaplacian:
    def test_level_zero_annihilates(self):
        assert q_laplacian(q_binomial_power("z", GR_I, "w", 2)).is_zero()

    def test_on_z_squared(self):
        p = MPoly(("z", "w"), {(2, 0): 1})
        assert q_laplacian(p) == MPoly.const(("z", "w"), q_int(2))

    def test_nested_chains(self):
        for n in range(9):
            p = q_binomial_power("z", GR_I, "w", n)
            for m in range(1, 4):
                assert q_laplacian_chain(p, m).is_zero()

    def test_level_one_alone_does_not_annihilate(self):
        # the chain order matters: the level-1 operator by itself leaves
        # [2]_q (1 - q) on the quadratic binomial
        p = q_binomial_power("z", GR_I, "w", 2)
        res = q_laplacian(p, level=1)
        assert res == MPoly.const(("z", "w"), q_int(2) * LaurentPoly({0: 1, 2: -1}))


class TestJacksonAntiderivative:
    def test_examples(self):
        x2 = xpoly({(2,): 1})
        assert x2.jackson_antiderivative("x") == xpoly(
            {(3,): CoefExpr(LP_ONE, q_int(3))}
        )
        assert MPoly.const(("x",), 1).jackson_antiderivative("x") == xpoly({(1,): 1})
        g = MPoly(("x", "c"), {(1, 1): CoefExpr.of(-q_int(2))})
        assert g.jackson_antiderivative("x") == MPoly(
            ("x", "c"), {(2, 1): CoefExpr.of(-1)}
        )

    def test_inverts_derivative(self):
        rng = random.Random(11)
        for _ in range(10):
            p = xpoly(
                {
                    (d,): Fraction(rng.randint(-6, 6))
                    for d in range(rng.randint(1, 8))
                }
            )
            assert p.jackson_antiderivative("x").q_derivative("x") == p


class TestJacksonIntegralNumeric:
    def test_constant_converges_to_one(self):
        value, bound = jackson_integral_numeric(lambda x: 1.0, 0.0, 1.0, 0.5, 30)
        assert abs(value - 1.0) <= 1e-8
        assert bound >= 0

    def test_linear_integrand(self):
        value, _ = jackson_integral_numeric(lambda x: x, 0.0, 1.0, 0.5, 60)
        assert abs(value - 2.0 / 3.0) <= 1e-12

    def test_equal_endpoints(self):
        value, _ = jackson_integral_numeric(lambda x: x * x, 0.75, 0.75, 0.5, 10)
        assert value == 0

    def test_invalid_q(self):
        for bad in (0, 1, 1.5, -0.5):
            with pytest.raises(ValueError):
                jackson_integral_numeric(lambda x: 1.0, 0.0, 1.0, bad, 5)

    def test_truncation_respects_reported_bound(self):
        """Exact-rational truncated sums stay within the reported tail bound
        of the exact antiderivative difference."""
        rng = random.Random(23)
        for q0 in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            for _ in range(6):
                coeffs = {
                    (d,): Fraction(rng.randint(-5, 5))
                    for d in range(rng.randint(1, 6))
                }
                p = xpoly(coeffs)
                anti = p.jackson_antiderivative("x")

                def g(x):
                    return p.eval_univariate(CoefExpr.of(Fraction(x))).eval_q(q0).re

                a = Fraction(rng.randint(-3, 3))
                b = Fraction(rng.randint(-3, 3))
                for terms in (8, 16, 32):
                    value, bound = jackson_integral_numeric(g, a, b, q0, terms)
                    exact = (
                        anti.eval_univariate(CoefExpr.of(b)).eval_q(q0).re
                        - anti.eval_univariate(CoefExpr.of(a)).eval_q(q0).re
                    )
                    assert abs(float(value - exact)) <= bound + 1e-15
