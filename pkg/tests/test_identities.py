"""Verdict machinery and identity verifications at module-test ranges.
(The acceptance suite re-runs them at the full ranges.)"""

from fractions import Fraction

import pytest

from qcalc.coeffs import CoefExpr, GR_I, LP_ONE, PoleError
from qcalc.hermite import hermite_classical, q_hermite, q_hermite_dual
from qcalc.identities import (
    IDENTITY_CHECKS,
    verify_double_q_analytic,
    verify_exp_factorization,
    verify_exp_product,
    verify_hermite_binomial,
    verify_q_hermite_binomial,
    verify_q_laplacian_identity,
    verify_traveling_hermite_expansion,
    verify_xi_identity,
)
from qcalc.polys import MPoly, q_binomial_power
from qcalc.qcore import gauss_binomial, q_int
from qcalc.coeffs import LaurentPoly


def test_all_verifiers_pass_at_small_ranges():
    for name, (fn, kind) in IDENTITY_CHECKS.items():
        verdict = fn(6)
        assert verdict.ok, f"{name}: {verdict}"
        assert verdict.residual is None
        assert verdict.elapsed_ms >= 0


def test_verdict_fields():
    v = verify_hermite_binomial(3)
    assert v.identity == "hermite-binomial"
    assert v.range == "n<=3"
    assert v.status == "verified"
    assert "verified" in str(v)


def test_rerun_is_deterministic_and_monotone():
    a = verify_q_hermite_binomial(5)
    b = verify_q_hermite_binomial(5)
    assert a.ok and b.ok and a.range == b.range
    # verified at a superset range stays verified on the shared subrange
    assert verify_q_hermite_binomial(7).ok


def test_exp_product_rejects_pole_sample():
    with pytest.raises(PoleError):
        verify_exp_product(4, q_samples=[Fraction(-1)])


def test_exp_product_spot_checks():
    assert verify_exp_product(10, q_samples=[Fraction(1, 2), Fraction(3)]).ok


def test_q_hermite_binomial_low_degree_by_hand():
    # n = 1: ( [2] z + i [2] w ) / [2] = z + i w
    two = CoefExpr.of(q_int(2))
    vs = ("z", "w")
    rhs = (
        q_hermite(1).rename_var("x", "z").with_vars(vs)
        + q_hermite_dual(1).with_vars(vs).scale(GR_I)
    ).scale(two.inverse())
    assert rhs == q_binomial_power("z", GR_I, "w", 1)


def test_q_identity_degenerates_to_classical():
    """Substituting s = 1 into either side of the deformed binomial expansion
    yields the corresponding classical side."""
    vs = ("z", "w")
    classical = MPoly(vs, {(1, 0): 1, (0, 1): GR_I})
    import math

    for n in range(7):
        lhs_q = q_binomial_power("z", GR_I, "w", n)
        assert lhs_q.at_s_one() == classical**n

        rhs_q = MPoly.zero(vs)
        ik = CoefExpr.of(1)
        for k in range(n + 1):
            hz = q_hermite(n - k).rename_var("x", "z").with_vars(vs)
            hw = q_hermite_dual(k).with_vars(vs)
            coef = (
                CoefExpr.of(gauss_binomial(n, k) * LaurentPoly.term(k * (k - 1))) * ik
            )
            rhs_q = rhs_q + (hz * hw).scale(coef)
            ik = ik * CoefExpr.of(GR_I)
        rhs_q = rhs_q.scale(CoefExpr(LP_ONE, q_int(2) ** n))

        rhs_classical = MPoly.zero(vs)
        ik = CoefExpr.of(1)
        for k in range(n + 1):
            hz = hermite_classical(n - k).rename_var("x", "z").with_vars(vs)
            hw = hermite_classical(k).rename_var("x", "w").with_vars(vs)
            rhs_classical = rhs_classical + (hz * hw).scale(
                ik * math.comb(n, k)
            )
            ik = ik * CoefExpr.of(GR_I)
        rhs_classical = rhs_classical.scale(Fraction(1, 2**n))
        assert rhs_q.at_s_one() == rhs_classical


def test_xi_identity_n_one_by_hand():
    # (1/2) [ (-i) H_1(i xi / 2) + H_1(xi / 2) ] = xi
    assert verify_xi_identity(1).ok


def test_traveling_expansion_n_one():
    assert verify_traveling_hermite_expansion(1).ok


def test_q_laplacian_chain_bound_parameter():
    assert verify_q_laplacian_identity(4, chain_max=2).ok


def test_exp_factorization_degree_two_by_hand():
    # degree-2 terms: x^2/[2]! + xy + q y^2/[2]! match ((x+y)(x+qy) + ...)/[2]!
    assert verify_exp_factorization(2).ok


def test_double_q_analytic_small():
    assert verify_double_q_analytic(4).ok
