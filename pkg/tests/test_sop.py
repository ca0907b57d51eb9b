"""Jumping numbers, sublevel growth rates, effectiveness reports."""

import math
from fractions import Fraction

import pytest
from scipy.integrate import quad

from berglab.domains import DiagonalDomain, ToricWeight
from berglab.errors import BerglabError, ZeroFunctionalError
from berglab.exactnum import PiValue, value_float
from berglab.jets import Functional, Jet
from berglab.sop import (
    effectiveness_report,
    jumping_number,
    membership_threshold,
    verify_corollary_min,
    xi_cse_combinatorial,
    xi_cse_limit,
)


class TestJumpingNumber:
    def test_one_variable_powers(self):
        phi = ToricWeight((1,))
        for m in range(4):
            F = Jet(1, m, {(m,): 1})
            assert jumping_number(F, phi) == m + 1

    def test_weighted_monomial(self):
        F = Jet(2, 3, {(1, 2): 1})
        assert jumping_number(F, ToricWeight((1, 2))) == Fraction(3, 2)

    def test_constant(self):
        F = Jet(2, 0, {(0, 0): 1})
        assert jumping_number(F, ToricWeight((1, 2))) == Fraction(1, 2)

    def test_polynomial_takes_min_over_support(self):
        # 1 + z: the constant term is the binding constraint
        F = Jet(1, 1, {(0,): 1, (1,): 1})
        assert jumping_number(F, ToricWeight((1,))) == 1

    def test_integrability_oracle_1d(self):
        # oracle: the radial integrand of |z^m|^2 e^{-c phi} is s^(2m+1-2c);
        # it is integrable at 0 iff its exponent exceeds -1, i.e. c < m+1
        phi = ToricWeight((1,))
        for m in (0, 1, 2):
            c_star = float(jumping_number(Jet(1, m, {(m,): 1}), phi))
            assert 2 * m + 1 - 2 * c_star == -1  # exact borderline
            below, _ = quad(lambda s: s ** (2 * m + 1 - 2 * (c_star - 0.2)), 0, 1)
            assert math.isfinite(below) and below > 0

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            jumping_number(Jet.zero(1), ToricWeight((1,)))


class TestCseCombinatorial:
    def test_delta(self):
        phi = ToricWeight((1,))
        for k in range(4):
            assert xi_cse_combinatorial(Functional.delta(1, (k,)), phi) == k + 1

    def test_multi_term_takes_max(self):
        phi = ToricWeight((1,))
        xi = Functional(1, {(0,): 1, (2,): 1})
        assert xi_cse_combinatorial(xi, phi) == 3

    def test_two_variables(self):
        assert xi_cse_combinatorial(
            Functional.delta(2, (0, 0)), ToricWeight((1, 2))
        ) == Fraction(1, 2)

    def test_zero_rejected(self):
        with pytest.raises(ZeroFunctionalError):
            xi_cse_combinatorial(Functional(1, {}), ToricWeight((1,)))


class TestCseLimit:
    def test_delta_affine(self):
        phi = ToricWeight((1,))
        disc = DiagonalDomain.disc(1, exact=False)
        for k in (0, 1, 3):
            res = xi_cse_limit(Functional.delta(1, (k,)), phi, disc, range(1, 11))
            assert res.slope == pytest.approx(k + 1, abs=1e-10)
            # exactly affine: all divided differences equal
            slopes = [
                (l2 - l1) / (t2 - t1)
                for (t1, l1), (t2, l2) in zip(res.table, res.table[1:])
            ]
            assert max(slopes) - min(slopes) < 1e-10

    def test_two_term_tail_slope(self):
        phi = ToricWeight((1,))
        disc = DiagonalDomain.disc(1, exact=False)
        xi = Functional(1, {(0,): 1, (1,): 1})
        res = xi_cse_limit(xi, phi, disc, [30 + 2 * j for j in range(6)])
        assert res.slope == pytest.approx(2, abs=1e-3)
        assert res.convex

    def test_matches_combinatorial_quadrature(self):
        phi = ToricWeight((1, 1))
        dom = DiagonalDomain.polydisc([1, 1], exact=False)
        xi = Functional.delta(2, (1, 0))
        res = xi_cse_limit(xi, phi, dom, [4, 5, 6, 7, 8])
        want = float(xi_cse_combinatorial(xi, phi))
        assert res.slope == pytest.approx(want, abs=5e-2)

    def test_convexity_certificate(self):
        phi = ToricWeight((1,))
        disc = DiagonalDomain.disc(1, exact=False)
        xi = Functional(1, {(0,): 1, (2,): 0.5})
        res = xi_cse_limit(xi, phi, disc, range(1, 9))
        assert res.min_second_difference >= -1e-8

    def test_short_grid_rejected(self):
        with pytest.raises(ValueError):
            xi_cse_limit(
                Functional.delta(1, (0,)),
                ToricWeight((1,)),
                DiagonalDomain.disc(1, exact=False),
                [0],
            )


class TestCorollaryMin:
    def test_one_variable(self):
        rep = verify_corollary_min(Jet(1, 2, {(1,): 1}), ToricWeight((1,)), 3)
        assert rep.closed_form == 2
        assert rep.attained == 2
        assert rep.all_above and rep.consistent

    def test_weighted_monomial(self):
        rep = verify_corollary_min(
            Jet(2, 3, {(1, 2): 1}), ToricWeight((1, 2)), 4
        )
        assert rep.attained == Fraction(3, 2)
        assert rep.consistent

    def test_constant(self):
        rep = verify_corollary_min(
            Jet(2, 0, {(0, 0): 1}), ToricWeight((1, 2)), 2
        )
        assert rep.attained == Fraction(1, 2)
        assert rep.consistent


class TestMembershipThreshold:
    def test_disc_example(self):
        assert membership_threshold(Jet(1, 1, {(1,): 1}), ToricWeight((1,))) == 2

    def test_matches_jumping_number(self):
        for beta, a in [((2,), (1,)), ((1, 2), (1, 2)), ((0, 1), (2, 1))]:
            F = Jet(len(beta), sum(beta), {beta: 1})
            phi = ToricWeight(a)
            assert membership_threshold(F, phi) == jumping_number(F, phi)


class TestEffectivenessReport:
    def test_sharp_disc_example(self):
        disc = DiagonalDomain.disc(1)
        rep = effectiveness_report(
            disc, Jet(1, 2, {(1,): 1}), ToricWeight((1,))
        )
        assert rep.integral == PiValue(Fraction(1), 1)
        assert rep.jump == 2
        assert rep.ideal_plus.generators == ((2,),)
        assert rep.c_value == PiValue(Fraction(1, 2), 1)
        assert rep.b_value == rep.c_value
        assert rep.ratio == 2
        assert rep.p_max == 2
        assert rep.p_star == 2
        assert rep.sharp

    def test_second_sharp_example(self):
        disc = DiagonalDomain.disc(1)
        rep = effectiveness_report(
            disc, Jet(1, 3, {(2,): 1}), ToricWeight((1,))
        )
        assert rep.integral == PiValue(Fraction(1, 2), 1)
        assert rep.c_value == PiValue(Fraction(1, 3), 1)
        assert rep.ratio == Fraction(3, 2)
        assert rep.p_max == 3
        assert rep.p_star == 3
        assert rep.sharp

    def test_divergent_integral_rejected(self):
        disc = DiagonalDomain.disc(1)
        with pytest.raises(BerglabError):
            effectiveness_report(
                disc, Jet(1, 0, {(0,): 1}), ToricWeight((1,))
            )

    def test_guarantee_soundness(self):
        # every p below p_max must give exact membership
        disc = DiagonalDomain.disc(1)
        rep = effectiveness_report(
            disc, Jet(1, 2, {(1,): 1}), ToricWeight((1,))
        )
        from berglab.ideals import multiplier_ideal

        for num in range(1, 8):
            p = Fraction(num, 4)
            if p < rep.p_max:
                assert multiplier_ideal(ToricWeight((1,)), p).contains_jet(
                    Jet(1, 1, {(1,): 1})
                )

    def test_p_max_never_exceeds_p_star(self):
        for beta, a in [((1,), (1,)), ((2,), (1,)), ((1, 1), (1, 1))]:
            n = len(beta)
            dom = DiagonalDomain.polydisc([1] * n)
            F = Jet(n, sum(beta) + 1, {beta: 1})
            rep = effectiveness_report(dom, F, ToricWeight(a))
            assert value_float(Fraction(rep.p_max)) <= float(rep.p_star) + 1e-12
