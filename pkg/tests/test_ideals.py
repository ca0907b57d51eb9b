"""Jet ideals, annihilators, monomial multiplier ideals, jumping data."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berglab.errors import ImproperIdealError
from berglab.ideals import (
    IdealPresentation,
    MonomialIdeal,
    annihilator,
    contains,
    jet_ideal,
    jumping_numbers,
    monomial_jet_ideal,
    multiplier_ideal,
    multiplier_ideal_plus,
    next_jump,
)
from berglab.domains import ToricWeight
from berglab.jets import Functional, Jet, pair


def z_pow(m):
    return Jet.monomial(1, (m,))


class TestJetIdeal:
    def test_principal_power(self):
        # (z^2) + m^4 below degree 4: spanned by z^2, z^3
        J = jet_ideal(IdealPresentation(1, [z_pow(2)]), 4)
        assert J.span_dim == 2
        assert contains(J, z_pow(2))
        assert contains(J, z_pow(3))
        assert not contains(J, Jet(1, 3, {(1,): 1}))

    def test_binomial_generator(self):
        # (z1 - z2^2) + m^3: span {z1 - z2^2, z1^2, z1 z2}
        g = Jet(2, 2, {(1, 0): 1, (0, 2): -1})
        J = jet_ideal(IdealPresentation(2, [g]), 3)
        assert J.span_dim == 3
        assert contains(J, g)
        assert not contains(J, Jet(2, 2, {(1, 0): 1}))
        assert contains(J, Jet(2, 2, {(2, 0): 1}))

    def test_level_two_collapses_binomial(self):
        g = Jet(2, 2, {(1, 0): 1, (0, 2): -1})
        J = jet_ideal(IdealPresentation(2, [g]), 2)
        # below degree 2 the generator's jet is z1
        assert contains(J, Jet(2, 1, {(1, 0): 1}))

    def test_unit_generator_rejected(self):
        with pytest.raises(ImproperIdealError):
            IdealPresentation(1, [Jet(1, 1, {(0,): 1, (1,): 1})])

    def test_membership_respects_truncation(self):
        J = jet_ideal(IdealPresentation(1, [z_pow(2)]), 3)
        # terms of degree >= 3 are absorbed by m^3
        f = Jet(1, 3, {(2,): 1, (3,): 7})
        assert contains(J, f)

    def test_float_generators_get_tolerance(self):
        g = Jet(1, 2, {(1,): 0.5 + 0.5j, (2,): 1.0})
        J = jet_ideal(IdealPresentation(1, [g]), 3)
        assert J.tol > 0
        assert contains(J, g)


class TestAnnihilator:
    def test_dimension_count(self):
        J = jet_ideal(IdealPresentation(1, [z_pow(2)]), 4)
        basis = annihilator(J)
        assert len(basis) == len(J.indices) - J.span_dim

    def test_annihilates_span(self):
        g = Jet(2, 2, {(1, 0): 1, (0, 2): -1})
        J = jet_ideal(IdealPresentation(2, [g]), 4)
        jets = J.basis_jets()
        for xi in annihilator(J):
            for s in jets:
                assert not bool(pair(xi, s))

    @settings(max_examples=25, deadline=None)
    @given(
        m=st.integers(1, 3),
        extra=st.integers(-3, 3),
        level=st.integers(2, 4),
    )
    def test_annihilator_perp_span_random(self, m, extra, level):
        g = Jet(1, m, {(m,): 1})
        if extra and m > 1:
            g = g.add(Jet(1, m, {(m - 1,): extra}))
        try:
            pres = IdealPresentation(1, [g])
            J = jet_ideal(pres, level)
        except ImproperIdealError:
            return
        for xi in annihilator(J):
            for s in J.basis_jets():
                assert not bool(pair(xi, s))


class TestMonomialIdeal:
    def test_minimal_generators(self):
        M = MonomialIdeal(2, ((2, 0), (2, 1), (0, 3)))
        assert M.generators == ((2, 0), (0, 3))

    def test_membership(self):
        M = MonomialIdeal(2, ((2, 0), (0, 3)))
        assert M.contains_exponent((2, 5))
        assert M.contains_exponent((1, 3))
        assert not M.contains_exponent((1, 2))

    def test_jet_membership_supportwise(self):
        M = MonomialIdeal(2, ((2, 0),))
        assert M.contains_jet(Jet(2, 3, {(2, 0): 1, (3, 0): 2}))
        assert not M.contains_jet(Jet(2, 3, {(2, 0): 1, (1, 1): 1}))

    def test_jet_ideal_of_monomial_ideal(self):
        M = MonomialIdeal(1, ((2,),))
        J = monomial_jet_ideal(M)
        assert J.level == 3
        assert contains(J, z_pow(2))
        assert not contains(J, Jet(1, 2, {(1,): 1}))


class TestMultiplierIdeals:
    def test_principal_generator(self):
        phi = ToricWeight((1,))
        # c*a = 2: boundary diverges, so z^2 is the first integrable power
        assert multiplier_ideal(phi, 2).generators == ((2,),)
        assert multiplier_ideal(phi, Fraction(3, 2)).generators == ((1,),)

    def test_two_variables(self):
        phi = ToricWeight((1, 2))
        M = multiplier_ideal(phi, 1)
        assert M.generators == ((1, 2),)

    def test_scale_zero_is_unit(self):
        assert multiplier_ideal(ToricWeight((1,)), 0).is_unit()

    def test_jumping_numbers_1d(self):
        phi = ToricWeight((1,))
        assert jumping_numbers(phi, 3) == [1, 2, 3, 4]

    def test_jumping_numbers_weighted(self):
        # min((b1+1)/1, (b2+1)/2) over |b| <= 3
        phi = ToricWeight((1, 2))
        vals = jumping_numbers(phi, 3)
        assert vals[0] == Fraction(1, 2)
        assert Fraction(1) in vals
        assert all(v <= 2 for v in vals)

    def test_next_jump(self):
        phi = ToricWeight((1, 2))
        assert next_jump(phi, 0) == Fraction(1, 2)
        assert next_jump(phi, Fraction(1, 2)) == Fraction(1)
        assert next_jump(phi, 1) == Fraction(3, 2)

    def test_ideal_changes_exactly_at_jumps(self):
        phi = ToricWeight((1, 2))
        c = Fraction(0)
        for _ in range(6):
            nxt = next_jump(phi, c)
            mid = (c + nxt) / 2
            assert multiplier_ideal(phi, mid) == multiplier_ideal(
                phi, c + (nxt - c) / 7
            )
            assert multiplier_ideal(phi, nxt) != multiplier_ideal(phi, mid)
            c = nxt

    def test_plus_ideal(self):
        phi = ToricWeight((1,))
        # just beyond c=2 the ideal strictly deepens to (z^2)
        assert multiplier_ideal_plus(phi, 2).generators == ((2,),)
        assert multiplier_ideal(phi, 2).generators == ((2,),)
        # at c just below 2 the ideal is (z); the plus ideal at 1 stays (z)
        assert multiplier_ideal_plus(phi, 1).generators == ((1,),)

    @given(c=st.fractions(min_value=0, max_value=5), a=st.integers(1, 3))
    @settings(max_examples=40)
    def test_plus_contains_all_later(self, c, a):
        phi = ToricWeight((a,))
        plus = multiplier_ideal_plus(phi, c)
        eps = Fraction(1, 1000)
        bigger = multiplier_ideal(phi, c + eps)
        # the plus ideal equals the ideal at any scale inside the gap
        nxt = next_jump(phi, c)
        if c + eps < nxt:
            assert plus == bigger
