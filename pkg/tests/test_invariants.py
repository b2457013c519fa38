"""Tests for the symmetric-polynomial closed forms and heat coefficients."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomspec.errors import RegimeError
from geomspec.invariants import (
    Regime,
    b_invariants,
    closed_form_invariants,
    derivative_invariants_closed,
    elementary_symmetric,
    heat_invariants,
    is_locally_symmetric_pattern,
    regime_for,
)
from geomspec.milnor import MilnorData
from geomspec.tensors import oracle_derivative_invariants, oracle_scalar_invariants
from geomspec.verify import SCALAR_FIELDS, random_lambda

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=8)
nu_triples = st.tuples(rationals, rationals, rationals)


class TestElementarySymmetric:
    def test_examples(self):
        assert elementary_symmetric((2, 2, 2)).as_tuple() == (6, 12, 8)
        assert elementary_symmetric((2, -2, -2)).as_tuple() == (-2, -4, 8)
        assert elementary_symmetric((0, 0, 0)).as_tuple() == (0, 0, 0)

    @given(nu_triples, st.sampled_from([F(2), F(-1), F(1, 2), F(3)]))
    def test_homogeneity(self, nu, c):
        p = elementary_symmetric(nu)
        scaled = elementary_symmetric(tuple(c * c * F(x) for x in nu))
        assert scaled.p1 == c**2 * p.p1
        assert scaled.p2 == c**4 * p.p2
        assert scaled.p3 == c**6 * p.p3


class TestClosedForms:
    def test_round_sphere(self):
        inv = closed_form_invariants((2, 2, 2))
        assert inv.abar == 0
        assert inv.a3_integrand == 120
        assert (inv.rrr, inv.ric_rr, inv.ric_ric_r, inv.ric_ric_ric) == (24, 24, 24, 24)
        assert inv.norm_nabla_r2 == 0 and inv.dbar == 0

    @pytest.mark.parametrize("k", [1, 2, 3, F(-1), F(5, 2)])
    def test_product_integrand(self, k):
        inv = closed_form_invariants((k, k, 0))
        assert inv.a3_integrand == F(64, 7) * k**3
        assert inv.norm_nabla_r2 == 0  # products are locally symmetric

    def test_heisenberg_derivatives(self):
        nabla2, dbar = derivative_invariants_closed((2, -2, -2))
        assert nabla2 == 256
        assert dbar == F(-3, 14) * 256

    def test_degenerate_regime_error(self):
        with pytest.raises(RegimeError):
            derivative_invariants_closed((1, 1, 0))

    def test_no_derivative_fields_off_regime(self):
        inv = closed_form_invariants((0, 0, -2))
        assert inv.norm_nabla_r2 is None and inv.dbar is None

    def test_oracle_equivalence_sample(self):
        rng = random.Random(17)
        checked = 0
        while checked < 150:
            lam = random_lambda(rng)
            milnor = MilnorData.from_lambda(lam)
            nu = milnor.ricci()
            if 0 in nu:
                continue
            checked += 1
            oracle = oracle_scalar_invariants(milnor)
            closed = closed_form_invariants(nu)
            for name in SCALAR_FIELDS:
                assert getattr(oracle, name) == getattr(closed, name), (lam, name)
            nr, _, dbar = oracle_derivative_invariants(milnor)
            assert closed.norm_nabla_r2 == nr
            assert closed.dbar == dbar


class TestRegimes:
    def test_pattern_recognition(self):
        assert is_locally_symmetric_pattern((2, 2, 2))
        assert is_locally_symmetric_pattern((0, 0, 0))
        assert is_locally_symmetric_pattern((3, 0, 3))
        assert is_locally_symmetric_pattern((-1, 0, -1))
        assert not is_locally_symmetric_pattern((2, -2, -2))
        assert not is_locally_symmetric_pattern((1, 1, 2))

    def test_regime_for(self):
        assert regime_for((2, 2, 2)) is Regime.LOCALLY_SYMMETRIC
        assert regime_for((1, 1, 0)) is Regime.LOCALLY_SYMMETRIC
        assert regime_for((2, -2, -2)) is Regime.UNIMODULAR_NONDEGENERATE
        assert regime_for((0, 0, -2)) is Regime.A3_UNDEFINED

    @pytest.mark.parametrize("c", [1, -1, 2, -2, 3, -3])
    def test_branches_agree_on_constant_curvature(self, c):
        sym = heat_invariants((c, c, c), F(7, 3), Regime.LOCALLY_SYMMETRIC)
        uni = heat_invariants((c, c, c), F(7, 3), Regime.UNIMODULAR_NONDEGENERATE)
        assert sym.a3 == uni.a3
        assert derivative_invariants_closed((c, c, c))[1] == 0

    def test_regime_validation(self):
        with pytest.raises(RegimeError):
            heat_invariants((1, 2, 3), 1, Regime.LOCALLY_SYMMETRIC)
        with pytest.raises(RegimeError):
            heat_invariants((1, 1, 0), 1, Regime.UNIMODULAR_NONDEGENERATE)

    def test_a3_absent(self):
        h = heat_invariants((0, 0, -2), 1, Regime.A3_UNDEFINED)
        assert h.a3 is None
        assert h.a1 == F(-1, 3)


class TestHeatInvariants:
    def test_round_sphere_a3(self):
        vol = F(19)  # any volume; a3 = vol/6 for nu = (2,2,2)
        for regime in (Regime.LOCALLY_SYMMETRIC, Regime.UNIMODULAR_NONDEGENERATE):
            h = heat_invariants((2, 2, 2), vol, regime)
            assert h.a3 == vol / 6

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_product_a3(self, k):
        h = heat_invariants((k, k, 0), F(11, 7), Regime.LOCALLY_SYMMETRIC)
        assert h.a3 == F(11, 7) * 64 * k**3 / 5040

    @pytest.mark.parametrize("c", [1, 2, 5])
    def test_nil_a3(self, c):
        h = heat_invariants((c, -c, -c), F(13), Regime.UNIMODULAR_NONDEGENERATE)
        assert h.a3 == F(13) * (-155) * c**3 / 5040

    def test_universal_low_coefficients(self):
        rng = random.Random(3)
        for _ in range(50):
            nu = tuple(F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
            vol = F(rng.randint(1, 40), rng.randint(1, 7))
            p = elementary_symmetric(nu)
            h = heat_invariants(nu, vol, Regime.A3_UNDEFINED)
            assert h.a0 == vol
            assert h.a1 == vol * p.p1 / 6
            assert h.a2 == vol * (9 * p.p1**2 - 12 * p.p2) / 360


class TestBInvariants:
    def test_nil_example(self):
        b = b_invariants((1, -1, -1), F(5))
        assert (b.b1, b.b2, b.b3) == (-1, -1, 60)

    def test_round_sphere_example(self):
        b = b_invariants((2, 2, 2), 1)
        assert (b.b0, b.b1, b.b2, b.b3) == (1, 6, 12, -1056)

    def test_absent_b3(self):
        assert b_invariants((1, 1, 0), 1).b3 is None

    def test_equivalence_of_invariant_sets(self):
        # a0..a2 agree iff b0..b2 agree; with P3 != 0 on both sides,
        # a0..a3 agree iff b0..b3 agree
        rng = random.Random(8)
        pairs = []
        while len(pairs) < 250:
            nu1 = tuple(F(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(3))
            vol1 = F(rng.randint(1, 20), rng.randint(1, 5))
            choice = rng.random()
            if choice < 0.3:
                nu2 = tuple(rng.sample(list(nu1), 3))
                vol2 = vol1
            elif choice < 0.4:
                nu2, vol2 = nu1, vol1 + 1
            else:
                nu2 = tuple(F(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(3))
                vol2 = F(rng.randint(1, 20), rng.randint(1, 5))
            pairs.append(((nu1, vol1), (nu2, vol2)))

        for (nu1, vol1), (nu2, vol2) in pairs:
            h1 = heat_invariants(nu1, vol1, Regime.A3_UNDEFINED)
            h2 = heat_invariants(nu2, vol2, Regime.A3_UNDEFINED)
            b1 = b_invariants(nu1, vol1)
            b2 = b_invariants(nu2, vol2)
            a_low = (h1.a0, h1.a1, h1.a2) == (h2.a0, h2.a1, h2.a2)
            b_low = (b1.b0, b1.b1, b1.b2) == (b2.b0, b2.b1, b2.b2)
            assert a_low == b_low, (nu1, vol1, nu2, vol2)
            p3_1 = elementary_symmetric(nu1).p3
            p3_2 = elementary_symmetric(nu2).p3
            if p3_1 != 0 and p3_2 != 0:
                a3_1 = heat_invariants(nu1, vol1, Regime.UNIMODULAR_NONDEGENERATE).a3
                a3_2 = heat_invariants(nu2, vol2, Regime.UNIMODULAR_NONDEGENERATE).a3
                a_all = a_low and a3_1 == a3_2
                b_all = b_low and b1.b3 == b2.b3
                assert a_all == b_all, (nu1, vol1, nu2, vol2)


class TestSerialization:
    def test_dicts_round_trip_exact(self):
        from geomspec.rational import decode_scalar

        h = heat_invariants((2, -2, -2), F(3, 7))
        d = h.as_dict()
        assert decode_scalar(d["a3"]) == h.a3
        b = b_invariants((2, -2, -2), F(3, 7))
        d = b.as_dict()
        assert decode_scalar(d["b3"]) == b.b3
        assert decode_scalar(d["b0"]) == F(3, 7)
