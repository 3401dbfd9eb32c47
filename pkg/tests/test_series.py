import cmath
import math

import pytest
from hypothesis import assume, given, settings

from gps_resum.exponents import ArithmeticSupport, LogIntegerSupport
from gps_resum.series import (
    GenSeries,
    TailBound,
    jets_equal,
)

from conftest import one_var_jets


def S(terms, **kw):
    return GenSeries.one_var(terms, **kw)


class TestAdd:
    def test_coefficient_addition(self):
        F = S({0.0: 1.0, 1.0: 1.0})
        G = S({1.0: 2.0})
        H = F + G
        assert H.coefficient(0.0) == 1.0
        assert H.coefficient(1.0) == 3.0

    def test_identity(self):
        F = S({0.5: 2.0, 2.0: -1.0})
        assert jets_equal(F + GenSeries.zero(1), F)

    def test_disjoint_supports(self):
        F = S({math.log(2): 1.0})
        G = S({math.log(3): 1.0})
        H = F + G
        assert len(H) == 2
        assert H.coefficient(math.log(2)) == 1.0
        assert H.coefficient(math.log(3)) == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            S({1.0: 1.0}) + GenSeries(2, {(1.0, 0.0): 1.0})

    def test_cutoff_is_min_and_mass_tracked(self):
        F = GenSeries(1, {(1.0,): 1.0, (5.0,): 1.0}, cutoff=6.0,
                      tail=TailBound((1.0,), 0.0))
        G = GenSeries(1, {(2.0,): 1.0}, cutoff=3.0, tail=TailBound((1.0,), 0.0))
        H = F + G
        assert H.cutoff == (3.0,)
        assert H.coefficient(5.0) == 0.0
        # the dropped stored term is accounted into the tail bound
        assert H.tail is not None and H.tail.bound >= 1.0


class TestMul:
    def test_difference_of_squares(self):
        F = S({0.0: 1.0, 1.0: 1.0})
        G = S({0.0: 1.0, 1.0: -1.0})
        H = F * G
        assert H.coefficient(0.0) == 1.0
        assert H.coefficient(1.0) == 0.0
        assert H.coefficient(2.0) == -1.0

    def test_exponent_addition(self):
        H = S({0.5: 1.0}) * S({0.5: 1.0})
        assert len(H) == 1
        assert H.coefficient(1.0) == 1.0

    def test_identity(self):
        F = S({0.5: 3.0, 1.25: -2.0})
        one = S({0.0: 1.0})
        assert jets_equal(F * one, F)


class TestNorm:
    def test_simple(self):
        F = GenSeries.polynomial({(0.0,): 1.0, (1.0,): 1.0})
        res = F.norm_r(0.5)
        assert res.value == 1.5
        assert res.certified

    def test_zero(self):
        assert GenSeries.zero(1).norm_r(2.0).value == 0.0

    def test_zeta_series_norm(self):
        # F = sum X^{log n} at r = e^-2 converges toward zeta(2) with the
        # integral tail bound 1/N
        N = 4000
        F = GenSeries(
            1,
            {(math.log(k),): 1.0 for k in range(1, N + 1)},
            support=(LogIntegerSupport(),),
            cutoff=math.log(N) + 1e-9,
            tail=TailBound((math.exp(-2.0),), 1.0 / N),
        )
        res = F.norm_r(math.exp(-2.0))
        zeta2 = 1.6449340668482264
        assert res.certified
        assert abs(res.value - zeta2) <= 1.0 / N
        assert res.value <= zeta2 + 1.0 / N

    def test_uncertified_flag(self):
        F = S({1.0: 1.0})  # no tail bound recorded
        assert not F.norm_r(1.0).certified

    @given(one_var_jets(), one_var_jets())
    @settings(max_examples=60, deadline=None)
    def test_submultiplicative(self, F, G):
        r = 0.75
        nf = F.norm_r(r).value
        ng = G.norm_r(r).value
        npair = (F * G).norm_r(r).value
        assert npair <= nf * ng * (1 + 1e-12) + 1e-12


class TestOrd:
    def test_two_vars(self):
        F = GenSeries(2, {(2.0, 1.0): 1.0, (3.0, 0.0): 1.0})
        assert F.ord() == 3.0
        assert F.ord_in(0) == 2.0

    def test_zero(self):
        assert GenSeries.zero(1).ord() == math.inf

    def test_constant(self):
        assert S({0.0: 5.0}).ord() == 0.0


class TestMonomialDivide:
    def test_basic(self):
        F = S({2.0: 1.0, 3.0: 1.0})
        G = F.monomial_divide(0, 2.0)
        assert jets_equal(G, S({0.0: 1.0, 1.0: 1.0}, cutoff=G.cutoff[0]), coeff_tol=0)

    def test_log_exponent(self):
        F = S({math.log(2): 1.0})
        G = F.monomial_divide(0, math.log(2))
        assert len(G) == 1
        assert G.coefficient(0.0) == 1.0

    def test_precondition(self):
        with pytest.raises(ValueError, match="minimal exponent"):
            S({0.0: 1.0, 1.0: 1.0}).monomial_divide(0, 1.0)

    @given(one_var_jets(min_terms=1, positive_ord=True))
    @settings(max_examples=50, deadline=None)
    def test_multiply_back(self, F):
        assume(not F.is_zero())
        g = F.ord_in(0)
        G = F.monomial_divide(0, g)
        assert jets_equal(G.shift_exponent(0, g), F)


class TestFormalTransforms:
    def test_borel_gamma2(self):
        F = S({2.0: 1.0})
        assert F.formal_borel(1.0).coefficient(2.0) == 1.0  # 1/Gamma(2) = 1

    def test_borel_factorials_to_geometric(self):
        F = S({float(n + 1): math.gamma(n + 1.0) for n in range(12)})
        B = F.formal_borel(1.0)
        for n in range(12):
            assert B.coefficient(float(n + 1)) == pytest.approx(1.0, abs=0, rel=1e-15)

    def test_borel_kills_constant(self):
        assert S({0.0: 1.0}).formal_borel(1.0).is_zero()

    def test_laplace_sqrt_pi(self):
        F = S({0.5: 1.0})
        val = F.formal_laplace(1.0).coefficient(0.5)
        assert val == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert abs(val - 1.772454) < 1e-6

    def test_laplace_lambda2(self):
        assert S({1.0: 1.0}).formal_laplace(2.0).coefficient(1.0) == 1.0  # Gamma(2)

    def test_constant_passes_through_laplace(self):
        F = S({0.0: 3.0, 1.0: 1.0})
        L = F.formal_laplace(1.0)
        assert L.coefficient(0.0) == 3.0

    def test_one_variable_only(self):
        with pytest.raises(ValueError):
            GenSeries(2, {(1.0, 1.0): 1.0}).formal_borel(1.0)

    @given(one_var_jets(min_terms=1, positive_ord=True))
    @settings(max_examples=80, deadline=None)
    def test_round_trip_exact(self, F):
        for lam in (0.5, 1.0, 2.0, math.pi):
            assert jets_equal(F.formal_borel(lam).formal_laplace(lam), F)
            assert jets_equal(F.formal_laplace(lam).formal_borel(lam), F)


class TestEvalLogsum:
    def test_simple(self):
        F = GenSeries.polynomial({(0.0,): 1.0, (1.0,): 1.0})
        assert F.eval_logsum(math.log(0.5)).value == pytest.approx(1.5, rel=1e-15)

    def test_zeta_point(self):
        N = 4000
        F = GenSeries(
            1,
            {(math.log(k),): 1.0 for k in range(1, N + 1)},
            cutoff=math.log(N) + 1e-9,
            tail=TailBound((math.exp(-2.0),), 1.0 / N),
        )
        res = F.eval_logsum(-2.0)
        assert res.certified
        assert abs(res.value - 1.6449340668482264) <= res.error_bound

    @given(one_var_jets())
    @settings(max_examples=40, deadline=None)
    def test_at_minus_infinity(self, F):
        res = F.eval_logsum(complex(-math.inf, 0.0))
        assert res.value == F.constant_coefficient()

    def test_outside_region_flagged(self):
        F = GenSeries(1, {(1.0,): 1.0}, tail=TailBound((0.5,), 0.1))
        res = F.eval_logsum(0.0)  # radius 1 > certified 0.5
        assert not res.certified


class TestSplitByMonomials:
    def test_two_vars(self):
        F = GenSeries(2, {(1.0, 0.0): 1.0, (0.0, 1.0): 1.0})
        parts = F.split_by_monomials()
        assert [(i, g) for i, g, _ in parts] == [(0, 1.0), (1, 1.0)]
        for _, _, piece in parts:
            assert piece.coefficient((0.0, 0.0)) == 1.0

    def test_tiebreak_lowest_index(self):
        F = GenSeries(2, {(2.0, 1.0): 1.0})
        parts = F.split_by_monomials()
        assert len(parts) == 1
        i, g, piece = parts[0]
        assert (i, g) == (0, 2.0)
        assert piece.coefficient((0.0, 1.0)) == 1.0

    def test_fractional(self):
        F = S({0.5: 1.0, 1.0: 1.0})
        ((i, g, piece),) = F.split_by_monomials()
        assert (i, g) == (0, 0.5)
        assert piece.coefficient(0.0) == 1.0
        assert piece.coefficient(0.5) == 1.0

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            S({0.0: 1.0, 1.0: 1.0}).split_by_monomials()

    @given(one_var_jets(min_terms=1, positive_ord=True))
    @settings(max_examples=50, deadline=None)
    def test_reassembles(self, F):
        assume(not F.is_zero())
        parts = F.split_by_monomials()
        total = GenSeries(1, {}, cutoff=F.cutoff)
        for i, g, piece in parts:
            total = total + piece.shift_exponent(i, g)
        assert jets_equal(total, F)


class TestRingLaws:
    @given(one_var_jets(), one_var_jets(), one_var_jets())
    @settings(max_examples=60, deadline=None)
    def test_laws(self, F, G, H):
        assert jets_equal(F + G, G + F)
        assert jets_equal(F * G, G * F)
        assert jets_equal((F + G) + H, F + (G + H))
        assert jets_equal((F * G) * H, F * (G * H))
        assert jets_equal(F * (G + H), F * G + F * H)


class TestSupportValidation:
    def test_exponent_outside_support(self):
        with pytest.raises(ValueError, match="support"):
            GenSeries(1, {(0.3,): 1.0}, support=(ArithmeticSupport(0.5),))

    def test_exponent_above_cutoff(self):
        with pytest.raises(ValueError, match="cutoff"):
            GenSeries(1, {(3.0,): 1.0}, cutoff=2.0)

    def test_merge_tolerance(self):
        F = GenSeries(1, {(1.0,): 1.0})
        G = GenSeries(1, {(1.0 + 5e-13,): 2.0})
        assert len(F + G) == 1
        assert (F + G).coefficient(1.0) == 3.0

    def test_zero_coefficients_pruned(self):
        assert len(GenSeries(1, {(1.0,): 0.0})) == 0
