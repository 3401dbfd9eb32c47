import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gps_resum.mixed import MixedSeries
from gps_resum.series import GenSeries


def M(jet, m=1, n=1, **kw):
    kw.setdefault("y_degree_cutoff", 8)
    return MixedSeries(m, n, jet, **kw)


class TestInvert:
    def test_geometric(self):
        F = M({((0.0,), (0,)): 1.0, ((0.0,), (1,)): -1.0})
        G = F.invert()
        for d in range(9):
            assert G.coefficient((0.0,), (d,)) == 1.0

    def test_constant(self):
        F = M({((0.0,), (0,)): 2.0})
        assert F.invert().coefficient((0.0,), (0,)) == 0.5

    def test_gevrey_nonunit(self):
        F = M({((1.0,), (0,)): 1.0})  # F = X, constant term 0
        with pytest.raises(ValueError, match="unit"):
            F.invert()

    def test_product_is_one(self):
        F = M({((0.0,), (0,)): 2.0, ((0.5,), (0,)): 1.0, ((0.0,), (1,)): -0.5},
              x_cutoff=(4.0,))
        P = F * F.invert()
        assert abs(P.constant_coefficient() - 1.0) < 1e-12
        for (kx, ky), c in P.jet.items():
            if sum(kx) + sum(ky) > 1e-9:
                assert abs(c) <= 1e-12 * max(1.0, abs(P.constant_coefficient()))


class TestRestrictFiber:
    def test_at_zero_log(self):
        # F = X1 X2 + X2^2, a = log 1 = 0 -> X2 + X2^2
        F = MixedSeries(2, 0, {((1.0, 1.0), ()): 1.0, ((0.0, 2.0), ()): 1.0})
        G = F.restrict_fiber(0, 0.0)
        assert G.coefficient((1.0,), ()) == 1.0
        assert G.coefficient((2.0,), ()) == 1.0

    def test_minus_inf_sets_zero(self):
        F = MixedSeries(2, 0, {((0.0, 1.0), ()): 1.0, ((1.0, 1.0), ()): 5.0})
        G = F.restrict_fiber(0, complex(-math.inf, 0.0))
        assert G.coefficient((1.0,), ()) == 1.0
        assert len(G.jet) == 1

    def test_product_structure(self):
        # F = (1+X1)(1+X2), a = log 2 -> 3(1+X2)
        F = MixedSeries(
            2, 0,
            {((0.0, 0.0), ()): 1.0, ((1.0, 0.0), ()): 1.0,
             ((0.0, 1.0), ()): 1.0, ((1.0, 1.0), ()): 1.0},
        )
        G = F.restrict_fiber(0, math.log(2.0))
        assert G.coefficient((0.0,), ()) == pytest.approx(3.0, rel=1e-15)
        assert G.coefficient((1.0,), ()) == pytest.approx(3.0, rel=1e-15)

    def test_gen_series_radius_guard(self):
        from gps_resum.series import TailBound

        F = GenSeries(1, {(1.0,): 1.0}, tail=TailBound((0.5,), 0.25))
        with pytest.raises(ValueError, match="radius"):
            F.restrict_fiber(0, 0.0)  # |e^0| = 1 > 0.5


class TestEval:
    def test_mixed_point(self):
        F = M({((1.0,), (1,)): 2.0, ((0.0,), (0,)): 1.0})
        w = -1.0
        y = 0.25
        assert F.eval((w,), (y,)) == pytest.approx(1 + 2 * math.exp(-1) * 0.25, rel=1e-14)

    def test_minus_inf(self):
        F = M({((1.0,), (0,)): 7.0, ((0.0,), (2,)): 3.0})
        assert F.eval((complex(-math.inf, 0),), (0.5,)) == pytest.approx(0.75)


class TestRegularOrder:
    def test_orders(self):
        F = M({((0.0,), (1,)): 1.0, ((1.0,), (0,)): -1.0})  # Y - X
        assert F.regular_order() == 1
        G = M({((0.0,), (2,)): 1.0, ((1.0,), (1,)): 1.0})  # Y^2 + X Y
        assert G.regular_order() == 2

    def test_not_regular(self):
        F = M({((1.0,), (0,)): 1.0})
        assert F.regular_order() is None


class TestAlgebra:
    @given(st.integers(0, 5), st.integers(0, 5))
    @settings(max_examples=20, deadline=None)
    def test_mul_matches_gevrey_coefficients(self, a, b):
        F = M({((0.5,), (1,)): float(a), ((0.0,), (0,)): 1.0})
        G = M({((0.25,), (1,)): float(b), ((0.0,), (0,)): 2.0})
        P = F * G
        # constant in Y: product of constants
        assert P.coefficient((0.0,), (0,)) == 2.0
        assert P.coefficient((0.75,), (2,)) == float(a * b)
