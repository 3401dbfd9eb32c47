import math

import pytest

from gps_resum.series import GenSeries, TailBound
from gps_resum.transforms import (
    borel_sup_bound,
    borel_transform_function,
    integrate_segment,
    log_borel,
    log_borel_lambda,
    log_laplace,
    log_laplace_lambda,
    power_function,
    series_log_function,
)

GAMMA = math.gamma


class TestQuadrature:
    def test_polynomial_exact(self):
        v, err, _ = integrate_segment(lambda z: z * z, 0.0, 3.0)
        assert v == pytest.approx(9.0, rel=1e-12)

    def test_complex_path(self):
        # integral of e^z along a vertical segment
        a, b = complex(0, -1), complex(0, 1)
        v, err, _ = integrate_segment(lambda z: complex(math.e) ** z, a, b)
        import cmath

        assert v == pytest.approx(cmath.exp(b) - cmath.exp(a), rel=1e-10)

    def test_decaying_tail_not_overrefined(self):
        v, err, panels = integrate_segment(
            lambda z: complex(math.exp(-((z.real + 40) ** 2))), -80.0, 0.5
        )
        assert v.real == pytest.approx(math.sqrt(math.pi), rel=1e-8)
        assert panels < 5000


class TestPowerIdentities:
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, math.e])
    @pytest.mark.parametrize("w", [-4.0, -2.0, -1.0, 0.0])
    def test_borel(self, alpha, w):
        res = log_borel(power_function(alpha), w)
        assert abs(res.value - math.exp(alpha * w) / GAMMA(alpha)) < 1e-8

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, math.e])
    @pytest.mark.parametrize("w", [-4.0, -2.0, -1.0, 0.0])
    def test_laplace(self, alpha, w):
        res = log_laplace(power_function(alpha), w)
        assert abs(res.value - GAMMA(alpha) * math.exp(alpha * w)) < 1e-8
        assert res.truncation_bound < 1e-8

    def test_borel_example_values(self):
        assert log_borel(power_function(1.0), -1.0).value.real == pytest.approx(
            math.exp(-1), rel=1e-9
        )
        assert log_borel(power_function(0.5), 0.0).value.real == pytest.approx(
            1 / math.sqrt(math.pi), rel=1e-9
        )

    def test_laplace_example_values(self):
        assert log_laplace(power_function(1.0), -2.0).value.real == pytest.approx(
            math.exp(-2), rel=1e-9
        )
        assert log_laplace(power_function(0.5), 0.0).value.real == pytest.approx(
            math.sqrt(math.pi), rel=1e-9
        )

    def test_laplace_needs_decay(self):
        with pytest.raises(ValueError):
            log_laplace(power_function(0.0), -1.0)


class TestRamified:
    def test_borel_lambda(self):
        # B^2 p_1 = p_1 / Gamma(2) = p_1
        r = log_borel_lambda(power_function(1.0), 2.0, -1.0)
        assert abs(r.value - math.exp(-1.0)) < 1e-8
        # B^{1/2} p_1 = p_1 / Gamma(1/2)
        r = log_borel_lambda(power_function(1.0), 0.5, -1.0)
        assert abs(r.value - math.exp(-1.0) / math.sqrt(math.pi)) < 1e-8

    def test_laplace_lambda(self):
        for lam, alpha, w in [(2.0, 1.0, -1.0), (0.5, 1.0, -2.0), (1.5, 0.5, -1.5)]:
            r = log_laplace_lambda(power_function(alpha), lam, w)
            assert abs(r.value - GAMMA(alpha * lam) * math.exp(alpha * w)) < 1e-8

    def test_lambda_round_trip_series(self):
        # L^lam(B^lam f) = f for the log-sum of X + X^2
        F = GenSeries.polynomial({(1.0,): 1.0, (2.0,): 1.0})
        f = series_log_function(F, log_radius=0.5)
        lam = 2.0
        from gps_resum.transforms import FlatCertificate, GrowthCertificate, LogFunction

        ref = borel_transform_function(f, (0.0, 0.4, 0.75 * math.pi), math.inf)

        def blam(v):
            return log_borel_lambda(f, lam, v, (0.0, 0.4, lam * 0.75 * math.pi)).value

        g = LogFunction(
            evaluator=blam,
            growth=GrowthCertificate(ref.growth.C, ref.growth.D, lam),
            flat=FlatCertificate(ref.flat.A, ref.flat.alpha, ref.flat.w0 * lam),
        )
        for w in (-3.0, -2.0):
            got = log_laplace_lambda(g, lam, w).value
            want = F.eval_logsum(w).value
            assert abs(got - want) < 1e-7


class TestRoundTripAndCommutation:
    def test_round_trip_convergent(self):
        F = GenSeries.polynomial({(1.0,): 1.0, (1.5,): 1.0})
        f = series_log_function(F, log_radius=1.0)
        Bf = borel_transform_function(f, (0.0, 0.9, 0.75 * math.pi), math.inf)
        for j in range(10):
            w = -3.5 + 0.3 * j
            got = log_laplace(Bf, w).value
            want = F.eval_logsum(w).value
            assert abs(got - want) <= 1e-6

    def test_commutation_formal_numeric(self):
        # irrational-exponent support {0, 1/2, sqrt 2, e}
        F = GenSeries.polynomial(
            {(0.0,): 1.0, (0.5,): -1.0, (math.sqrt(2),): 0.5, (math.e,): 2.0}
        )
        f = series_log_function(F, log_radius=0.0)
        FB = F.formal_borel(1.0)
        for j in range(8):
            w = -4.0 + 0.35 * j  # Re w <= log r - 1
            got = log_borel(f, w, (0.0, -0.05, 0.75 * math.pi)).value
            want = FB.eval_logsum(w).value
            assert abs(got - want) <= 1e-6

    def test_contour_independence(self):
        f = series_log_function(
            GenSeries.polynomial({(1.0,): 1.0, (2.5,): -2.0}), log_radius=0.5
        )
        w = -2.0
        r1 = log_borel(f, w, (0.0, 0.3, 0.7 * math.pi))
        r2 = log_borel(f, w, (0.0, -0.5, 0.85 * math.pi))
        assert abs(r1.value - r2.value) <= (
            r1.abs_error_estimate + r2.abs_error_estimate + 1e-10
        )

    def test_linearity(self):
        f = power_function(1.0)
        g = power_function(2.0)
        w = -1.5
        vf = log_borel(f, w).value
        vg = log_borel(g, w).value
        from gps_resum.transforms import LogFunction

        combo = LogFunction(
            evaluator=lambda z: 2 * f(z) - 3 * g(z),
            sup_on_radius=lambda x: 2 * math.exp(x) + 3 * math.exp(2 * x),
        )
        vc = log_borel(combo, w).value
        assert abs(vc - (2 * vf - 3 * vg)) < 1e-9

    def test_flatness_preserved(self):
        # |f| = O(e^{alpha Re w}) implies |Bf| = O(e^{alpha Re w}); probe the
        # normalized ratio on a geometric grid going left
        alpha = 1.5
        f = power_function(alpha)
        ratios = []
        for w in (-2.0, -4.0, -8.0, -16.0):
            v = log_borel(f, w).value
            ratios.append(abs(v) / math.exp(alpha * w))
        assert max(ratios) <= 2 * min(ratios) + 1e-9


class TestSupBound:
    def test_closed_formula(self):
        b = borel_sup_bound(1.0, math.pi, 0.75 * math.pi, -1.0, 0.0)
        assert b == pytest.approx(math.e / math.sin(math.pi / 8), rel=1e-12)
        assert b == pytest.approx(7.103, abs=5e-3)

    def test_continuity_at_equal_radii(self):
        lo = borel_sup_bound(1.0, math.pi, 0.75 * math.pi, 0.3, 0.3)
        hi = borel_sup_bound(1.0, math.pi, 0.75 * math.pi, 0.3 - 1e-12, 0.3)
        assert lo == pytest.approx(hi, rel=1e-9)
        assert lo == pytest.approx(math.e / math.sin(math.pi / 8), rel=1e-9)

    def test_angle_ordering(self):
        with pytest.raises(ValueError):
            borel_sup_bound(1.0, 1.0, 2.0, 0.0, 0.0)

    def test_numeric_within_bound(self):
        f = power_function(1.0)
        theta, theta_p = math.pi, 0.75 * math.pi
        rp = 0.0
        norm = math.exp(rp)  # sup of |p_1| on Re <= r'
        import random

        rng = random.Random(5)
        for _ in range(100):
            re = rng.uniform(-3.0, rp)
            im = rng.uniform(-0.3, 0.3)
            w = complex(re, im)
            val = log_borel(f, w, (im, rp, theta_p)).value
            bound = borel_sup_bound(norm, theta, theta_p, re, rp)
            assert abs(val) <= bound * (1 + 1e-9)


class TestSeriesLogFunction:
    def test_certificates(self):
        F = GenSeries(
            1, {(1.0,): 2.0}, cutoff=4.0, tail=TailBound((0.5,), 0.0)
        )
        f = series_log_function(F)
        assert f.flat is not None and f.flat.alpha == 1.0
        assert f.sup_on_radius(math.log(0.25)) <= 0.5 + 1e-12

    def test_needs_radius(self):
        with pytest.raises(ValueError, match="radius"):
            series_log_function(GenSeries(1, {(1.0,): 1.0}))
