import cmath
import math

import pytest
from hypothesis import given, settings

from gps_resum.loggeom import SummabilityParams
from gps_resum.resummation import (
    DecompositionPiece,
    MultisumOptions,
    TougeronDecomposition,
    assemble_T,
    binet_constant,
    borel_param_update,
    coefficient_sum_bound,
    convergent_decomposition,
    decomposition_norm,
    estimate_log_radius,
    euler_series,
    gevrey1_model_decomposition,
    gevrey_check,
    monomial_decomposition,
    multisum,
    quasianalyticity_probe,
    telescoped,
)
from gps_resum.series import GenSeries, TailBound, jets_equal

from conftest import one_var_jets

TAU1 = SummabilityParams(((1.0,),), (1.0,), 2.0, 1.6)


def poly(terms, **kw):
    return GenSeries.polynomial({(float(a),): c for a, c in terms.items()}, **kw)


class TestAssemble:
    def test_single_piece_identity(self):
        F = poly({0.0: 1.0, 0.5: 2.0, 1.5: -1.0})
        d = convergent_decomposition(F)
        assert jets_equal(assemble_T(d), F)

    def test_monomial_pieces(self):
        rate = 3.0
        d = monomial_decomposition(rate, 8, TAU1)
        F = assemble_T(d)
        for p in range(8):
            assert F.coefficient(float(p)) == rate ** (-2 * p)

    def test_telescoped_assembles_identically(self):
        d = gevrey1_model_decomposition(npieces=12)
        bumps = [poly({0.0: 2.0 ** -(p + 1)}) for p in range(11)]
        d2 = telescoped(d, bumps)
        F1 = assemble_T(d, cutoff=10.0)
        F2 = assemble_T(d2, cutoff=10.0)
        for k, v in F1.terms.items():
            assert abs(F2.coefficient(k[0]) - v) < 1e-12

    def test_coefficient_bound_dominates(self):
        d = gevrey1_model_decomposition(npieces=30)
        for alpha in (0.0, 1.0, 3.0, 6.0):
            actual = sum(
                abs(p.series.coefficient(alpha)) for p in d.pieces
            )
            assert actual <= coefficient_sum_bound(d, alpha) * (1 + 1e-9)


class TestNorm:
    def test_single_piece_value(self):
        F = GenSeries(1, {(1.0,): 2.0}, tail=TailBound((1.0,), 0.0))
        d = convergent_decomposition(F, TAU1)
        assert decomposition_norm(d) == pytest.approx(2.0)

    def test_homogeneity(self):
        F = poly({0.5: 1.0, 1.0: 1.0})
        d1 = convergent_decomposition(F, TAU1)
        d2 = convergent_decomposition(F.scale(3.0), TAU1)
        assert decomposition_norm(d2) == pytest.approx(3 * decomposition_norm(d1))

    def test_cauchy_product_bound(self):
        # three-piece monomial decompositions: the Cauchy-product
        # decomposition of the product has norm at most the product of norms
        rate = 4.0
        dF = monomial_decomposition(rate, 3, TAU1)
        dG = monomial_decomposition(rate, 3, TAU1)
        pieces = []
        for r in range(5):
            S = GenSeries.zero(1)
            for p in range(3):
                q = r - p
                if 0 <= q < 3:
                    S = S + dF.pieces[p].series * dG.pieces[q].series
            pieces.append(DecompositionPiece(series=S))
        dH = TougeronDecomposition(TAU1, pieces, 1e-6, 1e-6)
        assert decomposition_norm(dH) <= decomposition_norm(dF) * decomposition_norm(
            dG
        ) * (1 + 1e-9) + 1e-5


class TestGevrey:
    def test_convergent_single_piece(self):
        F = GenSeries(
            1,
            {(float(k),): 2.0 ** -k for k in range(30)},
            cutoff=30.0,
            tail=TailBound((1.0,), 2.0 ** -29),
        )
        tau = SummabilityParams(((0.0,), (1.0,)), (1.0,), 2.0, 1.6)
        d = TougeronDecomposition(tau, (DecompositionPiece(series=F),))
        rep = gevrey_check(d, range(1, 9), [complex(-x, 0.0) for x in (2.0, 2.5, 3.0)])
        assert rep.ok
        assert math.isfinite(rep.D) and math.isfinite(rep.E)

    def test_divergent_model_fit(self):
        d = gevrey1_model_decomposition()
        rep = gevrey_check(
            d, range(1, 11), [complex(-x, 0.0) for x in (1.5, 2.0, 2.5, 3.0)]
        )
        assert rep.ok, rep.failure_reason
        for b, ratio in zip(rep.betas, rep.ratios):
            assert rep.bound_holds(b, ratio)

    def test_corrupted_decomposition_fails(self):
        d = gevrey1_model_decomposition()
        bad0 = d.pieces[0].series + poly({3.0: 1.0})
        bad = TougeronDecomposition(
            d.tau,
            (DecompositionPiece(bad0, d.pieces[0].evaluator, d.pieces[0].sup_bound),)
            + d.pieces[1:],
            d.series_norm_tail,
            d.sup_norm_tail,
        )
        rep = gevrey_check(
            bad, range(1, 11), [complex(-x, 0.0) for x in (1.5, 2.0, 2.5, 3.0)]
        )
        assert not rep.ok

    def test_grid_must_stay_in_sector(self):
        d = gevrey1_model_decomposition()
        with pytest.raises(ValueError, match="sector"):
            gevrey_check(d, [1.0], [complex(5.0, 0.0)])


class TestBorelParamUpdate:
    def test_k_shift_drops_zero(self):
        tau = SummabilityParams(((1.0,), (2.0,)), (1.0,), math.e**2, 1.6)
        out = borel_param_update(tau, 1.0, math.e, 0.3)
        assert out.K == ((1.0,),)

    def test_k_all_consumed_gives_convergent_class(self):
        tau = SummabilityParams(((1.0,),), (1.0,), math.e**2, 1.6)
        out = borel_param_update(tau, 1.0, math.e, 0.3)
        assert out.K == ((0.0,),)

    def test_max_admissible_R(self):
        tau = SummabilityParams(((1.0,),), (1.0,), math.e**2, 1.6)
        lim = 1.0 / math.e
        borel_param_update(tau, 1.0, math.e, lim * 0.999)  # fine
        with pytest.raises(ValueError, match="admissible"):
            borel_param_update(tau, 1.0, math.e, lim * 1.001)

    def test_mu_below_lambda(self):
        tau = SummabilityParams(((0.5,),), (1.0,), 2.0, 1.6)
        with pytest.raises(ValueError, match="mu_K"):
            borel_param_update(tau, 1.0, 1.5, 0.1)

    def test_monotone(self):
        t1 = SummabilityParams(((1.0,), (2.0,)), (1.0,), math.e**2, 1.6)
        t2 = SummabilityParams(((1.0,), (2.0,)), (2.0,), math.e**2, 1.7)
        assert t1.leq(t2)
        u1 = borel_param_update(t1, 1.0, math.e, 0.3)
        u2 = borel_param_update(t2, 1.0, math.e, 0.6)
        assert u1.leq(u2)

    def test_rejection_sweep(self):
        # accept exactly the (R', r') satisfying (R')^{1/lam} <= R^{1/lam}/e log(r/r')
        tau = SummabilityParams(((2.0,),), (1.0,), 4.0, 1.6)
        lam = 2.0
        for i in range(10):
            for j in range(10):
                r_new = 1.0 + (tau.r - 1.0) * (i + 1) / 11.0
                R_new = 0.01 + 0.98 * (j + 1) / 11.0
                legal = R_new ** (1 / lam) <= (1.0 / math.e) * math.log(
                    tau.r / r_new
                ) and R_new < 1.0
                try:
                    borel_param_update(tau, lam, r_new, R_new)
                    assert legal
                except ValueError:
                    assert not legal


class TestMultisum:
    def test_euler_values(self, euler_oracle):
        Tf = euler_series(60)
        for x, truth in euler_oracle.items():
            r = multisum(Tf, [1.0], math.log(x), MultisumOptions(tolerance=1e-2))
            assert abs(r.value - truth) <= r.bound
        r = multisum(Tf, [1.0], math.log(0.1), MultisumOptions(tolerance=1e-2))
        assert r.bound <= 1e-4

    def test_single_monomial_round_trip(self):
        # Tf = X, K = {1}: B X = X, numeric L recovers e^w
        Tf = poly({1.0: 1.0})
        for w in (-2.0, -1.0, -0.5):
            r = multisum(Tf, [1.0], w, MultisumOptions(tolerance=1.0))
            assert abs(r.value - math.exp(w)) < 1e-7

    def test_convergent_matches_eval(self):
        F = GenSeries(
            1,
            {(float(k),): 3.0 ** -k for k in range(1, 40)},
            cutoff=40.0,
            tail=TailBound((1.5,), (1.5 / 3.0) ** 40 / (1 - 1.5 / 3.0)),
        )
        for x in (0.05, 0.1, 0.3):
            r = multisum(F, [1.0], math.log(x), MultisumOptions(tolerance=1.0))
            want = F.eval_logsum(math.log(x)).value
            assert abs(r.value - want) <= 1e-8

    def test_refinement_invariance(self):
        Tf = euler_series(60)
        w = math.log(0.1)
        a = multisum(Tf, [1.0], w, MultisumOptions(rel_tol=1e-9, tolerance=1e-2))
        b = multisum(Tf, [1.0], w, MultisumOptions(rel_tol=1e-10, tolerance=1e-2))
        assert abs(a.value - b.value) <= a.bound + b.bound

    def test_two_level_pipeline_on_convergent(self):
        # K = {1, 2}: kappa = (1, 1); a convergent input must round-trip
        F = poly({1.0: 1.0, 2.0: 0.5})
        for w in (-3.0, -2.5):
            r = multisum(F, [1.0, 2.0], w, MultisumOptions(tolerance=1.0))
            want = F.eval_logsum(w).value
            assert abs(r.value - want) < 1e-5

    def test_inadmissible_w(self):
        Tf = euler_series(60)
        with pytest.raises(ValueError, match="admissible"):
            multisum(Tf, [1.0], math.log(0.8), MultisumOptions(tolerance=1e-6))

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            multisum(poly({1.0: 1.0}), [0.0], -1.0)

    def test_formal_pipeline_inverse_exact(self):
        kappas = [0.5, 1.0, 1.5]
        for F in (poly({0.5: 3.0, 1.5: -2.0}), euler_series(10)):
            G = F
            for lam in reversed(kappas):
                G = G.formal_borel(lam)
            for lam in kappas:
                G = G.formal_laplace(lam)
            assert jets_equal(G, F)

    def test_order_of_summation(self):
        # convergent case: sum over pieces then exponents equals the
        # assembled series' evaluation (order switch) to 1e-10
        d = monomial_decomposition(3.0, 12, TAU1)
        F = assemble_T(d)
        for w in (-1.0, -2.0):
            by_pieces = sum(p(complex(w, 0.0)) for p in d.pieces)
            by_series = F.eval_logsum(w).value
            assert abs(by_pieces - by_series) < 1e-10


class TestQuasianalyticity:
    def test_telescoped_agreement(self):
        d1 = gevrey1_model_decomposition(npieces=25)
        bumps = [
            GenSeries.polynomial({(0.0,): 3.0 ** -(p + 1), (1.0,): 2.0 ** -(p + 2)})
            for p in range(24)
        ]
        d2 = telescoped(d1, bumps)
        grid = [complex(-1.5 - 0.1 * k, 0.02 * k) for k in range(50)]
        rep = quasianalyticity_probe(d1, d2, grid)
        assert rep.max_coefficient_gap <= 1e-9
        assert rep.max_discrepancy <= 1e-8

    def test_piece_split_agreement(self):
        d1 = gevrey1_model_decomposition(npieces=12)
        # split the first piece in two halves
        half = d1.pieces[0].series.scale(0.5)
        ev = d1.pieces[0].evaluator
        sup = d1.pieces[0].sup_bound
        halves = (
            DecompositionPiece(half, lambda w: 0.5 * ev(w), 0.5 * sup),
            DecompositionPiece(half, lambda w: 0.5 * ev(w), 0.5 * sup),
        )
        d2 = TougeronDecomposition(
            d1.tau, halves + d1.pieces[1:], d1.series_norm_tail, d1.sup_norm_tail
        )
        grid = [complex(-2.0 - 0.05 * k, 0.0) for k in range(50)]
        rep = quasianalyticity_probe(d1, d2, grid)
        assert rep.max_discrepancy <= 1e-8

    def test_different_T_separates(self):
        d1 = gevrey1_model_decomposition(npieces=12)
        extra = GenSeries.polynomial({(1.0,): 1.0})
        bumped = DecompositionPiece(
            d1.pieces[0].series + extra,
            lambda w, ev=d1.pieces[0].evaluator: ev(w) + cmath.exp(w),
            d1.pieces[0].sup_bound + 1.0,
        )
        d2 = TougeronDecomposition(
            d1.tau, (bumped,) + d1.pieces[1:], d1.series_norm_tail, d1.sup_norm_tail
        )
        grid = [complex(-1.5 - 0.1 * k, 0.0) for k in range(50)]
        rep = quasianalyticity_probe(d1, d2, grid)
        assert rep.max_coefficient_gap >= 0.5
        assert rep.max_discrepancy >= 1e-3


class TestBinet:
    def test_sigma_one(self):
        # 1 / min Gamma = 1/Gamma(1.46163...)
        assert binet_constant(1.0) == pytest.approx(1.1291738854501419, rel=1e-10)

    def test_decreases_toward_zero(self):
        c1 = binet_constant(0.5)
        c2 = binet_constant(0.1)
        assert binet_constant(1.0) > c1 > c2 > 0

    def test_grid_oracle(self):
        import numpy as np

        for sigma in (0.3, 1.0, 2.5):
            grid = np.linspace(1e-6, 60.0, 400001)
            dense = float(
                np.max(np.exp(grid * math.log(sigma) - [math.lgamma(a) for a in grid]))
            )
            assert binet_constant(sigma) >= dense * (1 - 1e-8)
            assert binet_constant(sigma) <= dense * (1 + 1e-4)

    @given(one_var_jets(min_terms=1))
    @settings(max_examples=100, deadline=None)
    def test_borel_norm_certificate(self, F):
        # ||B F||_sigma <= C(sigma/r) ||F||_r on stored jets
        r, sigma = 1.0, 0.7
        B = F.formal_borel(1.0)
        lhs = B.norm_r(sigma).value
        rhs = binet_constant(sigma / r) * F.norm_r(r).value
        assert lhs <= rhs * (1 + 1e-9) + 1e-12


class TestRadiusEstimate:
    def test_geometric(self):
        F = GenSeries(
            1, {(float(k),): 2.0 ** -k for k in range(4, 40)}, cutoff=40.0
        )
        log_rad, C = estimate_log_radius(F, safety=1.0)
        assert math.exp(log_rad) == pytest.approx(2.0, rel=1e-6)
        for k, c in F.terms.items():
            assert abs(c) <= C * math.exp(-log_rad * k[0]) * (1 + 1e-9)
