import math

import pytest
from hypothesis import given, settings, strategies as st

from noonlab import analytic as an
from noonlab.analytic import ProbeConfig

# reference values below were evaluated at 30 digits with mpmath
unit = st.floats(0.0, 1.0, allow_nan=False)
open_unit = st.floats(1e-6, 1.0 - 1e-6)
loss_lt1 = st.floats(0.0, 0.999)
photons = st.integers(1, 10)


def central(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


class TestProbeConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(n_photons=0, alpha=0.5, loss=0.1),
        dict(n_photons=2, alpha=-0.1, loss=0.1),
        dict(n_photons=2, alpha=0.5, loss=1.5),
        dict(n_photons=2.5, alpha=0.5, loss=0.1),
        dict(n_photons=2, alpha=0.5, loss=0.1, phase=math.inf),
    ])
    def test_rejects_out_of_domain(self, kwargs):
        with pytest.raises(ValueError):
            ProbeConfig(**kwargs)

    def test_coerces_types(self):
        cfg = ProbeConfig(2.0, 1, 0)
        assert cfg.n_photons == 2 and isinstance(cfg.n_photons, int)
        assert cfg.alpha == 1.0 and cfg.phase == 0.0


def test_noon_coefficients():
    c = an.noon_coefficients(ProbeConfig(1, 1.0, 0.5))
    assert c.c_n == pytest.approx(1 / math.sqrt(2), abs=1e-15) and c.d_n == 0.0
    for n in range(1, 8):
        c = an.noon_coefficients(ProbeConfig(n, 0.5, 0.0))
        assert c.c_n == pytest.approx(2 ** (-(n + 1) / 2), rel=1e-14)
        assert c.d_n == pytest.approx(c.c_n, rel=1e-14)
    c = an.noon_coefficients(ProbeConfig(2, 0.4, 0.1))
    assert c.c_n == pytest.approx(0.31622776601683794, rel=1e-14)
    assert c.d_n == pytest.approx(0.34856850115866817, rel=1e-14)


def test_fringe_descriptor():
    f = an.fringe_descriptor(ProbeConfig(2, 0.5, 0.0))
    assert f.amplitude_a == pytest.approx(0.25) and f.visibility_v == pytest.approx(1.0)
    f = an.fringe_descriptor(ProbeConfig(2, 0.4, 0.1))
    assert f.amplitude_a == pytest.approx(0.2215, rel=1e-14)
    assert f.visibility_v == pytest.approx(0.99527799932499336, rel=1e-13)
    f = an.fringe_descriptor(ProbeConfig(3, 0.0, 0.2))
    assert f.amplitude_a == pytest.approx(0.8**3 / 8, rel=1e-14) and f.visibility_v == 0.0
    assert an.fringe_descriptor(ProbeConfig(3, 0.0, 1.0)) == an.FringeDescriptor(0.0, 0.0)


class TestDetection:
    def test_single_photon_fringe(self):
        cfg = ProbeConfig(1, 0.5, 0.0, 0.0)
        assert an.detection_probability(cfg, 1) == pytest.approx(1.0)
        assert an.detection_probability(cfg, 0) == pytest.approx(0.0, abs=1e-15)

    def test_two_photon_bunching(self):
        probs = an.coincidence_distribution(ProbeConfig(2, 0.5, 0.0, 0.0)).probs
        assert probs == pytest.approx([0.5, 0.0, 0.5], abs=1e-15)

    def test_quadrature_point(self):
        dist = an.coincidence_distribution(ProbeConfig(2, 0.4, 0.1, math.pi / 4))
        assert dist.probs == pytest.approx([0.2215, 0.4430, 0.2215], abs=1e-15)
        assert dist.total == pytest.approx(0.886, abs=1e-15)

    def test_lossless_sum_is_one(self):
        for phase in (0.0, 0.3, 2.0):
            assert an.coincidence_distribution(ProbeConfig(3, 0.7, 0.0, phase)).total == pytest.approx(1.0, abs=1e-14)

    def test_all_lost(self):
        assert an.coincidence_distribution(ProbeConfig(1, 0.0, 1.0, 0.4)).probs == (0.0, 0.0)

    @pytest.mark.parametrize("i", [-1, 3, 1.5])
    def test_index_range(self, i):
        with pytest.raises(ValueError):
            an.detection_probability(ProbeConfig(2, 0.5, 0.1), i)

    @given(photons, unit, unit, st.floats(-10, 10))
    def test_normalization(self, n, alpha, loss, phase):
        cfg = ProbeConfig(n, alpha, loss, phase)
        dist = an.coincidence_distribution(cfg)
        assert all(-1e-15 <= p <= 1.0 + 1e-15 for p in dist.probs)
        assert abs(dist.total - an.sum_rule(n, alpha, loss)) <= 1e-12


class TestVisibility:
    def test_values(self):
        for n in (1, 2, 7):
            assert an.visibility(0.5, 0.0, n) == 1.0
        assert an.visibility(an.optimal_alpha_for_visibility(0.3, 2), 0.3, 2) == pytest.approx(1.0, abs=1e-12)
        assert an.visibility(0.4, 0.1, 2) == pytest.approx(0.99527799932499336, rel=1e-13)
        assert an.visibility(0.0, 1.0, 3) == 0.0

    def test_matches_fringe_descriptor(self):
        for n, a, p in [(1, 0.2, 0.3), (4, 0.6, 0.5), (6, 0.1, 0.9)]:
            assert an.visibility(a, p, n) == pytest.approx(
                an.fringe_descriptor(ProbeConfig(n, a, p)).visibility_v, rel=1e-13)

    def test_deficit(self):
        for n, a, p in [(1, 0.2, 0.3), (4, 0.6, 0.5), (2, 0.5, 0.0)]:
            assert an.visibility_deficit(a, p, n) == pytest.approx(1 - an.visibility(a, p, n), abs=1e-15)

    def test_optimal_alpha(self):
        assert an.optimal_alpha_for_visibility(0.0, 4) == 0.5
        assert an.optimal_alpha_for_visibility(0.3, 1) == pytest.approx(0.7 / 1.7, rel=1e-15)
        assert an.optimal_alpha_for_visibility(1.0, 3) == 0.0

    def test_optimal_loss(self):
        for n in (1, 3, 8):
            assert an.optimal_loss_for_visibility(0.5, n) == 0.0
        # 1 - sqrt(3/7)
        assert an.optimal_loss_for_visibility(0.3, 2) == pytest.approx(0.34534632929202286, rel=1e-14)
        assert an.optimal_loss_for_visibility(0.7, 3) is None
        for bad in (0.0, 1.0):
            with pytest.raises(ValueError):
                an.optimal_loss_for_visibility(bad, 2)

    @given(loss=st.floats(0.0, 0.999999), n=photons)
    def test_restoration(self, loss, n):
        assert abs(an.visibility(an.optimal_alpha_for_visibility(loss, n), loss, n) - 1.0) <= 1e-12

    @given(open_unit, photons)
    def test_optimal_loss_inverts_optimal_alpha(self, alpha, n):
        p = an.optimal_loss_for_visibility(alpha, n)
        if p is not None:
            assert an.optimal_alpha_for_visibility(p, n) == pytest.approx(alpha, abs=1e-9)

    @given(unit, unit, photons)
    def test_range(self, alpha, loss, n):
        assert 0.0 <= an.visibility(alpha, loss, n) <= 1.0


class TestFisher:
    def test_phase_resolved_values(self):
        assert an.fisher_information(ProbeConfig(1, 0.5, 0.0, math.pi / 2)) == pytest.approx(1.0, abs=1e-14)
        assert an.fisher_information(ProbeConfig(2, 0.5, 0.0, math.pi / 8)) == pytest.approx(2.0, abs=1e-14)
        assert an.fisher_information(ProbeConfig(2, 0.4, 0.1, math.pi / 4)) == pytest.approx(
            1.7553047404063205, rel=1e-13)

    def test_zero_of_unit_visibility_fringe(self):
        # 0/0 at cos^2 = 1 resolves to N 2^N A
        assert an.fisher_information(ProbeConfig(3, 0.5, 0.0, 0.0)) == pytest.approx(3.0, rel=1e-14)

    def test_zero_of_imperfect_fringe(self):
        assert an.fisher_information(ProbeConfig(2, 0.4, 0.1, 0.0)) == 0.0

    def test_max_values(self):
        for n in range(1, 11):
            assert an.fisher_information_max(n, 0.5, 0.0) == pytest.approx(n, rel=1e-15)
        assert an.fisher_information_max(2, 0.4, 0.1) == pytest.approx(1.7553047404063205, rel=1e-13)
        assert an.fisher_information_max(5, 1.0, 0.3) == 0.0
        assert an.fisher_information_max(3, 0.0, 1.0) == 0.0

    def test_max_difference(self):
        for n, a, b, p in [(2, 0.3, 0.6, 0.2), (5, 0.01, 0.02, 0.9), (1, 0.5, 0.5, 0.0), (3, 0.0, 0.7, 1.0)]:
            direct = an.fisher_information_max(n, a, p) - an.fisher_information_max(n, b, p)
            assert an.fisher_max_difference(n, a, b, p) == pytest.approx(direct, abs=1e-14)

    def test_loss_derivative_values(self):
        assert an.fisher_loss_derivative(3, 0.0, 0.4) == 0.0
        assert an.fisher_loss_derivative(3, 1.0, 0.4) == 0.0
        assert an.fisher_loss_derivative(2, 0.5, 0.0) == pytest.approx(-2.0, rel=1e-15)
        assert an.fisher_loss_derivative(1, 0.2, 0.3) == pytest.approx(-0.22160664819944598, rel=1e-13)
        with pytest.raises(ValueError):
            an.fisher_loss_derivative(2, 0.5, 1.0)

    def test_alpha_derivative_values(self):
        assert an.fisher_alpha_derivative(2, 0.5, 0.0) == 0.0
        assert an.fisher_alpha_derivative(2, 0.3, 0.2) == pytest.approx(2.0461551660041751, rel=1e-13)
        for n, p in [(1, 0.3), (4, 0.6), (7, 0.05)]:
            assert an.fisher_alpha_derivative(n, an.optimal_alpha_for_fisher(p, n), p) == pytest.approx(0.0, abs=1e-13)

    @settings(max_examples=200)
    @given(st.floats(0.01, 0.99), st.floats(0.0, 0.95), photons)
    def test_derivatives_match_finite_differences(self, alpha, loss, n):
        fd_p = central(lambda p: an.fisher_information_max(n, alpha, p), loss) if loss > 1e-5 else None
        dp = an.fisher_loss_derivative(n, alpha, loss)
        if fd_p is not None:
            assert dp == pytest.approx(fd_p, rel=1e-5, abs=1e-9)
        fd_a = central(lambda a: an.fisher_information_max(n, a, loss), alpha)
        assert an.fisher_alpha_derivative(n, alpha, loss) == pytest.approx(fd_a, rel=1e-5, abs=1e-8)

    @given(unit, loss_lt1, photons)
    def test_loss_derivative_non_positive(self, alpha, loss, n):
        d = an.fisher_loss_derivative(n, alpha, loss)
        assert d <= 0.0
        if 0.0 < alpha < 1.0 and d == 0.0:
            # only an underflowed transmission may vanish
            assert (1 - loss) ** (n - 1) * alpha * alpha < 1e-300

    @given(st.floats(0.0, 0.99), photons)
    def test_single_sign_change_in_alpha(self, loss, n):
        a_opt = an.optimal_alpha_for_fisher(loss, n)
        grid = [k / 400 for k in range(1, 400)]
        for a in grid:
            d = an.fisher_alpha_derivative(n, a, loss)
            if a < a_opt - 1e-9:
                assert d > 0
            elif a > a_opt + 1e-9:
                assert d < 0

    @given(photons, unit, unit)
    def test_fringe_quadrature_equals_max(self, n, alpha, loss):
        cfg = ProbeConfig(n, alpha, loss, math.pi / (2 * n))
        assert abs(an.fisher_information(cfg) - an.fisher_information_max(n, alpha, loss)) <= 1e-12

    @given(photons, unit, unit)
    def test_range(self, n, alpha, loss):
        assert 0.0 <= an.fisher_information_max(n, alpha, loss) <= n

    @given(st.floats(0.0, 0.999), photons, st.floats(0.05, 3.0))
    def test_flat_fringe_under_unit_visibility(self, loss, n, phase):
        alpha = an.optimal_alpha_for_visibility(loss, n)
        cfg = ProbeConfig(n, alpha, loss, phase)
        if math.sin(n * phase) ** 2 < 1e-3:
            return
        expected = n * 2**n * an.fringe_descriptor(cfg).amplitude_a
        assert an.fisher_information(cfg) == pytest.approx(expected, rel=1e-9, abs=1e-300)

    def test_optimal_alpha(self):
        assert an.optimal_alpha_for_fisher(0.0, 6) == 0.5
        assert an.optimal_alpha_for_fisher(0.2, 2) == pytest.approx(0.8 / 1.8, rel=1e-15)
        assert an.optimal_alpha_for_fisher(1.0, 3) == 0.0

    def test_fisher_at_optimum(self):
        for n in (1, 4, 9):
            assert an.fisher_at_optimal_alpha(0.0, n) == pytest.approx(n, rel=1e-15)
            assert an.fisher_at_optimal_alpha(1.0, n) == 0.0
        assert an.fisher_at_optimal_alpha(0.2, 2) == pytest.approx(8 * 0.64 / 3.24, rel=1e-14)

    @given(loss_lt1, photons)
    def test_fisher_at_optimum_is_max_at_optimum(self, loss, n):
        a = an.optimal_alpha_for_fisher(loss, n)
        assert an.fisher_at_optimal_alpha(loss, n) == pytest.approx(
            an.fisher_information_max(n, a, loss), rel=1e-12, abs=1e-300)


class TestSuperiorityAndAdvantage:
    def test_loss_bound(self):
        assert an.superiority_loss_bound(0.5, 2) == pytest.approx(0.42264973081037424, rel=1e-14)
        assert an.superiority_loss_bound(0.1, 1) is None
        lo, _ = an.superiority_alpha_interval_lossless(2)
        assert an.superiority_loss_bound(lo + 1e-9, 2) == pytest.approx(0.0, abs=1e-7)
        assert an.superiority_loss_bound(lo - 1e-9, 2) is None

    @given(open_unit, photons)
    def test_loss_bound_is_unit_fisher(self, alpha, n):
        p = an.superiority_loss_bound(alpha, n)
        if p is None:
            assert an.fisher_information_max(n, alpha, 0.0) <= 1.0 + 1e-12
        else:
            assert an.fisher_information_max(n, alpha, p) == pytest.approx(1.0, abs=1e-9)

    def test_advantage_ratio(self):
        for n in (2, 5):
            assert an.advantage_ratio(0.3, 0.0, n) == pytest.approx(n, rel=1e-15)
        assert an.advantage_ratio(0.4, 0.1, 2) == pytest.approx(1.909706546275395, rel=1e-13)
        assert an.advantage_ratio(0.5, 0.9, 2) == pytest.approx(0.21782178217821782, rel=1e-13)
        with pytest.raises(ValueError):
            an.advantage_ratio(0.5, 1.0, 2)

    @given(open_unit, loss_lt1, photons)
    def test_advantage_ratio_consistency(self, alpha, loss, n):
        f1 = an.fisher_information_max(1, alpha, loss)
        lhs = an.advantage_ratio(alpha, loss, n) * f1
        assert abs(lhs - an.fisher_information_max(n, alpha, loss)) <= 1e-12

    def test_lossless_interval(self):
        assert an.superiority_alpha_interval_lossless(1) is None
        lo, hi = an.superiority_alpha_interval_lossless(2)
        assert (lo, hi) == pytest.approx((0.14644660940672624, 0.85355339059327376), abs=1e-15)
        lo, hi = an.superiority_alpha_interval_lossless(5)
        assert (lo, hi) == pytest.approx((0.052786404500042060, 0.94721359549995794), abs=1e-15)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_lossless_interval_edges_are_unit_fisher(self, n):
        for edge in an.superiority_alpha_interval_lossless(n):
            assert an.fisher_information_max(n, edge, 0.0) == pytest.approx(1.0, abs=1e-13)

    def test_loss_bound_optimal_alpha(self):
        assert an.superiority_loss_bound_optimal_alpha(1) == pytest.approx(0.0, abs=1e-15)
        assert an.superiority_loss_bound_optimal_alpha(2) == pytest.approx(0.45308183932197284, rel=1e-14)
        assert an.superiority_loss_bound_optimal_alpha(5) == pytest.approx(0.39219913870517197, rel=1e-14)

    def test_bound_decreases_with_n(self):
        bounds = [an.superiority_loss_bound_optimal_alpha(n) for n in range(2, 30)]
        assert all(a > b for a, b in zip(bounds, bounds[1:]))

    def test_advantage_ratio_optimal_alpha(self):
        for n in (1, 2, 6):
            assert an.advantage_ratio_optimal_alpha(0.0, n) == pytest.approx(n, rel=1e-15)
        assert an.advantage_ratio_optimal_alpha(0.638520, 2) == pytest.approx(1.0, abs=1e-5)
        assert an.advantage_ratio_optimal_alpha(0.3, 2) == pytest.approx(1.6341342817631182, rel=1e-13)
        with pytest.raises(ValueError):
            an.advantage_ratio_optimal_alpha(1.0, 2)

    @given(loss_lt1, photons)
    def test_advantage_ratio_optimal_alpha_consistency(self, loss, n):
        ratio = an.fisher_at_optimal_alpha(loss, n) / an.fisher_at_optimal_alpha(loss, 1)
        assert an.advantage_ratio_optimal_alpha(loss, n) == pytest.approx(ratio, rel=1e-12)

    def test_two_photon_threshold(self):
        p = an.advantage_loss_threshold_two_photon()
        assert p == pytest.approx(0.63852029158227232, rel=1e-14)
        assert round(p, 2) == 0.64
        assert an.advantage_ratio_optimal_alpha(p, 2) == pytest.approx(1.0, abs=1e-9)


class TestDuality:
    def test_values(self):
        assert an.duality_alpha(0.0, 3) == (0.5, 0.5)
        assert an.duality_alpha(0.3, 1) == pytest.approx((0.7 / 1.7, 0.7 / 1.7), rel=1e-15)
        assert an.duality_alpha(0.5, 2) == pytest.approx((0.2, 0.2), rel=1e-15)

    @given(unit, photons)
    def test_entries_agree(self, loss, n):
        a_v, a_2n = an.duality_alpha(loss, n)
        assert abs(a_v - a_2n) <= 1e-12
