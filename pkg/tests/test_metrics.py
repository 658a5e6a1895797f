import math

import numpy as np
import pytest

from curvedchain.errors import InvalidMetricError
from curvedchain.metrics import (
    HoppingProfile,
    MetricKind,
    MetricSpec,
    build_profile,
    deformed_coordinate,
    deformed_coordinates,
    log_derivative,
    uv_cutoff,
)

from helpers import random_smooth_profile

MINK = MetricSpec(MetricKind.MINKOWSKI)


class TestBuildProfile:
    def test_minkowski_constant(self):
        prof = build_profile(MINK, 4)
        assert prof.J.tolist() == [1.0, 1.0, 1.0]

    def test_rindler_affine(self):
        prof = build_profile(MetricSpec(MetricKind.RINDLER, a=0.01), 4)
        np.testing.assert_allclose(prof.J, [1.01, 1.02, 1.03], rtol=1e-15)

    def test_rainbow_center_link(self):
        prof = build_profile(MetricSpec(MetricKind.RAINBOW, h=0.04), 100)
        assert prof.J[49] == 1.0  # link 50 sits on the apex

    def test_rainbow_symmetric(self):
        prof = build_profile(MetricSpec(MetricKind.RAINBOW, h=0.03), 60)
        np.testing.assert_allclose(prof.J, prof.J[::-1], rtol=1e-15)

    def test_derived_sums(self):
        prof = build_profile(MetricSpec(MetricKind.RINDLER, a=0.5), 10)
        assert prof.S_N == prof.J.sum()
        assert prof.Ntilde == (1.0 / prof.J).sum()

    def test_odd_or_tiny_N_rejected(self):
        with pytest.raises(InvalidMetricError):
            build_profile(MINK, 5)
        with pytest.raises(InvalidMetricError):
            build_profile(MINK, 0)

    def test_nonpositive_hopping_reports_site(self):
        with pytest.raises(InvalidMetricError) as exc:
            build_profile(MetricSpec(MetricKind.RINDLER, a=-0.03), 100)
        assert exc.value.site == 34  # first m with 1 - 0.03 m <= 0

    def test_horizon_inside_chain_rejected_at_edge(self):
        # J(x) stays positive at every sampled link but crosses zero before x=N
        with pytest.raises(InvalidMetricError):
            build_profile(MetricSpec(MetricKind.RINDLER, J0=40.0, a=-1.0001 * 40 / 40), 40)

    def test_rindler_horizon_outside_is_fine(self):
        spec = MetricSpec(MetricKind.RINDLER, J0=1.0, a=2.0)
        assert -spec.J0 / spec.a < 0  # horizon to the left of the chain
        prof = build_profile(spec, 50)
        assert (prof.J > 0).all()

    def test_bad_parameters(self):
        with pytest.raises(InvalidMetricError):
            MetricSpec(MetricKind.MINKOWSKI, J0=0.0)
        with pytest.raises(InvalidMetricError, match="h must be nonnegative"):
            MetricSpec(MetricKind.RAINBOW, h=-0.1)


class TestZeroDeformationIsMinkowski:
    @pytest.mark.parametrize(
        "spec",
        [
            MetricSpec(MetricKind.RINDLER, a=0.0),
            MetricSpec(MetricKind.SINE, A=0.0, k=0.3),
            MetricSpec(MetricKind.RAINBOW, h=0.0),
            MetricSpec(MetricKind.MODULATED_SINE, A=0.0, k=0.3),
        ],
    )
    def test_bitwise(self, spec):
        ref = build_profile(MINK, 16).J
        assert np.array_equal(build_profile(spec, 16).J, ref)


class TestDeformedCoordinate:
    def test_unit_hoppings(self):
        prof = build_profile(MINK, 12)
        for ell in range(13):
            assert deformed_coordinate(prof, ell) == max(ell - 1, 0)

    def test_scaled_hoppings(self):
        prof = build_profile(MetricSpec(MetricKind.MINKOWSKI, J0=2.0), 8)
        assert deformed_coordinate(prof, 5) == 2.0

    def test_cumulative_matches_scalar(self):
        rng = np.random.default_rng(3)
        prof = random_smooth_profile(20, rng)
        xt = deformed_coordinates(prof)
        for ell in range(21):
            assert xt[ell] == pytest.approx(deformed_coordinate(prof, ell), abs=1e-14)

    def test_rainbow_closed_form_consistency(self):
        # discrete sum vs continuum h*xt = e^{hN/2} - e^{h(N/2-ell)}, O(h) apart
        h, N = 0.01, 400
        prof = build_profile(MetricSpec(MetricKind.RAINBOW, h=h), N)
        ell = N // 2
        closed = (math.exp(h * N / 2) - 1.0) / h
        discrete = deformed_coordinate(prof, ell)
        assert abs(discrete - closed) / closed < 1.5 * h

    def test_monotone_and_total(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            prof = random_smooth_profile(30, rng)
            xt = deformed_coordinates(prof)
            assert (np.diff(xt) >= 0).all()
            assert xt[-1] == pytest.approx(prof.Ntilde, rel=1e-14)

    def test_range_error(self):
        prof = build_profile(MINK, 8)
        with pytest.raises(ValueError):
            deformed_coordinate(prof, -1)
        with pytest.raises(ValueError):
            deformed_coordinate(prof, 9)


class TestUvCutoff:
    def test_minkowski(self):
        assert uv_cutoff(build_profile(MINK, 8), 3) == 1.0

    def test_rainbow_center(self):
        prof = build_profile(MetricSpec(MetricKind.RAINBOW, h=0.01), 400)
        assert uv_cutoff(prof, 200) == 1.0

    def test_rindler(self):
        prof = build_profile(MetricSpec(MetricKind.RINDLER, a=2.0), 20)
        assert uv_cutoff(prof, 10) == pytest.approx(1.0 / 21.0, rel=1e-15)

    def test_range_error(self):
        prof = build_profile(MINK, 8)
        with pytest.raises(ValueError):
            uv_cutoff(prof, 0)
        with pytest.raises(ValueError):
            uv_cutoff(prof, 8)


class TestLogDerivative:
    def test_minkowski(self):
        assert log_derivative(MINK, 17.0) == 0.0

    def test_rindler(self):
        spec = MetricSpec(MetricKind.RINDLER, a=0.01)
        assert log_derivative(spec, 100.0) == pytest.approx(0.005, rel=1e-15)

    def test_rainbow_constant(self):
        spec = MetricSpec(MetricKind.RAINBOW, h=0.04)
        # right-wing value everywhere, including apex and left wing (N=400 usage)
        for x in (100.0, 200.0, 300.0, 400.0):
            assert log_derivative(spec, x) == -0.04

    @pytest.mark.parametrize(
        "spec",
        [
            MetricSpec(MetricKind.SINE, A=0.4, k=0.21),
            MetricSpec(MetricKind.MODULATED_SINE, A=0.3, k=0.001),
        ],
    )
    def test_matches_finite_difference(self, spec):
        x, eps = 37.0, 1e-6
        fd = (
            math.log(spec.hopping(x + eps, 400)) - math.log(spec.hopping(x - eps, 400))
        ) / (2 * eps)
        assert log_derivative(spec, x) == pytest.approx(fd, abs=1e-7)

    def test_nonpositive_raises(self):
        with pytest.raises(InvalidMetricError):
            log_derivative(MetricSpec(MetricKind.RINDLER, a=-0.1), 11.0)


class TestHoppingProfile:
    def test_scaling_property(self):
        lam = 3.7
        base = build_profile(MINK, 10)
        scaled = build_profile(MetricSpec(MetricKind.MINKOWSKI, J0=lam), 10)
        np.testing.assert_allclose(scaled.J, lam * base.J, rtol=1e-15)
        assert scaled.S_N == pytest.approx(lam * base.S_N, rel=1e-15)
        assert scaled.Ntilde == pytest.approx(base.Ntilde / lam, rel=1e-15)

    def test_harmonic_arithmetic_inequality(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            prof = random_smooth_profile(24, rng)
            assert (prof.N - 1) / prof.Ntilde <= prof.S_N / (prof.N - 1) + 1e-15

    def test_wrong_length(self):
        with pytest.raises(InvalidMetricError):
            HoppingProfile(N=6, J=np.ones(4))

    def test_immutable(self):
        prof = build_profile(MINK, 6)
        with pytest.raises(ValueError):
            prof.J[0] = 2.0
