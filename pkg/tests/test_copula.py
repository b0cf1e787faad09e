import math

import numpy as np
import pytest
from scipy import special, stats

from models import CopulaFamily, CopulaModel, RandomStream, SelectionProblem
from services.copula_service import copula_service
from services.selection_service import selection_service
from utils.errors import DomainError

ALL_MODELS = [
    CopulaModel.gaussian(0.4),
    CopulaModel.gaussian(-0.5),
    CopulaModel.clayton(0.5),
    CopulaModel.clayton(3.0),
    CopulaModel.frank(2.0),
    CopulaModel.frank(15.0),
    CopulaModel.independence(),
    CopulaModel.comonotonic(),
]


class TestModel:
    def test_build_validates_parameters(self):
        with pytest.raises(DomainError):
            CopulaModel.gaussian(1.5)
        with pytest.raises(DomainError):
            CopulaModel.clayton(0.0)
        with pytest.raises(DomainError):
            CopulaModel.frank(-2.0)
        with pytest.raises(DomainError):
            CopulaModel.build("independence", 0.3)
        with pytest.raises(DomainError):
            CopulaModel.build("student-t", 3.0)

    def test_validation_message_is_one_line(self):
        with pytest.raises(DomainError) as exc:
            CopulaModel.gaussian(1.5)
        message = str(exc.value)
        assert "\n" not in message and "pydantic" not in message
        with pytest.raises(DomainError) as exc:
            SelectionProblem.build(3, 1, 1.5)
        assert str(exc.value).startswith("alpha: ")
        with pytest.raises(DomainError) as exc:
            SelectionProblem.build(3, 4, 0.5)
        assert str(exc.value) == "Selection size must satisfy 1 <= m <= n"

    def test_density_flag(self):
        assert CopulaModel.gaussian(0.3).has_density
        assert not CopulaModel.gaussian(1.0).has_density
        assert not CopulaModel.comonotonic().has_density

    def test_random_stream_is_reproducible(self):
        a = RandomStream(seed=7).generator.random(5)
        b = RandomStream(seed=7).generator.random(5)
        c = RandomStream(seed=7, stream_index=1).generator.random(5)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_shards_are_independent_streams(self):
        stream = RandomStream(seed=3)
        assert not np.array_equal(stream.shard_generator(0).random(4), stream.shard_generator(1).random(4))


class TestJointCdf:
    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.label)
    def test_uniform_margins_and_groundedness(self, model):
        grid = np.linspace(0.0, 1.0, 11)
        np.testing.assert_allclose(copula_service.joint_cdf(model, grid, 1.0), grid, atol=1e-15)
        np.testing.assert_allclose(copula_service.joint_cdf(model, 1.0, grid), grid, atol=1e-15)
        np.testing.assert_array_equal(copula_service.joint_cdf(model, grid, 0.0), 0.0)
        np.testing.assert_array_equal(copula_service.joint_cdf(model, 0.0, grid), 0.0)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.label)
    def test_within_frechet_bounds(self, model):
        u, v = np.meshgrid(np.linspace(0.05, 0.95, 7), np.linspace(0.05, 0.95, 7))
        c = copula_service.joint_cdf(model, u, v)
        assert np.all(c <= np.minimum(u, v) + 1e-12)
        assert np.all(c >= np.maximum(u + v - 1.0, 0.0) - 1e-12)

    def test_gaussian_matches_scipy_bivariate_normal(self):
        rho = 0.6
        u, v = 0.3, 0.8
        mvn = stats.multivariate_normal(mean=[0.0, 0.0], cov=[[1.0, rho], [rho, 1.0]])
        expected = mvn.cdf([stats.norm.ppf(u), stats.norm.ppf(v)])
        assert copula_service.joint_cdf(CopulaModel.gaussian(rho), u, v) == pytest.approx(expected, abs=1e-6)

    def test_clayton_closed_form(self):
        u, v = 0.2, 0.7
        expected = (u ** -2.0 + v ** -2.0 - 1.0) ** -0.5
        assert copula_service.joint_cdf(CopulaModel.clayton(2.0), u, v) == pytest.approx(expected, rel=1e-13)

    def test_frank_closed_form(self):
        theta, u, v = 3.0, 0.4, 0.9
        expected = -math.log1p(math.expm1(-theta * u) * math.expm1(-theta * v) / math.expm1(-theta)) / theta
        assert copula_service.joint_cdf(CopulaModel.frank(theta), u, v) == pytest.approx(expected, rel=1e-13)

    def test_large_parameters_do_not_overflow(self):
        assert np.isfinite(copula_service.joint_cdf(CopulaModel.clayton(500.0), 0.01, 0.02))
        assert np.isfinite(copula_service.joint_cdf(CopulaModel.frank(800.0), 0.3, 0.6))
        assert copula_service.joint_cdf(CopulaModel.frank(800.0), 0.3, 0.6) == pytest.approx(0.3, abs=1e-3)

    def test_rejects_points_outside_the_square(self):
        with pytest.raises(DomainError):
            copula_service.joint_cdf(CopulaModel.independence(), 1.2, 0.5)


class TestConditionalCdf:
    def test_clayton_worked_examples(self):
        u = np.linspace(0.01, 0.99, 25)
        np.testing.assert_allclose(
            copula_service.conditional_cdf(CopulaModel.clayton(1.0), 0.5, u), 1.0 / (1.0 + u) ** 2, rtol=1e-13
        )
        np.testing.assert_allclose(
            copula_service.conditional_cdf(CopulaModel.clayton(2.0), 0.5, u), (1.0 + 3.0 * u ** 2) ** -1.5, rtol=1e-13
        )

    @pytest.mark.parametrize("model", [m for m in ALL_MODELS if m.has_density], ids=lambda m: m.label)
    def test_is_derivative_of_joint_cdf(self, model):
        h = 1e-6
        for u in (0.1, 0.45, 0.8):
            for v in (0.05, 0.5, 0.93):
                numeric = (copula_service.joint_cdf(model, u + h, v) - copula_service.joint_cdf(model, u - h, v)) / (2 * h)
                assert copula_service.conditional_cdf(model, v, u) == pytest.approx(numeric, abs=1e-5)

    @pytest.mark.parametrize("model", [m for m in ALL_MODELS if m.has_density], ids=lambda m: m.label)
    def test_is_a_cdf_in_v(self, model):
        v = np.linspace(0.0, 1.0, 101)
        for u in (0.02, 0.5, 0.98):
            values = copula_service.conditional_cdf(model, v, u)
            assert values[0] == pytest.approx(0.0, abs=1e-12)
            assert values[-1] == pytest.approx(1.0, abs=1e-12)
            assert np.all(np.diff(values) >= -1e-12)

    def test_comonotonic_is_a_step(self):
        model = CopulaModel.comonotonic()
        assert copula_service.conditional_cdf(model, 0.5, 0.4) == 1.0
        assert copula_service.conditional_cdf(model, 0.5, 0.6) == 0.0

    def test_conditioning_point_must_be_interior(self):
        with pytest.raises(DomainError):
            copula_service.conditional_cdf(CopulaModel.independence(), 0.5, 0.0)
        with pytest.raises(DomainError):
            copula_service.conditional_cdf(CopulaModel.independence(), 0.5, 1.0)


class TestBoundary:
    def test_family_limits(self):
        assert copula_service.boundary_conditional_cdf(CopulaModel.gaussian(0.3), 0.05) == 1.0
        assert copula_service.boundary_conditional_cdf(CopulaModel.gaussian(0.0), 0.05) == 0.05
        assert copula_service.boundary_conditional_cdf(CopulaModel.gaussian(-0.3), 0.05) == 0.0
        assert copula_service.boundary_conditional_cdf(CopulaModel.clayton(0.7), 0.05) == 1.0
        assert copula_service.boundary_conditional_cdf(CopulaModel.independence(), 0.3) == 0.3
        assert copula_service.boundary_conditional_cdf(CopulaModel.comonotonic(), 0.3) == 1.0
        expected = (1.0 - math.exp(-0.2)) / (1.0 - math.exp(-2.0))
        assert copula_service.boundary_conditional_cdf(CopulaModel.frank(2.0), 0.1) == pytest.approx(expected, rel=1e-14)

    def test_matches_conditional_near_zero(self):
        model = CopulaModel.frank(4.0)
        assert copula_service.conditional_cdf(model, 0.3, 1e-12) == pytest.approx(
            copula_service.boundary_conditional_cdf(model, 0.3), rel=1e-9
        )

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            copula_service.boundary_conditional_cdf(CopulaModel.independence(), 0.0)


class TestSampling:
    @pytest.mark.parametrize(
        "model", [CopulaModel.gaussian(0.7), CopulaModel.clayton(2.0), CopulaModel.frank(5.0)], ids=lambda m: m.label
    )
    def test_quantile_inverts_conditional(self, model):
        u = np.array([0.03, 0.3, 0.7, 0.97])
        w = np.array([0.1, 0.5, 0.6, 0.95])
        v = copula_service.conditional_quantile(model, w, u)
        np.testing.assert_allclose(copula_service.conditional_cdf(model, v, u), w, atol=1e-10)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.label)
    def test_samples_have_uniform_margins_and_right_concordance(self, model):
        rng = RandomStream(seed=11).generator
        u, v = copula_service.sample_pairs(model, 20_000, rng)
        assert np.all((u > 0.0) & (u <= 1.0)) and np.all((v >= 0.0) & (v <= 1.0))
        assert stats.kstest(u, "uniform").pvalue > 1e-4
        assert stats.kstest(v, "uniform").pvalue > 1e-4
        tau, _ = stats.kendalltau(u[:3000], v[:3000])
        assert tau == pytest.approx(copula_service.kendall_tau(model), abs=0.05)

    def test_strong_frank_quantile_stays_in_range(self):
        model = CopulaModel.frank(40.0)
        u = np.array([1e-6, 0.5, 0.99, 0.999999, 1.0])
        w = np.array([1e-9, 0.5, 0.999, 0.999999, 1.0])
        v = copula_service.conditional_quantile(model, w, u)
        assert np.all(np.isfinite(v)) and np.all((v >= 0.0) & (v <= 1.0))
        interior = slice(0, 4)
        np.testing.assert_allclose(copula_service.conditional_cdf(model, v[interior], u[interior]), w[interior], atol=1e-9)

    def test_strong_frank_samples_keep_uniform_true_values(self):
        model = CopulaModel.frank(40.0)
        u, v = copula_service.sample_pairs(model, 100_000, RandomStream(seed=19).generator)
        assert np.all(np.isfinite(v)) and np.all((v >= 0.0) & (v <= 1.0))
        assert stats.kstest(v, "uniform").pvalue > 1e-4

        # with n = m = 1 the chosen candidate is the only one: P = alpha exactly
        estimate = selection_service.success_montecarlo(
            model, SelectionProblem.build(1, 1, 0.97), 200_000, RandomStream(seed=23)
        )
        assert abs(estimate.value - 0.97) <= 4 * estimate.stderr

    @pytest.mark.parametrize(
        "model",
        [CopulaModel.gaussian(0.6), CopulaModel.clayton(2.0), CopulaModel.frank(5.0), CopulaModel.frank(40.0)],
        ids=lambda m: m.label,
    )
    def test_empirical_joint_cdf_matches(self, model):
        u, v = copula_service.sample_pairs(model, 1_000_000, RandomStream(seed=29).generator)
        points = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
        for a in points:
            below_a = u <= a
            empirical = np.array([np.mean(below_a & (v <= b)) for b in points])
            expected = copula_service.joint_cdf(model, np.full_like(points, a), points)
            np.testing.assert_allclose(empirical, expected, atol=0.005)

    def test_gaussian_normal_scores_correlation(self):
        u, v = copula_service.sample_pairs(CopulaModel.gaussian(0.6), 1_000_000, RandomStream(seed=31).generator)
        r = np.corrcoef(special.ndtri(u), special.ndtri(v))[0, 1]
        assert r == pytest.approx(0.6, abs=0.003)

    def test_sample_pair_is_reproducible(self):
        model = CopulaModel.clayton(1.0)
        assert copula_service.sample_pair(model, RandomStream(seed=5)) == copula_service.sample_pair(model, RandomStream(seed=5))


class TestDependence:
    @pytest.mark.parametrize(
        "model",
        [CopulaModel.gaussian(0.5), CopulaModel.clayton(1.5), CopulaModel.frank(3.0), CopulaModel.independence()],
        ids=lambda m: m.label,
    )
    def test_positive_families_are_sipd(self, model):
        assert copula_service.sipd_check(model, 60)

    def test_negative_gaussian_is_not_sipd(self):
        assert not copula_service.sipd_check(CopulaModel.gaussian(-0.4), 60)

    def test_kendall_tau_values(self):
        assert copula_service.kendall_tau(CopulaModel.gaussian(0.5)) == pytest.approx(1.0 / 3.0, rel=1e-14)
        assert copula_service.kendall_tau(CopulaModel.clayton(2.0)) == 0.5
        assert copula_service.kendall_tau(CopulaModel.independence()) == 0.0
        assert copula_service.kendall_tau(CopulaModel.comonotonic()) == 1.0
        # Frank(5.74) has tau close to 0.5
        assert copula_service.kendall_tau(CopulaModel.frank(5.74)) == pytest.approx(0.5, abs=2e-3)

    def test_family_enum_round_trip(self):
        assert CopulaFamily("frank") is CopulaFamily.FRANK
