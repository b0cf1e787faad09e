import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from models import CopulaModel, RandomStream, SelectionProblem
from services.copula_service import copula_service
from services.selection_service import selection_service

from .conftest import POSITIVE_MODELS

models = st.sampled_from(POSITIVE_MODELS)
alphas = st.floats(min_value=0.01, max_value=0.95)
any_positive_model = st.one_of(
    st.floats(min_value=0.01, max_value=0.99).map(CopulaModel.gaussian),
    st.floats(min_value=0.05, max_value=20.0).map(CopulaModel.clayton),
    st.floats(min_value=0.05, max_value=40.0).map(CopulaModel.frank),
    st.just(CopulaModel.independence()),
)


def quad(model, n, m, alpha):
    return selection_service.success_quadrature(model, SelectionProblem.build(n, m, alpha)).value


@settings(max_examples=200, deadline=None)
@given(model=models, n=st.integers(min_value=1, max_value=49), m=st.integers(min_value=1, max_value=5), alpha=alphas)
def test_more_candidates_never_hurt(model, n, m, alpha):
    assume(m <= n)
    assert quad(model, n + 1, m, alpha) >= quad(model, n, m, alpha) - 1e-9


@settings(max_examples=200, deadline=None)
@given(
    model=st.sampled_from(POSITIVE_MODELS + [CopulaModel.gaussian(-0.3)]),
    n=st.integers(min_value=2, max_value=20),
    m=st.integers(min_value=1, max_value=19),
    alpha=alphas,
)
def test_more_selections_never_hurt(model, n, m, alpha):
    assume(m < n)
    assert quad(model, n, m + 1, alpha) >= quad(model, n, m, alpha) - 1e-9


@settings(max_examples=200, deadline=None)
@given(
    model=models,
    n=st.integers(min_value=1, max_value=30),
    m=st.integers(min_value=1, max_value=4),
    alpha=st.floats(min_value=0.01, max_value=0.9),
    step=st.floats(min_value=0.001, max_value=0.09),
)
def test_looser_goal_never_hurts(model, n, m, alpha, step):
    assume(m <= n)
    assert quad(model, n, m, alpha + step) >= quad(model, n, m, alpha) - 1e-9


@settings(max_examples=200, deadline=None)
@given(model=models, n=st.integers(min_value=1, max_value=40), m=st.integers(min_value=1, max_value=40), alpha=alphas)
def test_positive_dependence_sits_between_the_general_bounds(model, n, m, alpha):
    assume(m <= n)
    prob = SelectionProblem.build(n, m, alpha)
    lower, upper = selection_service.general_bounds(prob)
    value = selection_service.success_quadrature(model, prob).value
    assert lower - 1e-9 <= value <= upper + 1e-9


@settings(max_examples=200, deadline=None)
@given(model=any_positive_model, m=st.integers(min_value=1, max_value=50), alpha=alphas)
def test_fixed_rule_limit_beats_randomized_limit(model, m, alpha):
    fixed = selection_service.fixed_limit(model, m, alpha)
    randomized = selection_service.randomized_limit(model, m, alpha)
    boundary = copula_service.boundary_conditional_cdf(model, alpha)
    assert randomized == pytest.approx(-math.expm1(-m * boundary), abs=1e-12)
    assert fixed >= randomized
    # strict wherever both limits are still distinguishable from 1
    if randomized < 1.0 - 1e-12:
        assert fixed > randomized


ORACLE_CASES = [
    (CopulaModel.gaussian(0.4), 3, 1, 0.1),
    (CopulaModel.gaussian(0.4), 8, 2, 0.3),
    (CopulaModel.gaussian(0.8), 5, 1, 0.05),
    (CopulaModel.gaussian(0.8), 10, 3, 0.2),
    (CopulaModel.gaussian(-0.3), 6, 2, 0.25),
    (CopulaModel.clayton(0.5), 4, 2, 0.4),
    (CopulaModel.clayton(1.0), 3, 1, 0.5),
    (CopulaModel.clayton(2.0), 7, 3, 0.1),
    (CopulaModel.clayton(4.0), 10, 1, 0.15),
    (CopulaModel.clayton(4.0), 9, 2, 0.05),
    (CopulaModel.frank(2.0), 6, 1, 0.3),
    (CopulaModel.frank(2.0), 10, 2, 0.1),
    (CopulaModel.frank(8.0), 5, 3, 0.2),
    (CopulaModel.frank(8.0), 8, 1, 0.6),
    (CopulaModel.independence(), 5, 2, 0.3),
    (CopulaModel.independence(), 10, 3, 0.05),
    (CopulaModel.gaussian(0.6), 2, 2, 0.35),
    (CopulaModel.clayton(1.5), 6, 1, 0.8),
    (CopulaModel.frank(4.0), 9, 3, 0.45),
    (CopulaModel.gaussian(0.95), 10, 2, 0.02),
]


@pytest.mark.parametrize("model,n,m,alpha", ORACLE_CASES, ids=lambda case: getattr(case, "label", str(case)))
def test_three_estimators_agree(model, n, m, alpha):
    prob = SelectionProblem.build(n, m, alpha)
    quadrature = selection_service.success_quadrature(model, prob).value
    brute = selection_service.success_bruteforce(model, prob, grid=120 if m == 3 else 400).value
    simulated = selection_service.success_montecarlo(model, prob, 100_000, RandomStream(seed=n * 100 + m))

    assert brute == pytest.approx(quadrature, abs=1e-3)
    assert abs(simulated.value - quadrature) <= max(3.0 * simulated.stderr, 1e-5)
