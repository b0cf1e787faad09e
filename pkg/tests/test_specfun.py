import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from utils import specfun
from utils.errors import DomainError


def test_phi_and_Phi_reference_values():
    assert specfun.phi(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-15)
    assert specfun.Phi(0.0) == 0.5
    assert specfun.Phi(1.959963984540054) == pytest.approx(0.975, rel=1e-14)
    assert specfun.Phi(-math.inf) == 0.0
    assert specfun.Phi(math.inf) == 1.0


def test_array_in_array_out_and_scalar_in_float_out():
    out = specfun.Phi(np.array([-1.0, 0.0, 1.0]))
    assert isinstance(out, np.ndarray) and out.shape == (3,)
    assert isinstance(specfun.Phi(0.3), float)


def test_Phi_inv_reference_values():
    assert specfun.Phi_inv(0.5) == 0.0
    assert specfun.Phi_inv(0.05) == pytest.approx(-1.6448536269514729, rel=1e-14)
    assert specfun.Phi_inv(0.99) == pytest.approx(2.3263478740408408, rel=1e-14)
    assert specfun.Phi_inv(1e-300) == pytest.approx(-37.0471, abs=1e-3)


@given(st.floats(min_value=1e-300, max_value=1.0 - 1e-16))
def test_Phi_inv_inverts_Phi(p):
    x = specfun.Phi_inv(p)
    if p < 0.5:
        assert specfun.Phi(x) == pytest.approx(p, rel=1e-12)
    else:
        assert specfun.q_func(x) == pytest.approx(1.0 - p, rel=1e-9, abs=1e-16)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, math.nan])
def test_Phi_inv_rejects_outside_open_interval(p):
    with pytest.raises(DomainError):
        specfun.Phi_inv(p)


def test_q_function_tail_is_not_cancelled():
    # Q(10) ~ 7.62e-24 is far below the spacing of doubles near 1
    assert specfun.q_func(10.0) == pytest.approx(7.619853024160527e-24, rel=1e-12)
    assert specfun.log_q(40.0) == pytest.approx(-804.6084420137538, rel=1e-10)


def test_q_power_matches_direct_power_where_representable():
    assert specfun.q_power(0.5, 10) == pytest.approx(specfun.q_func(0.5) ** 10, rel=1e-13)
    assert specfun.q_power(-3.0, 1e4) == pytest.approx(math.exp(1e4 * math.log1p(-specfun.q_func(3.0))), rel=1e-9)


def test_q_bound_constants_examples():
    c1, c2 = specfun.q_bound_constants(math.pi / 4)
    assert c1 == pytest.approx(0.25, abs=1e-15)
    assert c2 == pytest.approx(2.0 / math.pi, rel=1e-14)

    c1, c2 = specfun.q_bound_constants(1.0)
    assert c1 == pytest.approx(0.5 - 1.0 / math.pi, rel=1e-14)
    assert c2 == pytest.approx(1.0 / (math.tan(1.0) * (math.pi - 2.0)), rel=1e-14)


def test_q_bound_constants_near_zero():
    c1, c2 = specfun.q_bound_constants(1e-9)
    assert c1 == pytest.approx(0.5, abs=1e-8)
    assert c2 > 1e8


@pytest.mark.parametrize("omega", [0.0, math.pi / 2, -0.1, 2.0])
def test_q_bound_constants_reject_endpoints(omega):
    with pytest.raises(DomainError):
        specfun.q_bound_constants(omega)


@given(
    st.floats(min_value=0.0, max_value=30.0),
    st.floats(min_value=0.01, max_value=math.pi / 2 - 0.01),
)
def test_q_bounds_sandwich_q(x, omega):
    lower, upper = specfun.q_bounds(x, omega)
    q = specfun.q_func(x)
    assert lower <= q * (1.0 + 1e-12) + 1e-300
    assert q <= upper * (1.0 + 1e-12) + 1e-300


def test_q_bounds_reject_negative_argument():
    with pytest.raises(DomainError):
        specfun.q_bounds(-0.1, 1.0)
