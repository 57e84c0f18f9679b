import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rieszcap.errors import DomainError, InvalidInputError
from rieszcap.kernel import EnergyValue, Regime, RieszExponent, capacity_from_energy, kernel_value

exponents = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
scales = st.floats(min_value=1e-3, max_value=1e3)


@pytest.mark.parametrize("p, r, expected", [(3, 1, 1.0), (0, 1, 0.0), (-2, 3, 9.0), (1, 4, 0.25), (0, math.e, -1.0)])
def test_kernel_value_examples(p, r, expected):
    assert kernel_value(p, r) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_kernel_value_rejects_nonpositive_distance(r):
    with pytest.raises(DomainError):
        kernel_value(1.0, r)


@pytest.mark.parametrize(
    "p, v, expected",
    [(2, 4, 0.5), (0, 0, 1.0), (-1, 2, 2.0), (1, math.inf, 0.0), (0, math.inf, 0.0), (-1, 0, 0.0)],
)
def test_capacity_from_energy_examples(p, v, expected):
    assert capacity_from_energy(p, v) == pytest.approx(expected, rel=1e-15)


def test_capacity_from_infinite_energy_value():
    assert capacity_from_energy(1, EnergyValue.infinite(1)) == 0.0


def test_negative_exponent_cannot_have_infinite_energy():
    with pytest.raises(InvalidInputError):
        capacity_from_energy(-1, math.inf)
    with pytest.raises(InvalidInputError):
        EnergyValue.infinite(-1)


def test_regime_and_direction():
    assert RieszExponent(-0.5).regime is Regime.NEGATIVE and RieszExponent(-0.5).maximize
    assert RieszExponent(0).regime is Regime.ZERO and not RieszExponent(0).maximize
    assert RieszExponent(2).regime is Regime.POSITIVE and not RieszExponent(2).maximize
    with pytest.raises(DomainError):
        RieszExponent(math.nan)


@given(exponents, st.floats(min_value=1e-6, max_value=1e6))
def test_capacity_energy_round_trip(p, v):
    assume(p != 0.0 and abs(p) > 1e-3)
    cap = capacity_from_energy(p, v)
    assume(0 < cap < math.inf)
    assert cap ** (-p) == pytest.approx(v, rel=1e-12)


@given(exponents, st.floats(min_value=1e-3, max_value=1e3), scales)
def test_kernel_scaling(p, r, s):
    if p == 0.0:
        assert kernel_value(0, s * r) == pytest.approx(kernel_value(0, r) - math.log(s), rel=1e-12, abs=1e-12)
    else:
        assert kernel_value(p, s * r) == pytest.approx(s ** (-p) * kernel_value(p, r), rel=1e-12)


def test_capacity_overflow_saturates_to_infinity():
    assert capacity_from_energy(1e-300, 0.5) == math.inf
    assert capacity_from_energy(1e-300, 2.0) == 0.0
