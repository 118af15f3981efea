import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratio_bounds.errors import ComplexRootsError, DomainError
from ratio_bounds.families.catalog import pcf_system
from ratio_bounds.families.realaxis import hermite_real_system
from ratio_bounds.system import (
    TAU,
    CoefficientSystem,
    Direction,
    Interval,
    Regime,
    characteristic_data,
    classify_regime,
    naive_roots,
    quadratic_residual,
    recurrence_data,
    root_monotonicity,
    stable_roots,
)


def constant_system(a=0.3, b=1.1, d=2.0, e=0.5):
    return CoefficientSystem(lambda n, x: a, lambda n, x: b, lambda n, x: d, lambda n, x: e, name="const")


PCF = pcf_system()
HERM = hermite_real_system()


def test_interval_membership():
    iv = Interval(0.0, 1.0, lo_open=True)
    assert 0.5 in iv and 1.0 in iv
    assert 0.0 not in iv
    assert math.nan not in iv
    assert str(Interval.open(0, 1)) == "(0, 1)"


def test_pcf_at_origin():
    cd = characteristic_data(PCF, 1.0, 0.0)
    assert cd.eta == 0.0
    assert cd.lambda_plus == pytest.approx(math.sqrt(2), rel=1e-15)
    assert cd.lambda_minus == pytest.approx(-math.sqrt(2), rel=1e-15)


def test_hermite_double_root():
    cd = characteristic_data(HERM, 2.0, 2.0)
    assert cd.lambda_plus == pytest.approx(2.0, rel=1e-15)
    assert cd.lambda_minus == pytest.approx(2.0, rel=1e-15)


def test_hermite_two_roots():
    cd = characteristic_data(HERM, 2.0, 3.0)
    assert cd.lambda_plus == pytest.approx(3 + math.sqrt(5), rel=1e-15)
    assert cd.lambda_minus == pytest.approx(3 - math.sqrt(5), rel=1e-15)


def test_hermite_oscillatory_raises():
    with pytest.raises(ComplexRootsError):
        characteristic_data(HERM, 2.0, 1.0)


def test_domain_error():
    with pytest.raises(DomainError):
        characteristic_data(PCF, 0.2, 1.0)


def test_recurrence_data_pcf():
    for n, x in [(1.0, 0.0), (1.0, 2.0), (3.5, 7.0)]:
        rd = recurrence_data(PCF, n, x)
        assert rd.eta_bar == pytest.approx(characteristic_data(PCF, n + 1, x).eta, rel=1e-14, abs=1e-300)
    rd = recurrence_data(PCF, 1.0, 1.0)
    assert rd.E == pytest.approx(1 / math.sqrt(3), rel=1e-15)
    assert rd.D == 1.0


def test_recurrence_roots_shift_invariant():
    sys = constant_system()
    cd = characteristic_data(sys, 1.0, 0.0)
    rd = recurrence_data(sys, 1.0, 0.0)
    assert rd.lambda_bar_plus == pytest.approx(cd.lambda_plus, rel=1e-15)
    assert rd.lambda_bar_minus == pytest.approx(cd.lambda_minus, rel=1e-15)


@pytest.mark.parametrize("sys,n,x,regime", [
    (HERM, 2.0, 3.0, Regime.NEGATIVE_MONOTONIC),
    (HERM, 2.0, 1.0, Regime.OSCILLATORY),
    (HERM, 2.0, 2.0, Regime.OSCILLATORY),
    (PCF, 1.0, 5.0, Regime.POSITIVE_PRODUCT),
])
def test_classify(sys, n, x, regime):
    assert classify_regime(sys, n, x) is regime


def test_monotonicity_pcf():
    rep = root_monotonicity(PCF, 2.0, (0.0, 10.0), grid=33, root=-1)
    assert rep.direction is Direction.INCREASING
    assert rep.method == "eta"
    assert rep.grid == 33


def test_monotonicity_hermite():
    rep = root_monotonicity(HERM, 3.0, (math.sqrt(6) + 0.1, 10.0), root=1)
    assert rep.direction is Direction.INCREASING
    assert rep.method == "finite-difference"


def test_monotonicity_constant():
    rep = root_monotonicity(constant_system(), 1.0, (0.0, 1.0))
    assert rep.direction is Direction.NOT_MONOTONIC
    assert rep.zero_derivative


def test_monotonicity_grid_too_small():
    with pytest.raises(ValueError):
        root_monotonicity(PCF, 2.0, (0.0, 1.0), grid=2)


def test_sign_pattern_and_negation():
    sys = constant_system(d=-1.0, e=-2.0)
    assert sys.sign_pattern(1.0, np.linspace(0, 1, 16)) == (-1, -1)
    assert sys.normalized(1.0, [0.0, 1.0]).sign_pattern(1.0, [0.0]) == (1, 1)


def test_sign_change_detected():
    sys = CoefficientSystem(lambda n, x: 0.0, lambda n, x: 0.0, lambda n, x: x - 0.5, lambda n, x: 1.0)
    with pytest.raises(DomainError):
        sys.sign_pattern(1.0, np.linspace(0, 1, 256))


coef = st.floats(min_value=-50, max_value=50, allow_nan=False).filter(lambda v: abs(v) > 1e-3)
xs = st.floats(min_value=0, max_value=50, allow_nan=False)


@given(a=coef, b=coef, d=coef, e=coef)
@settings(max_examples=300, deadline=None)
def test_residual_and_product(a, b, d, e):
    sys = constant_system(a, b, d, e)
    try:
        cd = characteristic_data(sys, 1.0, 0.0)
    except ComplexRootsError:
        assert classify_regime(sys, 1.0, 0.0) is Regime.OSCILLATORY
        return
    for lam in (cd.lambda_plus, cd.lambda_minus):
        res, scale = quadratic_residual(e, b - a, d, lam)
        assert abs(res) <= TAU * scale
    assert cd.lambda_plus * cd.lambda_minus == pytest.approx(-d / e, rel=TAU)
    if d > 0 and e > 0:
        assert cd.lambda_plus > 0 > cd.lambda_minus
    if d * e < 0:
        assert cd.lambda_plus * cd.lambda_minus > 0
        assert classify_regime(sys, 1.0, 0.0) is not Regime.POSITIVE_PRODUCT


@given(n=st.floats(min_value=0.51, max_value=100), x=xs)
@settings(max_examples=200, deadline=None)
def test_stable_and_naive_forms_agree(n, x):
    cd = characteristic_data(PCF, n, x)
    lo, hi = stable_roots(cd.eta, cd.R, cd.s_product, 1)
    nlo, nhi = naive_roots(cd.eta, cd.R, cd.s_product, 1)
    # the naive form loses digits only for the small root at large |eta|
    assert hi == pytest.approx(nhi, rel=1e-14)
    assert lo == pytest.approx(nlo, rel=1e-14 * max(1.0, cd.eta * cd.eta))


@given(n=st.floats(min_value=1, max_value=30), x=st.floats(min_value=0, max_value=30))
@settings(max_examples=200, deadline=None)
def test_regime_consistent_with_roots(n, x):
    regime = classify_regime(HERM, n, x)
    if regime is Regime.OSCILLATORY and x * x != 2 * n:
        with pytest.raises(ComplexRootsError):
            characteristic_data(HERM, n, x)
    elif regime is Regime.NEGATIVE_MONOTONIC:
        cd = characteristic_data(HERM, n, x)
        assert cd.lambda_plus * cd.lambda_minus > 0
