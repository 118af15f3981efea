import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratio_bounds import oracle
from ratio_bounds.bounds import (
    SIGMA,
    Bound,
    Enclosure,
    Side,
    SolutionClass,
    enclosure_from_bounds,
    first_pk_bound,
    first_pk_values,
    lg_logderiv_bounds,
    pk_enclosure,
    second_pk_bound_dominant,
    second_pk_bound_minimal,
)
from ratio_bounds.errors import ClassError, InconsistentBoundsError, RegimeError
from ratio_bounds.families import get_family
from ratio_bounds.families import pcf_logderiv_bounds
from ratio_bounds.families.catalog import laguerre_neg_system, oblate_system, pcf_system, pcf_u_bounds
from ratio_bounds.system import CoefficientSystem, characteristic_data

PCF = pcf_system()
MIN_NEG = SolutionClass.minimal(-1)
DOM_POS = SolutionClass.dominant(1)


def constant_system(a=0.0, b=1.0, d=2.0, e=0.5):
    return CoefficientSystem(lambda n, x: a, lambda n, x: b, lambda n, x: d, lambda n, x: e, name="const")


def test_first_bound_pcf_origin():
    b = first_pk_bound(PCF, 1.0, 0.0, MIN_NEG)
    assert b.value == pytest.approx(math.sqrt(2), rel=1e-15)
    assert b.side is Side.UPPER
    assert b.provenance == "PK1"


def test_first_bound_eta_zero_is_R():
    # eta vanishes at x = 0 for every n, so F = R = sqrt(d/e)
    for n in (0.75, 2.0, 9.5):
        b = first_pk_bound(PCF, n, 0.0, MIN_NEG)
        assert b.value == pytest.approx(1 / math.sqrt(n - 0.5), rel=1e-15)


def test_first_bound_laguerre():
    sys = laguerre_neg_system({"nu": 0.0, "alpha": 1.0})
    b = first_pk_bound(sys, 1.0, 1.0, DOM_POS)
    assert b.value == pytest.approx(1 + math.sqrt(2), rel=1e-15)
    assert b.side is Side.UPPER


def test_second_minimal_pcf_origin():
    b = second_pk_bound_minimal(PCF, 1.0, 0.0, MIN_NEG)
    assert b.value == pytest.approx(2 / math.sqrt(6), rel=1e-15)
    assert b.side is Side.LOWER


def test_second_minimal_equality_case():
    # n = -1/2: e vanishes at n+1, the closed form reduces to 1/x = U(-1/2,x)/U(-3/2,x)
    for x in (0.5, 1.0, 4.0):
        assert pcf_u_bounds(-0.5, x)[0] == pytest.approx(1 / x, rel=1e-15)


def test_second_bounds_degenerate_for_constant_system():
    sys = constant_system(a=1.0, b=0.0)
    f = first_pk_bound(sys, 1.0, 0.0, MIN_NEG, increasing=True)
    smin = second_pk_bound_minimal(sys, 1.0, 0.0, MIN_NEG, increasing=True)
    assert smin.value == pytest.approx(f.value, rel=1e-15)
    fd = first_pk_bound(sys, 1.0, 0.0, DOM_POS, increasing=True)
    sdom = second_pk_bound_dominant(sys, 1.0, 0.0, DOM_POS, increasing=True)
    assert sdom.value == pytest.approx(fd.value, rel=1e-15)


def test_second_dominant_pcf_reflected():
    fam = get_family("pcf-u-reflected")
    sys = fam.system({"n": 2.0})
    b = second_pk_bound_dominant(sys, 2.0, 0.0, fam.solution_class, fam.increasing)
    assert b.value == pytest.approx(math.sqrt(2) / 3, rel=1e-14)
    assert b.side is Side.LOWER


def test_second_dominant_oblate_p():
    n, m, x = 3.0, 1.0, 1.0
    fam = get_family("oblate-p")
    sys = fam.system({"n": n, "m": m})
    b = second_pk_bound_dominant(sys, n, x, fam.solution_class, fam.increasing)
    expected = (n * x + (n - 1) * math.sqrt(1 + x * x - m * m / (n - 1) ** 2)) / (n - m)
    assert b.value == pytest.approx(expected, rel=1e-14)


def test_class_errors():
    with pytest.raises(ClassError):
        second_pk_bound_minimal(PCF, 1.0, 0.0, DOM_POS)
    with pytest.raises(ClassError):
        second_pk_bound_dominant(PCF, 2.0, 1.0, MIN_NEG)


def test_regime_error_for_unnormalised_system():
    with pytest.raises(RegimeError):
        first_pk_bound(constant_system(d=-1.0, e=-1.0), 1.0, 0.0, MIN_NEG, increasing=True)


@pytest.mark.parametrize("n,x,lo,hi", [
    (1.0, 0.0, 2 / math.sqrt(6), 2 / math.sqrt(2)),
    (5.0, 2.0, 2 / (2 + math.sqrt(26)), 2 / (2 + math.sqrt(22))),
])
def test_pk_enclosure_pcf(n, x, lo, hi):
    enc = pk_enclosure(PCF, n, x, MIN_NEG)
    assert enc.lower == pytest.approx(lo, rel=1e-15)
    assert enc.upper == pytest.approx(hi, rel=1e-15)


def test_pk_enclosure_laguerre():
    fam = get_family("laguerre-neg")
    p = {"nu": 1.0, "alpha": 1.0}
    enc = pk_enclosure(fam.system(p), fam.index(p), 1.0, fam.solution_class, fam.increasing)
    assert enc.lower == pytest.approx((1 + math.sqrt(13)) / 4, rel=1e-14)
    assert enc.upper == pytest.approx((2 + math.sqrt(12)) / 4, rel=1e-14)


def test_enclosure_invariants():
    with pytest.raises(ValueError):
        Enclosure(2.0, 1.0)
    with pytest.raises(ValueError):
        Bound(-1.0, Side.UPPER, "PK1", 1.0, 0.0)
    enc = Enclosure(1.0, 2.0)
    assert 1.5 in enc and 2.0 + 1e-13 in enc and 2.1 not in enc


def test_inconsistent_bounds():
    bounds = [Bound(2.0, Side.LOWER, "PK2Minimal", 1, 0), Bound(1.0, Side.UPPER, "PK1", 1, 0)]
    with pytest.raises(InconsistentBoundsError):
        enclosure_from_bounds(bounds)


def test_logderiv_pcf_origin():
    _, br = lg_logderiv_bounds(PCF, 1.0, 0.0, MIN_NEG)
    assert br.lower == pytest.approx(-math.sqrt(1.5), rel=1e-15)
    assert br.upper == pytest.approx(-math.sqrt(0.5), rel=1e-15)


def test_logderiv_pcf_half():
    enc = pcf_logderiv_bounds(0.5, 0.0)
    assert enc.lower == 0.0
    assert enc.upper == pytest.approx(1.0, rel=1e-15)


def test_logderiv_contains_oracle():
    _, br = lg_logderiv_bounds(PCF, 3.0, 2.0, MIN_NEG)
    assert br.lower == pytest.approx(-math.sqrt(4.5), rel=1e-15)
    assert br.upper == pytest.approx(-math.sqrt(3.5), rel=1e-15)
    assert br.contains(oracle.oracle_logderiv("pcf-u", {"n": 3}, 2.0).value)


def test_pcf_bounds_share_asymptotics():
    enc = pk_enclosure(PCF, 2.0, 1e3, MIN_NEG)
    assert enc.upper / enc.lower - 1 < 1e-2


def first_forms_mp(n, x, s):
    """Both printed forms of the first bound, for the pcf system, at 30 digits."""
    with mp.workdps(30):
        n, x = mp.mpf(n), mp.mpf(x)
        d, e = mp.mpf(1), n - mp.mpf(1) / 2
        eta, R = -x / (2 * mp.sqrt(d * e)), mp.sqrt(d / e)
        q = mp.sqrt(1 + eta ** 2)
        return R * (-s * eta + q), R / (s * eta + q)


@given(n=st.floats(min_value=0.51, max_value=60), x=st.floats(min_value=0, max_value=60))
@settings(max_examples=300, deadline=None)
def test_first_bound_forms_agree(n, x):
    for s in (-1, 1):
        f1, f2 = first_forms_mp(n, x, s)
        assert abs(f1 - f2) <= 1e-14 * abs(f2)
        # the library value, computed without cancellation, matches in binary64
        cls = SolutionClass.minimal(s)
        v = first_pk_bound(PCF, n, x, cls, increasing=True).value
        assert abs(v - f2) <= 1e-14 * abs(f2)


@given(n=st.floats(min_value=0.51, max_value=60), x=st.floats(min_value=0, max_value=60))
@settings(max_examples=100, deadline=None)
def test_binary64_forms_agree_up_to_conditioning(n, x):
    # the form with s*eta < 0 cancels and loses about log10(2 eta^2) digits
    eta = characteristic_data(PCF, n, x).eta
    for s in (-1, 1):
        v1, v2 = first_pk_values(PCF, n, x, s)
        assert v1 == pytest.approx(v2, rel=4e-16 * (1 + 2 * eta * eta))


@given(n=st.floats(min_value=0.6, max_value=40), x=st.floats(min_value=0, max_value=40))
@settings(max_examples=150, deadline=None)
def test_side_law(n, x):
    f = first_pk_bound(PCF, n, x, MIN_NEG)
    s = second_pk_bound_minimal(PCF, n, x, MIN_NEG)
    assert f.side is not s.side


@pytest.mark.parametrize("n,m", [(2.0, 1.0), (4.5, 2.0), (6.0, 0.0)])
@pytest.mark.parametrize("x", [0.1, 1.0, 5.0])
def test_oblate_q_containment(n, m, x):
    fam = get_family("oblate-q")
    p = {"n": n, "m": m}
    enc = pk_enclosure(oblate_system(p), n, x, fam.solution_class, fam.increasing)
    assert enc.contains(oracle.oracle_ratio("oblate-q", p, x).value, SIGMA)
