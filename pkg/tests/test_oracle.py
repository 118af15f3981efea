"""Oracle reference values.

Expected values are frozen.  Each was cross-checked once against a direct
mpmath evaluation of the underlying special functions.
"""

import math

import mpmath as mp
import pytest

from ratio_bounds import oracle
from ratio_bounds.errors import RatioBoundsError


FROZEN_RATIOS = [
    ("pcf-u", {"n": 1}, 0.0, "0.9559775949722499907276"),
    ("pcf-u", {"n": 1}, 1.0, "0.5792047726384801161323"),
    ("pcf-u", {"n": 2.5}, 3.0, "0.2661687588125802583466"),
    ("pcf-u", {"n": 10}, 20.0, "0.0487549275143025059819"),
    ("pcf-u-reflected", {"n": 2}, 1.0, "1.039746020289424655731"),
    ("pcf-v", {"n": 1.5}, 2.0, "2"),
    ("hermite-imag", {"n": 3}, 1.0, "3.333333333333333333333"),
    ("oblate-q", {"n": 2, "m": 1}, 1.0, "0.5038767877682173224078"),
    ("oblate-p", {"n": 3, "m": 1}, 0.5, "2.25"),
    ("laguerre-neg", {"nu": 0, "alpha": 1}, 1.0, "2"),
    ("laguerre-neg", {"nu": 2.5, "alpha": 0.5}, 2.0, "1.059350595173653333582"),
    ("bessel-i", {"n": 1}, 1.0, "0.4463899658965345070477"),
    ("bessel-i", {"n": 2.5}, 10.0, "0.8111111060218429203799"),
    ("bessel-k", {"n": 2}, 1.0, "2.699483935593772343893"),
    ("hermite-real", {"n": 3}, 3.0, "5.294117647058823529412"),
    ("laguerre-real", {"n": 2, "alpha": 1}, 10.0, "2.875"),
    ("mills", {}, 1.0, "0.6556795424187984715439"),
    ("ierfc", {"n": 2}, 1.0, "0.2825123951704889466467"),
]


def _close(value, expected, rel=1e-20):
    with mp.workdps(40):
        expected = mp.mpf(expected)
        return abs(value - expected) <= rel * max(abs(expected), 1)


@pytest.mark.parametrize("family,params,x,expected", FROZEN_RATIOS)
def test_frozen_ratio(family, params, x, expected):
    ov = oracle.oracle_ratio(family, params, x)
    assert _close(ov.exact, expected)
    assert math.isfinite(ov.abs_error_estimate)
    assert ov.method in oracle.METHODS


@pytest.mark.parametrize("family,params,x,expected", FROZEN_RATIOS)
def test_second_method_agrees(family, params, x, expected):
    a = oracle.oracle_ratio(family, params, x)
    b = oracle.oracle_ratio(family, params, x, method="alt")
    assert _close(b.exact, expected, 1e-18)
    assert abs(a.exact - b.exact) <= max(a.abs_error_estimate + b.abs_error_estimate, 1e-25)


def test_hermite_real_exact():
    # H_3(3)/H_2(3) = 180/34
    ov = oracle.oracle_ratio("hermite-real", {"n": 3}, 3.0)
    with mp.workdps(40):
        assert _close(ov.exact, mp.mpf(90) / 17, 1e-28)


def test_pcf_u_at_zero_closed_form():
    ov = oracle.oracle_ratio("pcf-u", {"n": 1}, 0.0)
    with mp.workdps(40):
        u = lambda a: mp.sqrt(mp.pi) * mp.mpf(2) ** (-a / 2 - mp.mpf(1) / 4) / mp.gamma(mp.mpf(3) / 4 + a / 2)
        assert _close(ov.exact, u(1) / u(0), 1e-25)


def test_mills_anchors():
    with mp.workdps(40):
        assert _close(oracle.oracle_mills(0.0).exact, mp.sqrt(mp.pi / 2), 1e-25)
    assert abs(oracle.oracle_mills(1.0).value - 0.6556795424) < 1e-9
    r10 = oracle.oracle_mills(10.0).value
    assert 1 / (10 + 1 / 10) < r10 < 1 / 10
    assert abs(r10 - 0.1) / 0.1 < 0.01


def test_mills_negative_x():
    with pytest.raises(RatioBoundsError):
        oracle.oracle_mills(-1.0)


@pytest.mark.parametrize("n,x,expected", [
    (1, 0.0, "0.5641895835477562869481"),
    (3, 2.0, "0.1849236808748656286365"),
])
def test_ierfc_ratio(n, x, expected):
    assert _close(oracle.oracle_ierfc_ratio(n, x).exact, expected, 1e-18)


def test_ierfc_first_is_inverse_sqrt_pi():
    with mp.workdps(40):
        assert _close(oracle.oracle_ierfc_ratio(1, 0.0).exact, 1 / mp.sqrt(mp.pi), 1e-25)


@pytest.mark.parametrize("family,n,alpha,expected", [
    ("hermite", 3, None, "1.224744871391589049099"),
    ("hermite", 7, None, "2.651961356835233492447"),
    ("laguerre", 2, 1.0, "4.732050807568877293527"),
    ("laguerre", 5, 0.5, "13.4576783520575800261"),
])
def test_largest_zero(family, n, alpha, expected):
    ov = oracle.oracle_largest_zero(family, n, alpha)
    assert _close(ov.exact, expected, 1e-18)
    assert ov.method == "CompanionMatrix"


def test_laguerre_two_zero_quadratic():
    with mp.workdps(40):
        assert _close(oracle.oracle_largest_zero("laguerre", 2, 1.0).exact, 3 + mp.sqrt(3), 1e-20)


def test_logderiv_pcf_half_at_zero():
    v = -oracle.oracle_logderiv("pcf-u", {"n": 0.5}, 0.0).value
    assert 0 <= v <= 1


def test_logderiv_pcf_five():
    v = -oracle.oracle_logderiv("pcf-u", {"n": 5}, 2.0).value
    assert math.sqrt(5.5) <= v <= math.sqrt(6.5)
    assert v == pytest.approx(2.4932093308589636, rel=1e-14)


@pytest.mark.parametrize("family,params,x", [
    ("pcf-u", {"n": 5}, 2.0),
    ("pcf-u-reflected", {"n": 2}, 1.5),
    ("bessel-i", {"n": 1}, 2.0),
    ("bessel-k", {"n": 2.5}, 3.0),
    ("laguerre-neg", {"nu": 1, "alpha": 1}, 1.0),
])
def test_logderiv_methods_agree(family, params, x):
    a = oracle.oracle_logderiv(family, params, x)
    b = oracle.oracle_logderiv(family, params, x, method="alt")
    assert abs(a.exact - b.exact) < 1e-15 * max(1, abs(a.exact))


@pytest.mark.parametrize("family,params,x", [
    ("pcf-u", {"n": 1.5}, 2.0),
    ("bessel-i", {"n": 3}, 4.0),
    ("oblate-q", {"n": 3, "m": 1}, 0.7),
])
def test_ttrr_residual(family, params, x):
    # consecutive oracle ratios satisfy the three-term recurrence
    from ratio_bounds.families import get_family

    fam = get_family(family)
    k = fam.index(params)
    sys_ = fam.system(params)
    h_n = oracle.oracle_ratio(family, params, x).exact / fam.scale(params)
    h_next = oracle.oracle_ratio(family, fam.at_index(params, k + 1), x).exact / fam.scale(params)
    s = fam.solution_class.h_sign
    h_n, h_next = s * h_n, s * h_next
    res = sys_.e(k + 1, x) * h_next * h_n + (sys_.b(k + 1, x) - sys_.a(k, x)) * h_n - sys_.d(k, x)
    assert abs(res) < 1e-25


def test_cache_returns_same_object():
    a = oracle.oracle_ratio("bessel-i", {"n": 1}, 1.5)
    b = oracle.oracle_ratio("bessel-i", {"n": 1}, 1.5)
    assert a == b


def test_oracle_does_not_import_bounds():
    import ast
    import inspect

    tree = ast.parse(inspect.getsource(oracle))
    names = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            names.add(node.module or "")
        elif isinstance(node, ast.Import):
            names.update(a.name for a in node.names)
    assert not any("bounds" in n or "refine" in n or "families" in n for n in names)
