import math

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
    first_pk_bound,
    pk_enclosure,
    second_pk_bound_minimal,
)
from ratio_bounds.errors import ClassError, ZeroDivisorError
from ratio_bounds.families import get_family, mills_bounds
from ratio_bounds.families.catalog import pcf_system, pcf_u_reflected_bounds
from ratio_bounds.families.realaxis import hermite_real_lower_bound
from ratio_bounds.families.special import mills_cf
from ratio_bounds.refine import (
    MAX_DEPTH,
    cf_evaluate_with_tail,
    dominant_sequence,
    refine_enclosure,
    ttrr_step_down,
    ttrr_step_up,
    turan_enclosure,
    turan_interval,
)
from ratio_bounds.system import CoefficientSystem

PCF = pcf_system()
MIN_NEG = SolutionClass.minimal(-1)


def test_step_down_pcf_formula():
    # B_{m+1}(n, x) = 1 / (x + (n + 1/2) B_m(n + 1, x))
    n, x, v = 1.5, 2.0, 0.37
    b = ttrr_step_down(PCF, n, x, Bound(v, Side.UPPER, "PK1", n + 1, x), MIN_NEG)
    assert b.value == pytest.approx(1 / (x + (n + 0.5) * v), rel=1e-15)
    assert b.side is Side.LOWER
    assert b.provenance == "Iterated(1)"


def test_step_down_reproduces_second_bound():
    upper_at_2 = first_pk_bound(PCF, 2.0, 0.0, MIN_NEG)
    stepped = ttrr_step_down(PCF, 1.0, 0.0, upper_at_2, MIN_NEG)
    assert stepped.value == pytest.approx(2 / math.sqrt(6), rel=1e-15)
    assert stepped.value == pytest.approx(second_pk_bound_minimal(PCF, 1.0, 0.0, MIN_NEG).value, rel=1e-14)


def test_step_alternates_sides():
    b = Bound(0.4, Side.UPPER, "PK1", 3.0, 1.0)
    for k in range(2, 0, -1):
        nb = ttrr_step_down(PCF, float(k), 1.0, b, MIN_NEG)
        assert nb.side is b.side.flipped()
        b = nb


def test_constant_system_fixed_point():
    a, bb, d, e = 0.0, 1.0, 2.0, 0.5
    sys = CoefficientSystem(lambda n, x: a, lambda n, x: bb, lambda n, x: d, lambda n, x: e)
    # h* solves e h^2 + (b - a) h - d = 0 with h > 0
    h = (-(bb - a) + math.sqrt((bb - a) ** 2 + 4 * e * d)) / (2 * e)
    down = ttrr_step_down(sys, 1.0, 0.0, Bound(h, Side.UPPER, "PK1", 2.0, 0.0), SolutionClass.minimal(1))
    assert down.value == pytest.approx(h, rel=1e-15)
    # the same root, seen from the dominant side with s = -1 in the upward map
    hd = ((bb - a) + math.sqrt((bb - a) ** 2 + 4 * e * d)) / (2 * e)
    up = ttrr_step_up(sys, 2.0, 0.0, Bound(hd, Side.UPPER, "PK1", 1.0, 0.0), SolutionClass.dominant(-1))
    assert up.value == pytest.approx(hd, rel=1e-15)


def test_step_up_pcf_reflected():
    fam = get_family("pcf-u-reflected")
    sys = fam.system({"n": 3.0})
    upper_prev = first_pk_bound(sys, 2.0, 0.0, fam.solution_class, fam.increasing)
    b = ttrr_step_up(sys, 3.0, 0.0, upper_prev, fam.solution_class)
    assert b.side is Side.LOWER
    assert b.value == pytest.approx(math.sqrt(6) / 5, rel=1e-14)
    assert b.value == pytest.approx(pcf_u_reflected_bounds(3.0, 0.0)[0], rel=1e-14)


@pytest.mark.parametrize("n,x", [(2, 3.0), (3, 2.9), (5, 4.0), (9, 4.5)])
def test_step_up_hermite(n, x):
    # h_n = 2x - 2(n-1)/h_(n-1) carries x + sqrt(x^2 - 2(n-1)) at n-1 to the level-1 bound at n
    prev = hermite_real_lower_bound(n - 1, x, 0).value
    lvl1 = hermite_real_lower_bound(n, x, 1).value
    assert lvl1 == pytest.approx(2 * x - 2 * (n - 1) / prev, rel=1e-15)
    assert lvl1 == pytest.approx(x + math.sqrt(x * x - 2 * (n - 1)), rel=1e-14)


def test_refine_depth_zero_is_pk():
    seq = refine_enclosure(PCF, 1.0, 0.0, MIN_NEG, depth=0)
    enc = pk_enclosure(PCF, 1.0, 0.0, MIN_NEG)
    assert len(seq) == 1
    assert (seq[0].lower, seq[0].upper) == (enc.lower, enc.upper)


def test_refine_pcf_converges():
    seq = refine_enclosure(PCF, 1.0, 5.0, MIN_NEG, depth=10, rel_tol=0.0)
    assert len(seq) == 11
    assert seq.final.rel_width < 1e-6
    widths = [e.width for e in seq.enclosures]
    assert all(b <= a for a, b in zip(widths, widths[1:]))
    for outer, inner in zip(seq.enclosures, seq.enclosures[1:]):
        assert outer.lower * (1 - SIGMA) <= inner.lower and inner.upper <= outer.upper * (1 + SIGMA)
    assert seq.final.contains(oracle.oracle_ratio("pcf-u", {"n": 1}, 5.0).value)


def test_refine_stops_at_tolerance():
    seq = refine_enclosure(PCF, 1.0, 5.0, MIN_NEG, depth=60, rel_tol=1e-10)
    assert seq.converged
    assert seq.final_width_rel < 1e-10
    assert len(seq) < 61


def test_refine_depth_limits():
    with pytest.raises(ValueError):
        refine_enclosure(PCF, 1.0, 1.0, MIN_NEG, depth=MAX_DEPTH + 1)
    with pytest.raises(ClassError):
        refine_enclosure(PCF, 1.0, 1.0, SolutionClass.dominant(1), depth=1)


def test_dominant_sequence_contains_oracle():
    fam = get_family("pcf-u-reflected")
    p = {"n": 4.0}
    seq = dominant_sequence(fam.system(p), 4.0, 1.5, fam.solution_class, depth=2, increasing=fam.increasing)
    o = oracle.oracle_ratio("pcf-u-reflected", p, 1.5).value
    for enc in seq.enclosures:
        assert enc.contains(o)
    assert "not a convergent" in seq.note


def test_mills_depth_two():
    seq = mills_bounds(1.0, depth=2)
    assert seq[0].lower == pytest.approx(2 / (1 + math.sqrt(5)), rel=1e-15)
    assert seq[0].upper == pytest.approx(4 / (3 + 3), rel=1e-15)
    r = oracle.oracle_mills(1.0).value
    assert seq[0].lower < seq[1].lower < r < seq[1].upper < seq[0].upper


def test_cf_examples():
    assert mills_cf(1, 0.0) == pytest.approx(1.0, rel=1e-15)
    assert mills_cf(2, 0.0) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert cf_evaluate_with_tail([], [], 0.75) == 0.75
    with pytest.raises(ZeroDivisorError):
        cf_evaluate_with_tail([1.0], [0.0], 0.0)


@given(x=st.floats(min_value=0, max_value=10))
@settings(max_examples=60, deadline=None)
def test_mills_alternation(x):
    r = oracle.oracle_mills(x).value
    evens = [mills_cf(2 * k, x) for k in range(1, 6)]
    odds = [mills_cf(2 * k + 1, x) for k in range(0, 6)]
    assert all(b <= a for a, b in zip(evens, evens[1:]))
    assert all(b >= a for a, b in zip(odds, odds[1:]))
    assert max(odds) <= r * (1 + SIGMA)
    assert min(evens) >= r * (1 - SIGMA)


@given(n=st.floats(min_value=0.6, max_value=30), x=st.floats(min_value=0, max_value=30))
@settings(max_examples=100, deadline=None)
def test_depth_one_reproduces_second_bound(n, x):
    seq = refine_enclosure(PCF, n, x, MIN_NEG, depth=1, rel_tol=0.0)
    # depth 1 pairs the second bound at n with the first bound at n+1 stepped down
    s = second_pk_bound_minimal(PCF, n, x, MIN_NEG)
    stepped = ttrr_step_down(PCF, n, x, first_pk_bound(PCF, n + 1, x, MIN_NEG), MIN_NEG)
    assert stepped.value == pytest.approx(s.value, rel=1e-14)
    assert seq[1].lower == pytest.approx(s.value, rel=1e-14)


def test_turan_pcf_chain():
    t = turan_enclosure(PCF, 1.0, 2.0, MIN_NEG)
    enc = [pk_enclosure(PCF, k, 2.0, MIN_NEG) for k in (1.0, 2.0)]
    assert t.lower == pytest.approx(enc[0].lower / enc[1].upper)
    assert t.upper == pytest.approx(enc[0].upper / enc[1].lower)


def test_turan_degenerate_point():
    a, b = Enclosure(2.0, 2.0), Enclosure(4.0, 4.0)
    t = turan_interval(a, b, (0.1, 0.9))
    assert t.lower == t.upper == 0.5
    assert (t.uniform_lower, t.uniform_upper) == (0.1, 0.9)
