"""Grid membership checks, the power-sum gap, and endpoint envelopes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sugeno_bounds.convexity import (
    EndpointData,
    EnvelopeFunction,
    SMParams,
    check_envelope_dominates,
    check_sm_convex,
    endpoint_data,
    envelope,
    power_sum_gap,
)
from sugeno_bounds.exceptions import DomainError
from sugeno_bounds.expr import evaluate, parse
from sugeno_bounds.measure import Interval


def test_params_validation():
    SMParams(1.0, 1.0)
    SMParams(0.001, 0.5)
    for s, m in [(0.0, 1.0), (1.1, 1.0), (1.0, 0.0), (1.0, 1.5), (-0.2, 0.3)]:
        with pytest.raises(DomainError):
            SMParams(s, m)


# ---------------------------------------------------------------------------
# power-sum gap: 2^(1-s) - x^s - (1-x)^s


def test_gap_nonnegative_on_grid():
    xs = np.linspace(0.0, 1.0, 1001)
    for s in np.arange(1, 101) / 100.0:
        for x in xs:
            assert power_sum_gap(float(x), float(s)) >= -1e-12


def test_gap_zero_at_midpoint_s_half_and_one():
    # equality cases: x=1/2 for any s, and s=1 at every x
    for s in (0.25, 0.5, 0.75, 1.0):
        assert power_sum_gap(0.5, s) == pytest.approx(0.0, abs=1e-15)
    for x in (0.0, 0.3, 0.9, 1.0):
        assert power_sum_gap(x, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_gap_corner_value():
    # x=0, s=1/2: 2^(1/2) - 0 - 1
    assert power_sum_gap(0.0, 0.5) == pytest.approx(math.sqrt(2.0) - 1.0, rel=1e-15)


def test_gap_domain_errors():
    with pytest.raises(DomainError):
        power_sum_gap(-0.1, 0.5)
    with pytest.raises(DomainError):
        power_sum_gap(1.1, 0.5)
    with pytest.raises(DomainError):
        power_sum_gap(0.5, 0.0)
    with pytest.raises(DomainError):
        power_sum_gap(0.5, 1.2)


@settings(max_examples=300, deadline=None)
@given(x=st.floats(min_value=0.0, max_value=1.0),
       s=st.floats(min_value=1e-6, max_value=1.0))
def test_gap_nonnegative_property(x, s):
    assert power_sum_gap(x, s) >= -1e-12


# ---------------------------------------------------------------------------
# membership checks


@pytest.mark.parametrize("text,interval,s,m", [
    ("x^2/2", (0.0, 1.0), 1.0 / 3.0, 1.0),
    ("x^3/2", (0.0, 1.0), 1.0 / 3.0, 1.0),
    ("x^(3/2)", (1.0, 4.0), 1.0, 1.0),
    ("1/x^2", (1.0, 2.0), 1.0, 1.0),
    ("x^2", (0.0, 1.0), 1.0, 1.0),
    ("x", (0.0, 1.0), 1.0, 1.0),
    ("0", (0.0, 1.0), 0.4, 0.7),
    ("exp(x)", (0.0, 1.0), 1.0, 1.0),
])
def test_membership_holds(text, interval, s, m):
    verdict = check_sm_convex(parse(text), Interval(*interval), SMParams(s, m))
    assert verdict.holds_on_grid, verdict
    assert verdict.witness is None


def test_membership_holds_on_coarse_grid():
    verdict = check_sm_convex(parse("x^3/2"), Interval(0.0, 1.0),
                              SMParams(1.0 / 3.0, 1.0), grid=21)
    assert verdict.holds_on_grid
    assert verdict.grid == 21


def test_tent_violation_witness():
    verdict = check_sm_convex(parse("1/2-abs(x-1/2)"), Interval(0.0, 1.0), SMParams(1.0, 1.0))
    assert not verdict.holds_on_grid
    x, y, lam, gap = verdict.witness
    assert gap == pytest.approx(0.5, abs=1e-9)
    assert {x, y} == {0.0, 1.0}
    assert lam == pytest.approx(0.5, abs=1e-9)


def test_sqrt_is_not_convex():
    # sqrt is concave: midpoint of (1,4) gives sqrt(2.5) > 1.5
    verdict = check_sm_convex(parse("x^(1/2)"), Interval(1.0, 4.0), SMParams(1.0, 1.0))
    assert not verdict.holds_on_grid
    assert verdict.witness is not None
    expected_gap = math.sqrt(2.5) - 1.5
    assert verdict.witness[3] >= expected_gap - 1e-9


def test_finer_grid_does_not_hide_violations():
    f = parse("x^(1/2)")
    base, p = Interval(1.0, 4.0), SMParams(1.0, 1.0)
    gaps = [check_sm_convex(f, base, p, grid=g).witness[3] for g in (11, 41, 161)]
    assert gaps[0] <= gaps[1] + 1e-12 and gaps[1] <= gaps[2] + 1e-12


def test_check_skips_unevaluable_points():
    # ln is undefined at 0 but the combination grid only loses a few points
    verdict = check_sm_convex(parse("0-ln(x)"), Interval(0.0, 0.5), SMParams(1.0, 1.0))
    assert verdict.holds_on_grid
    assert verdict.skipped > 0


def test_grid_validation():
    with pytest.raises(ValueError):
        check_sm_convex(parse("x"), Interval(0.0, 1.0), SMParams(1.0, 1.0), grid=5)


# ---------------------------------------------------------------------------
# endpoint data and envelopes


def test_endpoint_data_from_expressions():
    e = endpoint_data(parse("x^2"), parse("2*x"), Interval(1.0, 4.0))
    assert (e.fa, e.fb, e.ga, e.gb) == (1.0, 16.0, 2.0, 8.0)


def test_endpoint_data_rejects_nonfinite():
    with pytest.raises(DomainError):
        EndpointData(1.0, float("nan"), 1.0, 2.0)


def test_envelope_is_chord_when_s_m_one():
    base = Interval(1.0, 4.0)
    env = envelope(1.0, 8.0, base, SMParams(1.0, 1.0))
    for x in np.linspace(1.0, 4.0, 101):
        chord = 1.0 + (x - 1.0) / 3.0 * 7.0
        assert env.value_at(float(x)) == pytest.approx(chord, abs=1e-12)
    # 1 -> 3 on [0,1] is the line 1 + 2x
    env2 = envelope(1.0, 3.0, Interval(0.0, 1.0), SMParams(1.0, 1.0))
    assert env2.value_at(0.5) == pytest.approx(2.0, abs=1e-15)


def test_envelope_offset_at_scaled_left_end():
    # at x = m*a the envelope equals m * 2^(1-s) * f(a)
    env = envelope(1.0, 2.0, Interval(0.0, 1.0), SMParams(0.5, 1.0))
    assert env.value_at(0.0) == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert env.value_at(1.0) == pytest.approx(math.sqrt(2.0) + 1.0, abs=1e-15)
    env2 = envelope(1.0, 3.0, Interval(0.0, 1.0), SMParams(0.5, 1.0))
    assert env2.value_at(0.0) == pytest.approx(math.sqrt(2.0), abs=1e-15)


def test_envelope_rejects_outside_base():
    env = envelope(1.0, 8.0, Interval(1.0, 4.0), SMParams(1.0, 1.0))
    with pytest.raises(DomainError):
        env(0.5)


def test_envelope_as_expr_matches_callable():
    env = envelope(1.0, 8.0, Interval(1.0, 4.0), SMParams(0.4, 0.9))
    f = env.as_expr()
    for x in np.linspace(1.0, 4.0, 57):
        assert evaluate(f, float(x)) == pytest.approx(env.value_at(float(x)), rel=1e-14)


def test_envelope_vectorized_matches_scalar():
    env = envelope(0.0, 0.25, Interval(0.0, 1.0), SMParams(1.0 / 3.0, 1.0))
    xs = np.linspace(0.0, 1.0, 33)
    vec = env.values(xs)
    for x, v in zip(xs, vec):
        assert env.value_at(float(x)) == pytest.approx(float(v), rel=1e-14, abs=1e-300)


def test_envelope_dominates_quintic():
    # x^5/4 on [0,1] sits below its (1/3,1)-envelope x^(1/3)/4
    check = check_envelope_dominates(parse("x^5/4"), 0.0, 0.25,
                                     Interval(0.0, 1.0), SMParams(1.0 / 3.0, 1.0))
    assert check.holds
    assert check.witness is None


def test_envelope_dominates_convex_chord():
    check = check_envelope_dominates(parse("x^2"), 1.0, 16.0,
                                     Interval(1.0, 4.0), SMParams(1.0, 1.0))
    assert check.holds
    check2 = check_envelope_dominates(parse("x^2"), 0.0, 1.0,
                                      Interval(0.0, 1.0), SMParams(1.0, 1.0))
    assert check2.holds
    check3 = check_envelope_dominates(parse("x^(3/2)"), 1.0, 8.0,
                                      Interval(1.0, 4.0), SMParams(1.0, 1.0))
    assert check3.holds


def test_envelope_dominance_fails_for_tent():
    # tent pokes above its zero chord
    check = check_envelope_dominates(parse("1/2-abs(x-1/2)"), 0.0, 0.0,
                                     Interval(0.0, 1.0), SMParams(1.0, 1.0))
    assert not check.holds
    x, fx, px = check.witness
    assert fx > px


@settings(max_examples=100, deadline=None)
@given(s=st.floats(min_value=0.05, max_value=1.0),
       m=st.floats(min_value=0.05, max_value=1.0),
       fa=st.floats(min_value=0.0, max_value=3.0),
       fb=st.floats(min_value=0.0, max_value=3.0))
def test_envelope_monotone_when_scale_positive(s, m, fa, fb):
    base = Interval(1.0, 2.0)
    env = envelope(fa, fb, base, SMParams(s, m))
    lo, hi = env.value_at(1.0), env.value_at(2.0)
    if fb - m * fa >= 0.0:
        assert lo <= hi + 1e-12
    else:
        assert lo >= hi - 1e-12
