import math

import pytest
from hypothesis import given, strategies as st

from amalgams import bounds
from amalgams.amalgam import xb_chain
from amalgams.errors import DomainError, PreconditionError

from oracles import mp_bounds

# A is 2 pi times minus the Euler characteristic of the chambers
admissible = st.tuples(st.integers(1, 40).map(lambda n: 2 * math.pi * n), st.floats(0.1, 50.0), st.floats(0.05, 5.0),
                       st.floats(0.0, 100.0)).filter(lambda t: t[1] >= t[2])


def test_reference_point_against_high_precision():
    r = bounds.stepwise_report(4 * math.pi, 10.0, 2.0, 10.0)
    ref = mp_bounds(4 * math.pi, 10.0, 2.0, 10.0)
    for key, v in ref.items():
        assert getattr(r, key) == pytest.approx(float(v), rel=1e-11), key
    assert r.entropy_upper == pytest.approx(6.39e4, rel=1e-3)


@given(admissible)
def test_oracle_agreement(t):
    A, B, sys, L = t
    r = bounds.stepwise_report(A, B, sys, L)
    ref = mp_bounds(A, B, sys, L)
    assert r.upper_stepwise_log10 == pytest.approx(float(ref["upper_stepwise_log10"]), rel=1e-10)
    assert r.upper_coarse_log10 == pytest.approx(float(ref["upper_coarse_log10"]), rel=1e-10)


@given(admissible)
def test_report_invariants(t):
    r = bounds.stepwise_report(*t)
    assert r.lambda_max >= 13
    assert r.upper_coarse_log10 >= r.upper_stepwise_log10
    for v in r.to_dict().values():
        assert math.isfinite(v) and v >= 0


@given(admissible, st.floats(0.1, 10.0))
def test_monotone_in_L(t, dL):
    A, B, sys, L = t
    assert bounds.upper_stepwise(A, B, sys, L + dL) > bounds.upper_stepwise(A, B, sys, L)
    assert bounds.upper_coarse(A, B, sys, L + dL) > bounds.upper_coarse(A, B, sys, L)


def test_betaL_linear_in_L():
    r1 = bounds.stepwise_report(10.0, 3.0, 1.0, 5.0)
    r2 = bounds.stepwise_report(10.0, 3.0, 1.0, 6.0)
    r0 = r1.r0
    coef = 12 * 3.0 * 10.0 / (math.pi * r0 ** 2) * math.cosh(r0 / 4) ** 2 * math.cosh(r0 / 2) ** 2
    assert r2.betaL_max - r1.betaL_max == pytest.approx(2 * coef, rel=1e-12)


def test_coarse_at_zero_length():
    r = bounds.stepwise_report(4 * math.pi, 3.0, 1.0, 0.0)
    assert math.isfinite(r.upper_coarse_log10)
    assert r.upper_coarse_log10 >= math.log10(r.n_max)


def test_doubling_B_increases():
    assert bounds.upper_coarse(10.0, 6.0, 1.0, 5.0) > bounds.upper_coarse(10.0, 3.0, 1.0, 5.0)
    assert bounds.entropy_upper(10.0, 6.0, 1.0) > bounds.entropy_upper(10.0, 3.0, 1.0)
    assert bounds.entropy_upper(10.0, 6.0, 0.5) > bounds.entropy_upper(10.0, 6.0, 0.9)


def test_entropy_upper_grows_like_B_log_B():
    ratios = [bounds.entropy_upper(10.0, B, 0.5) / (B * math.log(B)) for B in (1e3, 1e5, 1e7)]
    assert abs(ratios[2] - ratios[1]) < abs(ratios[1] - ratios[0])


def test_B_below_sys_rejected():
    with pytest.raises(PreconditionError, match="sys\\(X\\) ≤ B"):
        bounds.stepwise_report(12.566, 1.0, 2.0, 1.0)


def test_c_beta():
    assert bounds.c_beta(2 * math.pi ** 2, 2) == pytest.approx(1.0)
    assert bounds.c_beta(1.0, 2) == pytest.approx(0.050660, abs=1e-6)
    for ell in (0.3, 1.0, 7.0):
        for g in (2, 3, 9):
            assert bounds.c_beta(ell, g) == pytest.approx(bounds.c_beta_unit_tangent(ell, g), rel=1e-12)
    with pytest.raises(DomainError):
        bounds.c_beta(1.0, 1)


def test_longbeta():
    cb = bounds.c_beta(2 * math.pi ** 2, 2)
    v = bounds.longbeta_lower(2 * math.pi ** 2, 2, 0.5 * math.log(2) * cb, 10.0)
    assert v.value == pytest.approx(32.0, rel=1e-9)
    assert bounds.longbeta_lower(1.0, 2, 0.01, 0.0).value == 1.0
    assert "threshold" in v.note
    with pytest.raises(PreconditionError):
        bounds.longbeta_lower(1.0, 2, math.log(2) * bounds.c_beta(1.0, 2), 1.0)


def test_xb_lower():
    B = 2 * math.log(24)
    v = bounds.xb_lower(B, 2 * B + 5)
    assert v.log2 == pytest.approx(1.6967, abs=1e-4)
    assert v.value == pytest.approx(3.242, abs=1e-3)
    step = 96 * B / math.exp(B / 2)
    assert bounds.xb_lower(B, 2 * B + 5 + step).value == pytest.approx(2 * v.value)
    with pytest.raises(PreconditionError, match="2 log 24"):
        bounds.xb_lower(3.0, 20.0)
    off = bounds.xb_lower(3.0, 20.0, strict=False)
    assert not off.preconditions_met and "preconditions unmet" in off.note
    assert bounds.xb_entropy_lower(B) == pytest.approx(math.log(2) / 96 * 24 / B)


@pytest.mark.parametrize("s", [0.5, 0.01])
def test_chain_examples(s):
    rep = bounds.chain_check(s)
    assert rep.ok, rep.failures
    if s == 0.01:
        assert 2 * math.log(200) <= rep.B <= 2 * math.log(1200)


def test_chain_margins_continuous():
    grid = [0.5 * 0.999 ** i for i in range(0, 3000, 10)]
    reps = [bounds.chain_check(s) for s in grid]
    assert all(r.ok for r in reps)
    # u is continuous in s; B jumps only where k = floor(1/s) does
    for name in ("u_lower", "u_upper"):
        vals = [r.margins[name] for r in reps]
        assert max(abs(a - b) for a, b in zip(vals, vals[1:])) < 0.05
    for name in ("B_lower", "B_upper"):
        jumps = [i for i in range(len(reps) - 1)
                 if abs(reps[i].margins[name] - reps[i + 1].margins[name]) >= 0.05]
        assert all(reps[i].k != reps[i + 1].k for i in jumps)


def test_chain_rejects_short_L():
    with pytest.raises(PreconditionError):
        bounds.chain_check(0.1, L=5.0)


def test_entropy_consistency_on_xb():
    for s in (0.5, 0.2, 0.1, 0.05, 0.01):
        c = xb_chain(s)
        assert bounds.entropy_upper(4 * math.pi, c.B, s) >= bounds.xb_entropy_lower(c.B)


@given(st.floats(-5.0, 2e6))
def test_log10_rendering_round_trip(lg):
    assert bounds.parse_log10(bounds.format_log10(lg)) == pytest.approx(lg, rel=1e-9, abs=1e-9)


def test_format_int():
    assert bounds.format_int(2 ** 21) == "2097152"
    big = 2 ** 200
    assert "e+" in bounds.format_int(big)
    assert bounds.parse_log10(bounds.format_int(big)) == pytest.approx(200 * math.log10(2), rel=1e-9)
