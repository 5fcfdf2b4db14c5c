"""Branch evaluation, round trips, and domain policing for lambert_w."""

import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegaw import DomainError, lambert_w, lambert_w_scaled, w_times_exp_w
from oracles import W0_AT_1, W0_AT_2, WM1_AT_MINUS_1, close

_BP = -math.exp(-1.0)  # the float branch point -1/e


def test_frozen_values():
    assert lambert_w(1.0) == pytest.approx(W0_AT_1, abs=1e-15)
    assert lambert_w(2.0) == pytest.approx(W0_AT_2, abs=1e-15)
    w = lambert_w(complex(-1.0, 0.0), -1)
    assert abs(w - WM1_AT_MINUS_1) < 1e-14


def test_branch_point_is_exact():
    # The float nearest -1/e maps to exactly -1 on both real branches.
    assert lambert_w(_BP, 0) == -1.0
    assert lambert_w(_BP, -1) == -1.0


def test_trivial_points():
    assert lambert_w(0.0, 0) == 0.0
    assert lambert_w(math.e, 0) == pytest.approx(1.0, abs=1e-15)


@given(st.floats(min_value=_BP + 1e-12, max_value=1e3))
def test_branch0_round_trip(z):
    w = lambert_w(z, 0)
    assert w >= -1.0
    assert abs(w_times_exp_w(w) - z) <= 1e-14 * max(1.0, abs(z))


@given(st.floats(min_value=_BP + 1e-12, max_value=-1e-12))
def test_branch_minus1_round_trip(z):
    w = lambert_w(z, -1)
    assert w <= -1.0
    assert abs(w_times_exp_w(w) - z) <= 1e-14 * max(1.0, abs(z))


@given(
    st.complex_numbers(min_magnitude=1e-6, max_magnitude=1e3,
                       allow_nan=False, allow_infinity=False),
    st.integers(min_value=-3, max_value=3),
)
@settings(max_examples=200)
def test_complex_round_trip_and_strip(z, branch):
    w = lambert_w(z, branch)
    assert abs(w_times_exp_w(w) - z) <= 1e-13 * max(1.0, abs(z))
    # Branch k's image stays within 2*pi of the line Im w = 2*pi*k
    # (the +-1 branches own lobes that reach the real axis).
    assert abs(w.imag - 2.0 * math.pi * branch) < 2.0 * math.pi + 1e-9


def test_against_mpmath_referee():
    mpmath.mp.dps = 40
    pts = [complex(0.5, 0.0), complex(-0.2, 0.1), complex(2.0, -3.0),
           complex(-4.0, 0.5), complex(0.1, 7.0)]
    for k in (-3, -2, -1, 0, 1, 2, 3):
        for z in pts:
            want = complex(mpmath.lambertw(z, k))
            got = complex(lambert_w(z, k))
            assert abs(got - want) <= 1e-13 * max(1.0, abs(want))


def test_real_branches_against_mpmath():
    mpmath.mp.dps = 40
    for z in (-0.36, -0.2, -1e-3, 1e-3, 0.5, 3.0, 40.0, 900.0):
        want = float(mpmath.lambertw(z, 0))
        assert close(lambert_w(z, 0), want, 1e-14)
    for z in (-0.36, -0.2, -0.05, -1e-4):
        want = float(mpmath.lambertw(z, -1))
        assert close(lambert_w(z, -1), want, 1e-14)


def test_domain_errors():
    with pytest.raises(DomainError):
        lambert_w(-1.0, 0)  # left of the branch point on the real line
    with pytest.raises(DomainError):
        lambert_w(-1.0, -1)  # branch -1 real domain is [-1/e, 0)
    with pytest.raises(DomainError):
        lambert_w(0.5, -1)  # positive reals are branch-0 territory
    with pytest.raises(DomainError):
        lambert_w(0.0, -1)  # W_{-1} diverges at 0


def test_real_input_on_complex_branch_promotes():
    w = lambert_w(1.0, 1)
    assert isinstance(w, complex)
    assert abs(w_times_exp_w(w) - 1.0) < 1e-13


def test_cut_values_continue_from_above():
    # On (-inf, -1/e) the real-line value is the limit from above the cut.
    for z in (-0.5, -1.0, -3.0):
        on_cut = lambert_w(complex(z, 0.0), -1)
        above = lambert_w(complex(z, 1e-13), -1)
        assert abs(on_cut - above) < 1e-9


def test_conjugate_symmetry():
    z = complex(-2.0, 0.7)
    assert lambert_w(z.conjugate(), 1) == pytest.approx(
        lambert_w(z, -1).conjugate(), abs=1e-13)


@given(st.floats(min_value=1e-3, max_value=0.999))
def test_scaled_identity_side_branch0_is_exact(t):
    # W0(-t e^{-t}) = -t exactly for t <= 1: no round trip through t e^{-t}.
    assert lambert_w_scaled(t, -1, 0) == -t


@given(st.floats(min_value=1.001, max_value=50.0))
def test_scaled_identity_side_branch_minus1_is_exact(t):
    assert lambert_w_scaled(t, -1, -1) == -t


@given(st.floats(min_value=1e-3, max_value=30.0))
def test_scaled_nontrivial_sides_round_trip(t):
    zm = -t * math.exp(-t)
    zp = t * math.exp(-t)
    other = lambert_w_scaled(t, -1, -1 if t < 1.0 else 0)
    assert abs(w_times_exp_w(other) - zm) <= 1e-13 * max(1.0, abs(zm))
    plus = lambert_w_scaled(t, 1, 0)
    assert abs(w_times_exp_w(plus) - zp) <= 1e-13 * max(1.0, abs(zp))


def test_w_times_exp_w_complex():
    w = complex(0.3, -2.0)
    assert w_times_exp_w(w) == w * cmath.exp(w)
