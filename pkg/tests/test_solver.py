"""Root isolation, certification, double roots, and pole policing."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegaw import (
    DomainError,
    Polynomial,
    PoleCollisionError,
    SolverConfig,
    TranscendentalEquation,
    default_interval,
    residual,
    solve_all,
)
from oracles import (
    DEMKOV_LAMBDA_R1,
    DEMKOV_X_R1,
    GERADE_Q1_R1,
    QUANTUM_L2_Q1_R1,
    RATIONAL_X,
)

ONE = Polynomial((1.0,))


def eq_quadratic(lam):
    # e^{-2x} = (x-1)(x-lam)/lam, the canonical two-well shape at q=1.
    return TranscendentalEquation(
        sign=-1, k=2.0, P=Polynomial.from_roots((1.0, lam)).scale(1.0 / lam), Q=ONE)


def test_doc_instance_squared():
    eq = TranscendentalEquation(
        sign=-1, k=2.0, P=Polynomial((1.0, -2.0, 1.0)), Q=ONE)
    certs = solve_all(eq, (-1.0, 3.0))
    assert [c.x for c in certs] == pytest.approx([0.0, GERADE_Q1_R1], abs=1e-12)
    assert certs[0].multiplicity_hint == 2  # tangency at the continuum edge
    assert certs[1].multiplicity_hint == 1
    assert all(c.residual <= 1e-10 for c in certs)


def test_narrative_rational_instance_has_no_root():
    # e^{-2x} = (x-1)/(x-3) keeps e^{-2x}(x-3) - (x-1) strictly negative
    # on [0, 2.9]; the solver must report nothing rather than invent one.
    eq = TranscendentalEquation(
        sign=-1, k=2.0, P=Polynomial((-1.0, 1.0)), Q=Polynomial((-3.0, 1.0)))
    assert solve_all(eq, (0.0, 2.9)) == []


def test_three_roots_lam2():
    certs = solve_all(eq_quadratic(2.0), (-1.0, 4.0))
    assert [c.x for c in certs] == pytest.approx(list(QUANTUM_L2_Q1_R1), abs=1e-11)


def test_rational_equation_all_roots():
    # e^{-2x} = (x-1)/(x+2): one root right of the pole, one left of it.
    eq = TranscendentalEquation(
        sign=-1, k=2.0, P=Polynomial((-1.0, 1.0)), Q=Polynomial((2.0, 1.0)))
    certs = solve_all(eq, (-4.0, 3.0))
    assert len(certs) == 2
    assert certs[1].x == pytest.approx(RATIONAL_X, abs=1e-12)
    mpmath.mp.dps = 40
    want = float(mpmath.findroot(
        lambda x: mpmath.exp(-2 * x) * (x + 2) - (x - 1), certs[0].x))
    assert certs[0].x == pytest.approx(want, abs=1e-12)


def test_tangency_reports_double_root():
    # e^{-2x} = e^{-2}(x-2)^2 is tangent at x=1 exactly (substituting
    # u = x-2 gives u e^u = -1/e, the branch point) and crosses once
    # more at x = 2 + W_0(1/e).
    a = math.exp(-2.0)
    eq = TranscendentalEquation(
        sign=-1, k=2.0, P=Polynomial((4.0 * a, -4.0 * a, a)), Q=ONE)
    certs = solve_all(eq, (-0.5, 3.0))
    assert len(certs) == 2
    assert certs[0].multiplicity_hint == 2
    assert certs[0].x == pytest.approx(1.0, abs=1e-7)
    assert certs[1].multiplicity_hint == 1
    assert certs[1].x == pytest.approx(GERADE_Q1_R1 + 1.0, abs=1e-12)


def test_demkov_instance_crosses_transversally():
    # at the coupling where the separated factor curves merge, the full
    # equation still crosses zero simply at x = 2*lambda; the
    # degeneracy lives in the factorization, not in the root itself
    certs = solve_all(eq_quadratic(DEMKOV_LAMBDA_R1), (0.5, 3.0))
    assert len(certs) == 1
    assert certs[0].x == pytest.approx(DEMKOV_X_R1, abs=1e-12)
    assert certs[0].multiplicity_hint == 1


def test_near_double_pair_is_split():
    # e^{-40x} = (x-1)^2: the trough at x=1 pierces zero by ~2e-9 on
    # each side.  The exact local model must resolve both simple roots.
    eq = TranscendentalEquation(
        sign=-1, k=40.0, P=Polynomial((1.0, -2.0, 1.0)), Q=ONE)
    certs = solve_all(eq, (0.5, 1.5))
    assert len(certs) == 2
    mpmath.mp.dps = 40
    lo = 1.0 + float(mpmath.lambertw(-20 * mpmath.exp(-20), 0)) / 20.0
    hi = 1.0 + float(mpmath.lambertw(20 * mpmath.exp(-20), 0)) / 20.0
    assert certs[0].x == pytest.approx(lo, abs=1e-13)
    assert certs[1].x == pytest.approx(hi, abs=1e-13)
    # at 4e-9 separation the derivative at each root is below the
    # multiplicity classifier's resolution, so hint 2 is the honest call
    assert all(c.multiplicity_hint in (1, 2) for c in certs)


def test_pole_collision_is_an_error():
    # P and Q share the factor (x-1) and the leftover equation puts a
    # certified root exactly on the pole.
    eq = TranscendentalEquation(
        sign=-1, k=1.0,
        P=Polynomial((-1.0, 1.0)).scale(math.exp(-1.0)),
        Q=Polynomial((-1.0, 1.0)))
    with pytest.raises(PoleCollisionError):
        solve_all(eq, (0.0, 2.0))


def test_validation():
    with pytest.raises(DomainError):
        TranscendentalEquation(sign=2, k=1.0, P=ONE, Q=ONE)
    with pytest.raises(DomainError):
        TranscendentalEquation(sign=-1, k=0.0, P=ONE, Q=ONE)
    with pytest.raises(DomainError):
        TranscendentalEquation(sign=-1, k=1.0, P=Polynomial(()), Q=ONE)
    eq = TranscendentalEquation(sign=-1, k=1.0, P=ONE, Q=ONE)
    with pytest.raises(DomainError):
        solve_all(eq, (2.0, -2.0))


def test_default_interval_contains_action():
    eq = eq_quadratic(2.0)
    lo, hi = default_interval(eq)
    assert lo < 0.0 < 2.1 < hi


def test_residual_signature():
    eq = eq_quadratic(2.0)
    assert residual(eq, QUANTUM_L2_Q1_R1[2]) <= 1e-15
    assert residual(eq, 1.5) > 1e-3


@given(
    st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=1, max_size=3),
    st.floats(min_value=0.5, max_value=4.0),
)
@settings(max_examples=60, deadline=None)
def test_found_roots_are_certified_and_complete(roots, k):
    eq = TranscendentalEquation(
        sign=-1, k=k, P=Polynomial.from_roots(tuple(roots)), Q=ONE)
    lo, hi = -3.0, 3.0
    certs = solve_all(eq, (lo, hi))
    xs = [c.x for c in certs]
    assert xs == sorted(xs)
    for c in certs:
        scale = max(1.0, abs(math.exp(-k * c.x)), abs(eq.P(c.x)))
        assert residual(eq, c.x) <= 1e-10 * scale
    # Completeness: every sign change of F on a fine grid is matched.
    n = 2000
    f_prev = residual_signed(eq, lo)
    x_prev = lo
    for i in range(1, n + 1):
        x = lo + (hi - lo) * i / n
        f = residual_signed(eq, x)
        if f_prev * f < 0.0:
            assert any(x_prev - 1e-9 <= c.x <= x + 1e-9 for c in certs)
        x_prev, f_prev = x, f


def residual_signed(eq, x):
    return math.exp(eq.sign * eq.k * x) * eq.Q(x) - eq.P(x)
