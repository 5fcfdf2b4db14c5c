"""Lambert W function on real branches 0 and -1 and on arbitrary
integer branches for complex arguments.

The defining relation is w*exp(w) = z.  Branch 0 is real on
[-1/e, inf), branch -1 is real on [-1/e, 0); every other branch is
complex-valued.  Arguments on the cut (-inf, -1/e] with zero imaginary
part are treated as approached from above, so values there agree with
the limit from the upper half plane.

Evaluation strategy: a branch-specific starting guess (series around
the branch point -1/e, log-log asymptote for large arguments) followed
by Newton iteration on the logarithmic form for the real branches and
Halley iteration on w*exp(w) - z for complex ones.  Iterations are
capped; hitting the cap raises ConvergenceError instead of silently
returning an inaccurate value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .config import TOL, Tolerances
from .errors import ConvergenceError, DomainError

__all__ = [
    "BranchIndex",
    "BranchedPoint",
    "lambert_w",
    "lambert_w_scaled",
    "w_times_exp_w",
]

# Integer branch label: 0 = principal, -1 = lower real branch, other
# integers select the complex branches.
BranchIndex = int

_E = math.e
_INV_E = math.exp(-1.0)
_TWO_PI = 2.0 * math.pi
# relative step size at which Newton/Halley is declared converged
_STEP_TOL = 4.0 * 2.220446049250313e-16


@dataclass(frozen=True)
class BranchedPoint:
    """A complex argument paired with the W branch it should be read on.

    For real use the imaginary part of ``z`` is exactly zero.
    """

    z: complex
    branch: BranchIndex = 0


def w_times_exp_w(w):
    """Return w*exp(w), the inverse map of lambert_w.

    Used everywhere as the residual certificate: a claimed value w for
    lambert_w(z, k) is accepted when w_times_exp_w(w) reproduces z.
    """
    if isinstance(w, complex):
        return w * cmath.exp(w)
    w = float(w)
    return w * math.exp(w)


def _series_branch_point(p):
    """Series for W around the branch point: w = -1 + p - p^2/3 + ...

    with p = sqrt(2(e*z + 1)).  Works for real and complex p; branch
    selection happens through the sign/sector of p.
    """
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (
        -43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))))


# The logarithmic residual g = w + log(+-w) - c can only be computed
# to a few ulps of its largest term, so near the branch point (where
# the Newton step amplifies that noise by |w/(w+1)|) a pure step-size
# stop limit-cycles.  Accepting |g| at its rounding floor is exact to
# the intrinsic conditioning of W there.
_EPS = 2.220446049250313e-16


def _newton_branch0_positive(z, cap):
    # solve w + log(w) = log(z) on (0, inf); H is increasing and
    # concave, so Newton from either side settles monotonically after
    # at most one step and cannot leave the domain from these seeds.
    c = math.log(z)
    gfloor = 4.0 * _EPS * (1.0 + abs(c))
    if z > _E:
        w = c - math.log(c)
    else:
        w = math.log1p(z)
    for _ in range(cap):
        g = w + math.log(w) - c
        step = g * w / (w + 1.0)
        w -= step
        if abs(g) <= gfloor or abs(step) <= _STEP_TOL * (1.0 + abs(w)):
            if z > 8.0:
                # the log form carries O(eps*|log z|) noise; one direct
                # Newton step on w e^w - z restores full precision for
                # large arguments (no overflow: w e^w stays near z)
                ew = math.exp(w)
                w -= (w * ew - z) / (ew * (w + 1.0))
            return w
    raise ConvergenceError(
        f"lambert_w(z={z!r}, branch=0) did not converge in {cap} iterations")


def _newton_branch0_negative(z, p, cap):
    # solve w + log(-w) = log(-z) on (-1, 0); G is decreasing and
    # concave there.  Seed right of the root keeps iterates in domain;
    # the clamp guards the one permitted overshoot from the left side.
    c = math.log(-z)
    gfloor = 4.0 * _EPS * (1.0 + abs(c))
    w = _series_branch_point(p) if p < 0.5 else z * (1.0 - z)
    if w >= 0.0 or w <= -1.0:
        w = -0.5
    for _ in range(cap):
        g = w + math.log(-w) - c
        step = g * w / (w + 1.0)
        wn = w - step
        if wn >= 0.0:
            wn = 0.5 * w
        w = wn
        if abs(g) <= gfloor or abs(step) <= _STEP_TOL * (1.0 + abs(w)):
            return w
    raise ConvergenceError(
        f"lambert_w(z={z!r}, branch=0) did not converge in {cap} iterations")


def _newton_branch_m1(z, p, cap):
    # solve w + log(-w) = log(-z) on (-inf, -1); G is increasing and
    # concave, giving monotone Newton convergence from the left.
    c = math.log(-z)
    gfloor = 4.0 * _EPS * (1.0 + abs(c))
    if p < 0.5:
        w = _series_branch_point(-p)
    else:
        w = c - math.log(-c)
    if w >= -1.0:
        w = -1.0 - p
    for _ in range(cap):
        g = w + math.log(-w) - c
        step = g * w / (w + 1.0)
        wn = w - step
        if wn >= -1.0:
            wn = 0.5 * (w - 1.0)
        w = wn
        if abs(g) <= gfloor or abs(step) <= _STEP_TOL * (1.0 + abs(w)):
            return w
    raise ConvergenceError(
        f"lambert_w(z={z!r}, branch=-1) did not converge in {cap} iterations")


def _real_branch0(z, tol):
    s = _E * z + 1.0
    if s < 0.0:
        raise DomainError(
            f"lambert_w branch 0 needs z >= -1/e; got z={z!r}")
    if s == 0.0:
        return -1.0
    if abs(z) < 1e-300:
        # series w = z(1 - z + ...) is exact to double precision here
        # and avoids underflow in the logarithmic form
        return z * (1.0 - z)
    if z < 0.0:
        p = math.sqrt(2.0 * s)
        if p <= tol.series_switch:
            return _series_branch_point(p)
        return _newton_branch0_negative(z, p, tol.w_maxiter)
    return _newton_branch0_positive(z, tol.w_maxiter)


def _real_branch_m1(z, tol):
    if z >= 0.0:
        raise DomainError(
            f"lambert_w branch -1 needs z in [-1/e, 0); got z={z!r}")
    s = _E * z + 1.0
    if s < 0.0:
        raise DomainError(
            f"lambert_w branch -1 needs z >= -1/e; got z={z!r}")
    if s == 0.0:
        return -1.0
    p = math.sqrt(2.0 * s)
    if p <= tol.series_switch:
        return _series_branch_point(-p)
    return _newton_branch_m1(z, p, tol.w_maxiter)


def _halley(z, w, cap):
    # Halley iteration on f(w) = w e^w - z; None signals divergence so
    # the caller can retry from the next seed.  |f| at its rounding
    # floor counts as converged (same noise argument as the real path).
    for _ in range(cap):
        ew = cmath.exp(w)
        f = w * ew - z
        if abs(f) <= 4.0 * _EPS * (abs(w * ew) + abs(z)):
            return w
        denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        if denom == 0:
            return None
        step = f / denom
        w -= step
        if abs(step) <= _STEP_TOL * (1.0 + abs(w)):
            return w
    return None


def _branch_of(w, z, k):
    # Exact unwinding test: w + Log(w) = Log(z) + 2*pi*i*k holds on
    # branch k (the real-line exception for k=-1 never reaches here,
    # that case is delegated to the real evaluator).
    lhs = w + cmath.log(w)
    rhs = cmath.log(z)
    return round((lhs - rhs).imag / _TWO_PI)


def _complex_seeds(z, k):
    seeds = []
    d = 2.0 * (_E * z + 1.0)
    p = cmath.sqrt(d)
    near_point = abs(d) < 0.4
    if k == 0:
        if near_point:
            seeds.append(_series_branch_point(p))
        if abs(z) <= 0.5:
            seeds.append(z * (1.0 + z * (0.5)) / (1.0 + 1.5 * z))
        lk = cmath.log(z) if z != 0 else 0.0
        if abs(lk) > 0.5:
            seeds.append(lk - cmath.log(lk))
        seeds.append(z * (1.0 - z))
    else:
        if near_point and k in (1, -1):
            seeds.append(_series_branch_point(-p))
            seeds.append(_series_branch_point(p * cmath.exp(2j * math.pi / 3.0)))
            seeds.append(_series_branch_point(p * cmath.exp(-2j * math.pi / 3.0)))
        lk = cmath.log(z) + _TWO_PI * 1j * k
        seeds.append(lk - cmath.log(lk))
        # a second asymptotic refinement helps far branches
        seeds.append(lk - cmath.log(lk - cmath.log(lk)))
    return seeds


def _complex_w(z, k, tol):
    if z == 0:
        if k == 0:
            return 0j
        raise DomainError(
            f"lambert_w branch {k} has a logarithmic singularity at z=0")
    best = None
    for w0 in _complex_seeds(z, k):
        if w0 == 0:
            continue
        w = _halley(z, w0, tol.w_maxiter)
        if w is None or w == 0:
            continue
        resid = abs(w * cmath.exp(w) - z)
        if resid > 1e-10 * max(1.0, abs(z)):
            continue
        if _branch_of(w, z, k) == k:
            return w
        best = best if best is not None else w
    raise ConvergenceError(
        f"lambert_w(z={z!r}, branch={k}) found no converged iterate on "
        f"the requested branch (nearest miss: {best!r})")


def lambert_w(z, branch: BranchIndex = 0, tol: Tolerances = TOL):
    """Evaluate the Lambert W function W(branch, z).

    Parameters
    ----------
    z : float or complex
        Argument.  Real input with a real branch returns a float;
        anything else returns a complex number.
    branch : int
        Branch label k.  k=0 needs real z >= -1/e, k=-1 needs real
        z in [-1/e, 0); complex z is accepted on any branch.
    tol : Tolerances
        Iteration controls; defaults to the package-wide record.

    Returns
    -------
    float or complex
        w with w*exp(w) = z on the requested branch.

    Raises
    ------
    DomainError
        Real-branch precondition violated, or z=0 off the principal
        branch.
    ConvergenceError
        The iteration cap was reached (an implementation bug, not a
        user error).
    """
    if isinstance(z, complex):
        if z.imag == 0.0:
            zr = z.real
            if branch == 0 and _E * zr + 1.0 >= 0.0:
                return complex(_real_branch0(zr, tol))
            if branch == -1 and zr < 0.0 and _E * zr + 1.0 >= 0.0:
                return complex(_real_branch_m1(zr, tol))
        return _complex_w(z, branch, tol)
    z = float(z)
    if branch == 0:
        return _real_branch0(z, tol)
    if branch == -1:
        return _real_branch_m1(z, tol)
    return _complex_w(complex(z), branch, tol)


def _conjugate_t(t, target_side, cap):
    # solve log(s) - s = log(t) - t for the companion s of t under
    # s*exp(-s), on the other side of 1.  Stable in s-space: near the
    # double point (s close to t close to 1) psi uses log1p on the gap
    # so accuracy does not degrade; away from it the direct difference
    # of log(.)-. terms avoids the log1p cancellation floor.  Either
    # way psi is accepted at its rounding floor.
    h = t - 1.0
    s = 1.0 - h * (1.0 - (2.0 / 3.0) * h * (1.0 - (2.0 / 3.0) * h))
    if target_side < 0:
        lo, hi = 0.0, 1.0
        if h > 0.5:
            zz = t * math.exp(-t)
            if zz == 0.0:
                # companion lies below the subnormal range; t*e^{-t}
                # itself is the correctly rounded answer (zero)
                return 0.0
            s = zz * (1.0 + zz)
        if s <= lo or s >= hi:
            s = 0.5
    else:
        beta = t - math.log(t)
        s = max(s, beta + math.log(beta)) if beta > 1.2 else max(s, 1.0 + abs(h))
        lo, hi = 1.0, math.inf
    phi_t = math.log(t) - t
    for _ in range(cap):
        gap = s - t
        if abs(gap) <= 0.25 * (s + t):
            psi = math.log1p(gap / t) - gap
            floor = 4.0 * _EPS * abs(gap)
        else:
            psi = (math.log(s) - s) - phi_t
            floor = 4.0 * _EPS * (abs(math.log(s)) + s + abs(phi_t) + t)
        dpsi = (1.0 - s) / s
        if abs(psi) <= floor or dpsi == 0.0:
            return s
        step = psi / dpsi
        sn = s - step
        if not (lo < sn < hi):
            sn = 0.5 * (s + (lo if step > 0 else min(hi, 2.0 * s + 1.0)))
        s = sn
        if abs(step) <= _STEP_TOL * (1.0 + abs(s)):
            return s
    raise ConvergenceError(f"companion point of t={t!r} did not converge")


def lambert_w_scaled(t, sign: int = -1, branch: BranchIndex = 0,
                     tol: Tolerances = TOL):
    """Evaluate W(branch, sign * t * exp(-t)) without forming the product.

    For sign=-1 this is the workhorse behind closed forms of the shape
    d = q + W(-qR e^{-qR})/R: the identity W0(-t e^{-t}) = -t (t <= 1)
    and its branch -1 mirror (t >= 1) are returned exactly, and the
    non-identity side is solved in t-space where the problem is well
    conditioned even at t = 1 (where forming t*exp(-t) first would lose
    half the digits to the branch-point singularity).

    Parameters
    ----------
    t : float
        Scale parameter, t > 0.
    sign : {+1, -1}
        Sign of the argument sign * t * exp(-t).
    branch : {0, -1}
        W branch; sign=+1 allows only branch 0 (positive argument).

    Returns
    -------
    float
        W(branch, sign*t*exp(-t)).
    """
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"lambert_w_scaled needs t > 0; got t={t!r}")
    if sign not in (-1, 1):
        raise DomainError(f"sign must be +1 or -1; got {sign!r}")
    if sign == 1:
        if branch != 0:
            raise DomainError(
                "positive argument t*e^{-t} lives on branch 0 only")
        return lambert_w(t * math.exp(-t), 0, tol)
    if branch == 0:
        if t <= 1.0:
            return -t
        return -_conjugate_t(t, -1, tol.w_maxiter)
    if branch == -1:
        if t >= 1.0:
            return -t
        return -_conjugate_t(t, +1, tol.w_maxiter)
    raise DomainError(
        f"argument -t*e^{{-t}} is real only on branches 0 and -1; got {branch!r}")
