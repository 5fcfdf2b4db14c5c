"""Certified real-root solving for exponential-rational equations.

Equations take the form e^{sign*k*x} = P(x)/Q(x).  The solver works on
F(x) = e^{sign*k*x}*Q(x) - P(x): a uniform scan locates sign changes
and interior minima of |F|, safeguarded Newton refines each candidate,
and every root is certified a posteriori by re-evaluating the residual
|e^{sign*k*x}*Q(x) - P(x)| against a local magnitude scale.  A minimum
of |F| that stays on one side of zero is kept as a double-root
candidate with multiplicity_hint=2; when an exact local re-expansion
shows the trough actually pierces zero, the two straddling simple
roots are resolved instead, even when their separation lies below the
direct-evaluation noise floor.  Certified roots that coincide with
real zeros of Q raise PoleCollisionError instead of being reported as
solutions.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace

from .config import TOL
from .errors import DomainError, PoleCollisionError
from .poly import Polynomial

__all__ = [
    "TranscendentalEquation",
    "RootCertificate",
    "SolverConfig",
    "solve_all",
    "residual",
    "default_interval",
]

# saturation keeps scan arithmetic finite; certification is never saturated
_EXP_LO, _EXP_HI = -745.0, 700.0
_HINT_TOL = 1e-7
_MACHINE_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class TranscendentalEquation:
    """The equation e^{sign*k*x} * Q(x) = P(x) with sign in {-1,+1}, k>0."""

    sign: int
    k: float
    P: Polynomial
    Q: Polynomial

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise DomainError(f"sign must be -1 or +1, got {self.sign!r}")
        k = float(self.k)
        if not (k > 0.0 and math.isfinite(k)):
            raise DomainError(f"rate k must be finite and positive, got {self.k!r}")
        object.__setattr__(self, "k", k)
        if self.P.degree < 0:
            raise DomainError("P must not be the zero polynomial")
        if self.Q.degree < 0:
            raise DomainError("Q must not be the zero polynomial")


@dataclass(frozen=True)
class RootCertificate:
    """A located root with its re-evaluated residual and provenance."""

    x: float
    residual: float
    multiplicity_hint: int = 1
    bracket: tuple[float, float] | None = None
    flags: tuple[str, ...] = ()
    energy: float | None = None


@dataclass(frozen=True)
class SolverConfig:
    """Scan density and acceptance thresholds for solve_all."""

    n_grid: int | None = None
    certify_tol: float = TOL.root_certify
    xtol: float = TOL.root_xtol
    maxiter: int = 60
    pole_tol: float = TOL.pole_guard


def _sat_exp(t: float) -> float:
    return math.exp(min(max(t, _EXP_LO), _EXP_HI))


def residual(eq: TranscendentalEquation, x: float) -> float:
    """|e^{sign*k*x} * Q(x) - P(x)| evaluated without saturation."""
    x = float(x)
    t = eq.sign * eq.k * x
    qv = eq.Q(x)
    pv = eq.P(x)
    if t > _EXP_HI:
        return abs(pv) if qv == 0.0 else math.inf
    return abs(math.exp(t) * qv - pv)


def default_interval(eq: TranscendentalEquation) -> tuple[float, float]:
    """Scan window from the root bounds of P and Q plus a few decay lengths."""
    b = max(eq.P.cauchy_bound(), eq.Q.cauchy_bound(), 1.0)
    pad = 5.0 / eq.k
    return (-b - pad, b + pad)


def _newton_bracket(f, df, a, b, fa, fb, xtol, maxiter):
    """Newton iteration on f confined to a sign-change bracket [a, b]."""
    x = 0.5 * (a + b)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        d = df(x)
        step = fx / d if d != 0.0 else math.inf
        # convergence test before bracket bookkeeping: a point pinned to
        # an endpoint must still be returnable, not bisected away from
        if math.isfinite(step) and abs(step) <= xtol * (1.0 + abs(x)):
            xn = x - step
            return xn if a <= xn <= b else x
        if (fx < 0.0) == (fa < 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        xn = x - step
        if not math.isfinite(xn) or not (a < xn < b):
            xn = 0.5 * (a + b)
        if b - a <= xtol * (1.0 + abs(xn)):
            return xn
        x = xn
    return x


def _scan_candidates(f, df, ddf, lo, hi, n, xtol, maxiter, local_model, fuzzy):
    """Candidate roots of f on [lo, hi]: exact grid zeros, sign-change
    refinements, and stationary points inside sign-free |f| minima."""
    h = (hi - lo) / n
    xs = [lo + h * i for i in range(n)] + [hi]
    fs = [f(x) for x in xs]
    out = []
    for i, fv in enumerate(fs):
        if fv == 0.0:
            out.append((xs[i], (xs[max(i - 1, 0)], xs[min(i + 1, n)])))
    for i in range(n):
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0 or fb == 0.0:
            continue
        if (fa < 0.0) != (fb < 0.0):
            x = _newton_bracket(f, df, xs[i], xs[i + 1], fa, fb, xtol, maxiter)
            if fuzzy(x):
                # near a root cluster the direct evaluation sits at its
                # cancellation noise floor and Newton stalls short of
                # the crossing; redo the refinement on the exactly
                # re-expanded model
                fl, dfl, err0 = local_model(x)
                ta, tb = xs[i] - x, xs[i + 1] - x
                va, vb = fl(ta), fl(tb)
                if va == 0.0:
                    x = xs[i]
                elif vb == 0.0:
                    x = xs[i + 1]
                elif (va < 0.0) != (vb < 0.0):
                    x += _newton_bracket(fl, dfl, ta, tb, va, vb, xtol, maxiter)
                elif abs(fl(0.0)) > err0:
                    # the model is decisive: the grid sign change was
                    # evaluation noise, not a crossing
                    continue
            out.append((x, (xs[i], xs[i + 1])))
    # a zero-touching minimum has f' crossing zero without f doing so
    for i in range(1, n):
        trio = fs[i - 1], fs[i], fs[i + 1]
        if any(v == 0.0 for v in trio):
            continue
        if (trio[0] < 0.0) != (trio[1] < 0.0) or (trio[1] < 0.0) != (trio[2] < 0.0):
            continue
        if abs(trio[1]) < abs(trio[0]) and abs(trio[1]) <= abs(trio[2]):
            a, b = xs[i - 1], xs[i + 1]
            ga, gb = df(a), df(b)
            if ga == 0.0:
                x = a
            elif gb == 0.0:
                x = b
            elif (ga < 0.0) != (gb < 0.0):
                x = _newton_bracket(df, ddf, a, b, ga, gb, xtol, maxiter)
            else:
                continue
            # decide with a locally re-expanded model: direct evaluation
            # noise near a root cluster swamps the true trough sign
            fl, dfl, err0 = local_model(x)
            f0 = fl(0.0)
            if f0 != 0.0 and abs(f0) > err0 and (f0 < 0.0) != (trio[1] < 0.0):
                # the trough pierces zero: two simple roots straddle x
                ta, tb = a - x, b - x
                t1 = _newton_bracket(fl, dfl, ta, 0.0, fl(ta), f0, xtol, maxiter)
                t2 = _newton_bracket(fl, dfl, 0.0, tb, f0, fl(tb), xtol, maxiter)
                out.append((x + t1, (a, x)))
                out.append((x + t2, (x, b)))
            else:
                out.append((x, (a, b)))
    return out


def _dedupe(certs: list[RootCertificate], xtol: float) -> list[RootCertificate]:
    certs = sorted(certs, key=lambda c: c.x)
    out: list[RootCertificate] = []
    for c in certs:
        if out and abs(c.x - out[-1].x) <= max(4.0 * xtol * (1.0 + abs(c.x)), 1e-12):
            prev = out[-1]
            best = c if c.residual < prev.residual else prev
            hint = max(c.multiplicity_hint, prev.multiplicity_hint)
            out[-1] = replace(best, multiplicity_hint=hint)
        else:
            out.append(c)
    return out


def solve_all(eq: TranscendentalEquation,
              interval: tuple[float, float] | None = None,
              config: SolverConfig = SolverConfig()) -> list[RootCertificate]:
    """All certified real roots of e^{sign*k*x} Q(x) = P(x) on the interval.

    Returns certificates sorted by x.  Every reported root satisfies
    residual(eq, x) <= certify_tol * max(1, |e^{skx}Q|, |P|); candidates
    that fail that test are dropped, so an empty list is an honest
    "no roots found", not a failure.  Raises PoleCollisionError if a
    certified root lies within pole_tol of a real zero of Q.
    """
    if interval is None:
        interval = default_interval(eq)
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"interval must be finite with lo < hi, got {interval!r}")
    n = config.n_grid or max(512, int(4.0 * (hi - lo) * max(eq.k, 1.0)))

    sk = eq.sign * eq.k
    Qp = eq.Q.derivative()
    Qpp = Qp.derivative()
    Pp = eq.P.derivative()
    Ppp = Pp.derivative()

    def f(x):
        e = _sat_exp(sk * x)
        a = e * eq.Q(x)
        b = eq.P(x)
        v = a - b
        if math.isnan(v):
            v = math.copysign(1e308, a) if math.isinf(a) else -math.copysign(1e308, b)
        elif math.isinf(v):
            v = math.copysign(1e308, v)
        return v

    def df(x):
        e = _sat_exp(sk * x)
        return e * (sk * eq.Q(x) + Qp(x)) - Pp(x)

    def ddf(x):
        e = _sat_exp(sk * x)
        return e * (sk * sk * eq.Q(x) + 2.0 * sk * Qp(x) + Qpp(x)) - Ppp(x)

    def hint(x):
        e = _sat_exp(sk * x)
        s1 = max(1.0, abs(e * sk * eq.Q(x)), abs(e * Qp(x)), abs(Pp(x)))
        if abs(df(x)) > _HINT_TOL * s1:
            return 1
        s2 = max(1.0, abs(e * sk * sk * eq.Q(x)), abs(e * Qp(x) * sk), abs(Ppp(x)))
        if abs(ddf(x)) > _HINT_TOL * s2:
            return 2
        return 3

    def local_model(center):
        # exact Taylor shift of P and Q: accurate at the local scale,
        # where direct Horner evaluation is pure cancellation noise
        e0 = _sat_exp(sk * center)
        ps = eq.P.shifted(center)
        qs = eq.Q.shifted(center)
        pps = ps.derivative()
        qps = qs.derivative()

        def fl(t):
            return e0 * math.exp(sk * t) * qs(t) - ps(t)

        def dfl(t):
            e = e0 * math.exp(sk * t)
            return e * (sk * qs(t) + qps(t)) - pps(t)

        err0 = 8.0 * _MACHINE_EPS * (abs(e0 * qs(0.0)) + abs(ps(0.0)))
        return fl, dfl, err0

    certs = []
    for x, br in _scan_candidates(f, df, ddf, lo, hi, n, config.xtol,
                                  config.maxiter, local_model,
                                  lambda x: hint(x) >= 2):
        res = residual(eq, x)
        scale = max(1.0, abs(_sat_exp(sk * x) * eq.Q(x)), abs(eq.P(x)))
        if res <= config.certify_tol * scale:
            certs.append(RootCertificate(
                x=x, residual=res, multiplicity_hint=hint(x), bracket=br))
    certs = _dedupe(certs, config.xtol)

    for c in certs:
        for pole in eq.Q.real_roots():
            if abs(c.x - pole) <= config.pole_tol * (1.0 + abs(pole)):
                raise PoleCollisionError(
                    f"certified root x={c.x!r} coincides with a zero of Q "
                    f"at {pole!r}; the quotient P/Q is not defined there")
    return certs
