"""Lineal (1+1)-dimensional gravity applications.

Two pieces.  First, the exact change of variables taking the static
two-body determining equation in the form

    y^2 = a^2 + (x^2 - a^2) e^{2x} e^{-2y}

into the double-delta eigenvalue condition handled by `quantum`:
lam = 2x/(x+a) - 1, R = -(x+a), d = (x-y)/(x+a).

Second, the static three-body determining equation for V at relative
angle q.  With S_q = |sin q|, S_p = |sin(q+pi/3)|, S_m = |sin(q-pi/3)|
and sign factors s1 = sgn(sin(q+pi/3)), s2 = -sgn(sin(q-pi/3)),
sq = sgn(sin q), the residual used throughout is

    (V-m1)(V-m2)(V-m3)
      - m1 m2 (V - s1 s2 m3) e^{-KVR Sq}
      - m1 m3 (V + sq s2 m2) e^{-KVR Sp}
      - m2 m3 (V - sq s1 m1) e^{-KVR Sm},

with decaying exponentials; sgn(0) = 0, which coincides with the limit
of the expression from the interior of each angular regime.  At the
special angles q in {0, +-pi/3} the equation collapses to the
exponential-quadratic canonical form with a pivot mass against the sum
of the other two, at q = pi/6 (equal masses) it factors into a linear
and a rational piece each W-solvable, and for small q a rational
P_N/Q_M truncation is generated from the exact residual.  V = 0
always solves the full equation but the underlying derivation assumes
V != 0, so it is reported flagged 'trivial'.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, TruncationWarning
from .lambertw import lambert_w, lambert_w_scaled
from .poly import FactoredQuadratic, Polynomial
from .solver import (
    RootCertificate,
    TranscendentalEquation,
    _newton_bracket,
    _sat_exp,
    solve_all,
)

__all__ = [
    "ThreeBodySpec",
    "two_body_roundtrip",
    "two_body_residual",
    "three_body_residual",
    "three_body_solve",
    "three_body_special_q0",
    "three_body_special_angle",
    "three_body_double_root",
    "three_body_pi6_factors",
    "three_body_pi6_linear_root",
    "three_body_rational_q",
]

_TRIVIAL_TOL = 1e-9
_CERTIFY_TOL = 1e-10
_HINT_TOL = 1e-7
_XTOL = 1e-13


def two_body_roundtrip(x: float, a: float) -> tuple[float, float]:
    """Map two-body variables (x, a) to the eigenvalue problem's (lam, R).

    lam = 2x/(x+a) - 1 and R = -(x+a); y solves the two-body relation
    y^2 = a^2 + (x^2-a^2) e^{2x} e^{-2y} exactly when d = (x-y)/(x+a)
    solves the double-delta canonical equation with these (lam, R).
    R > 0 (the physical regime) requires x + a < 0.
    """
    x = float(x)
    a = float(a)
    if x + a == 0.0:
        raise DomainError("x + a must be nonzero; the map divides by it")
    return 2.0 * x / (x + a) - 1.0, -(x + a)


def two_body_residual(x: float, a: float, y: float) -> float:
    """Signed residual y^2 - a^2 - (x^2 - a^2) e^{2x} e^{-2y}."""
    return y * y - a * a - (x * x - a * a) * math.exp(2.0 * x) * math.exp(-2.0 * y)


def _sgn(v: float) -> float:
    if v > 0.0:
        return 1.0
    if v < 0.0:
        return -1.0
    return 0.0


@dataclass(frozen=True)
class ThreeBodySpec:
    """Masses, relative angle q (radians), coupling K, and scale R."""

    m1: float
    m2: float
    m3: float
    q: float
    K: float
    R: float

    def __post_init__(self):
        for name in ("m1", "m2", "m3", "q", "K", "R"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("m1", "m2", "m3"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise DomainError(f"mass {name} must be finite and positive, got {v!r}")
        if not (self.K > 0.0 and math.isfinite(self.K)):
            raise DomainError(f"coupling K must be finite and positive, got {self.K!r}")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise DomainError(f"scale R must be finite and positive, got {self.R!r}")
        if not math.isfinite(self.q):
            raise DomainError(f"angle q must be finite, got {self.q!r}")

    @property
    def R_t(self) -> float:
        """Collapsed scale K R sqrt(3)/4 of the special-angle reductions."""
        return self.K * self.R * math.sqrt(3.0) / 4.0

    @property
    def c(self) -> float:
        """Exponent scale K R / 2 of the pi/6 factorization."""
        return self.K * self.R / 2.0

    def _angles(self):
        sp = math.sin(self.q + math.pi / 3.0)
        sm = math.sin(self.q - math.pi / 3.0)
        sq = math.sin(self.q)
        return (abs(sq), abs(sp), abs(sm)), (_sgn(sp), -_sgn(sm), _sgn(sq))


def _terms(spec: ThreeBodySpec, V: float):
    (Sq, Sp, Sm), (s1, s2, sq) = spec._angles()
    kvr = spec.K * spec.R * V
    poly = (V - spec.m1) * (V - spec.m2) * (V - spec.m3)
    t12 = spec.m1 * spec.m2 * (V - s1 * s2 * spec.m3) * _sat_exp(-kvr * Sq)
    t13 = spec.m1 * spec.m3 * (V + sq * s2 * spec.m2) * _sat_exp(-kvr * Sp)
    t23 = spec.m2 * spec.m3 * (V - sq * s1 * spec.m1) * _sat_exp(-kvr * Sm)
    return poly, t12, t13, t23


def three_body_residual(spec: ThreeBodySpec, V: float) -> float:
    """Signed residual of the three-body determining equation at V."""
    poly, t12, t13, t23 = _terms(spec, float(V))
    return poly - (t12 + t13 + t23)


def _residual_scale(spec, V):
    poly, t12, t13, t23 = _terms(spec, V)
    return max(1.0, abs(poly), abs(t12), abs(t13), abs(t23))


def _dres(spec: ThreeBodySpec, V: float) -> float:
    (Sq, Sp, Sm), (s1, s2, sq) = spec._angles()
    kr = spec.K * spec.R
    m1, m2, m3 = spec.m1, spec.m2, spec.m3
    dpoly = (3.0 * V * V - 2.0 * (m1 + m2 + m3) * V
             + (m1 * m2 + m1 * m3 + m2 * m3))
    out = dpoly
    for mm, mu, S in ((m1 * m2, s1 * s2 * m3, Sq),
                      (m1 * m3, -sq * s2 * m2, Sp),
                      (m2 * m3, sq * s1 * m1, Sm)):
        b = kr * S
        out -= mm * _sat_exp(-b * V) * (1.0 - b * (V - mu))
    return out


def _ddres(spec: ThreeBodySpec, V: float) -> float:
    (Sq, Sp, Sm), (s1, s2, sq) = spec._angles()
    kr = spec.K * spec.R
    m1, m2, m3 = spec.m1, spec.m2, spec.m3
    out = 6.0 * V - 2.0 * (m1 + m2 + m3)
    for mm, mu, S in ((m1 * m2, s1 * s2 * m3, Sq),
                      (m1 * m3, -sq * s2 * m2, Sp),
                      (m2 * m3, sq * s1 * m1, Sm)):
        b = kr * S
        out -= mm * _sat_exp(-b * V) * (b * b * (V - mu) - 2.0 * b)
    return out


def default_three_body_interval(spec: ThreeBodySpec) -> tuple[float, float]:
    """Symmetric V window outside which the exponential terms dominate."""
    m = (spec.m1 + spec.m2 + spec.m3) * (1.0 + 4.0 / (spec.K * spec.R))
    return (-m, m)


def three_body_solve(spec: ThreeBodySpec,
                     interval: tuple[float, float] | None = None) -> list[RootCertificate]:
    """All certified real roots V of the determining equation.

    Each root satisfies |three_body_residual| <= 1e-10 * scale with
    scale the largest participating term.  The always-present trivial
    root V = 0 (excluded by the derivation's V != 0 assumption) is
    reported flagged 'trivial' rather than dropped.
    """
    if interval is None:
        interval = default_three_body_interval(spec)
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"interval must be finite with lo < hi, got {interval!r}")

    def f(v):
        return three_body_residual(spec, v)

    def df(v):
        return _dres(spec, v)

    n = max(800, int(4.0 * (hi - lo) * max(spec.K * spec.R, 1.0)))
    grid = [lo + (hi - lo) * i / n for i in range(n + 1)]
    if lo < 0.0 < hi and 0.0 not in grid:
        grid = sorted(grid + [0.0])

    fs = [f(v) for v in grid]
    cands = []
    if lo < 0.0 < hi:
        # V = 0 is a root of the determining form by construction;
        # direct evaluation only reproduces it up to cancellation
        # noise, so it is seeded rather than left to the grid scan
        cands.append(0.0)
    for i, v in enumerate(fs):
        if v == 0.0:
            cands.append(grid[i])
    for i in range(len(grid) - 1):
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0 or fb == 0.0:
            continue
        if (fa < 0.0) != (fb < 0.0):
            cands.append(_newton_bracket(f, df, grid[i], grid[i + 1],
                                         fa, fb, _XTOL, 60))
    for i in range(1, len(grid) - 1):
        trio = fs[i - 1], fs[i], fs[i + 1]
        if any(v == 0.0 for v in trio):
            continue
        if (trio[0] < 0.0) != (trio[1] < 0.0) or (trio[1] < 0.0) != (trio[2] < 0.0):
            continue
        if abs(trio[1]) < abs(trio[0]) and abs(trio[1]) <= abs(trio[2]):
            ga, gb = df(grid[i - 1]), df(grid[i + 1])
            if (ga < 0.0) != (gb < 0.0):
                cands.append(_newton_bracket(df, lambda v: _ddres(spec, v),
                                             grid[i - 1], grid[i + 1],
                                             ga, gb, _XTOL, 60))

    # candidates closer to 0 than the evaluation can resolve snap onto
    # the structural root: inside |V| < r_snap the true residual lies
    # below the cancellation noise of the direct evaluation
    noise = 16.0 * math.ulp(1.0) * _residual_scale(spec, 0.0)
    d1 = abs(_dres(spec, 0.0))
    c2 = 0.5 * abs(_ddres(spec, 0.0))
    r_snap = max(_TRIVIAL_TOL, noise / max(d1, math.sqrt(noise * max(c2, noise))))

    certs = []
    for v in cands:
        if abs(v) <= r_snap:
            v = 0.0
        res = abs(f(v))
        if res > _CERTIFY_TOL * _residual_scale(spec, v):
            continue
        s1 = max(1.0, abs(_dres(spec, v)), _residual_scale(spec, v) * spec.K * spec.R)
        if abs(_dres(spec, v)) > _HINT_TOL * s1:
            hint = 1
        elif abs(_ddres(spec, v)) > _HINT_TOL * max(1.0, abs(_ddres(spec, v)),
                                                    _residual_scale(spec, v)):
            hint = 2
        else:
            hint = 3
        flags = ("trivial",) if v == 0.0 else ()
        certs.append(RootCertificate(x=v, residual=res, multiplicity_hint=hint,
                                     flags=flags))
    certs.sort(key=lambda cr: cr.x)
    out = []
    for cr in certs:
        if out and abs(cr.x - out[-1].x) <= max(4.0 * _XTOL * (1.0 + abs(cr.x)), 1e-12):
            prev = out[-1]
            keep = cr if cr.residual < prev.residual else prev
            hint = max(cr.multiplicity_hint, prev.multiplicity_hint)
            flags = tuple(sorted(set(prev.flags) | set(cr.flags)))
            out[-1] = RootCertificate(x=keep.x, residual=keep.residual,
                                      multiplicity_hint=hint, flags=flags)
        else:
            out.append(cr)
    return out


def _pivot_masses(m1, m2, m3, which):
    if which == 0:
        return m3, m1 + m2
    if which == 1:
        return m1, m2 + m3
    if which == -1:
        return m2, m1 + m3
    raise DomainError(f"angle index must be 0, 1, or -1, got {which!r}")


def three_body_special_angle(m1: float, m2: float, m3: float, R_t: float,
                             which: int = 0) -> TranscendentalEquation:
    """Canonical equation at the special angle q = which * pi/3.

    The full equation divided by its trivial V factor collapses to
    e^{-2 R_t V} = (V - p)(V - s)/(p s) with pivot mass p (m3, m1, m2
    for which = 0, +1, -1) and s the sum of the other two.  p = s makes
    the quadratic a perfect square (the double-root family).
    """
    for name, v in (("m1", m1), ("m2", m2), ("m3", m3), ("R_t", R_t)):
        if not (float(v) > 0.0 and math.isfinite(float(v))):
            raise DomainError(f"{name} must be finite and positive, got {v!r}")
    p, s = _pivot_masses(float(m1), float(m2), float(m3), which)
    fq = FactoredQuadratic(1.0 / p, 1.0 / s, p, s)
    return TranscendentalEquation(sign=-1, k=2.0 * float(R_t), P=fq.expand(),
                                  Q=Polynomial((1.0,)))


def three_body_special_q0(m1: float, m2: float, m3: float,
                          R_t: float) -> TranscendentalEquation:
    """q = 0 canonical equation e^{-2R_t V} = (V-m3)(V-(m1+m2))/(m3(m1+m2))."""
    return three_body_special_angle(m1, m2, m3, R_t, which=0)


def three_body_double_root(m3: float, R_t: float, sign: int = 1, branch: int = 0,
                           variant: str = "corrected"):
    """Closed-form roots of the q = 0 double-root family (pivot = sum).

    With t = R_t m3 the canonical equation e^{-2R_t V} = (V-m3)^2/m3^2
    splits into +-m3 e^{-R_t V} = V - m3, solved by

        corrected:  V = m3 + W_branch(sign * t e^{-t}) / R_t
        printed:    V = m3 - W_branch(sign * t e^{+t}) / R_t

    The printed variant's + sign returns exactly the trivial root 0 and
    its - sign leaves the real branch domain for t e^t > 1/e, where a
    complex number is returned; both variants are evaluated faithfully
    and certified only against the residual, never against each other.
    """
    m3 = float(m3)
    R_t = float(R_t)
    if not (m3 > 0.0 and math.isfinite(m3)):
        raise DomainError(f"m3 must be finite and positive, got {m3!r}")
    if not (R_t > 0.0 and math.isfinite(R_t)):
        raise DomainError(f"R_t must be finite and positive, got {R_t!r}")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    t = R_t * m3
    if variant == "corrected":
        return m3 + lambert_w_scaled(t, sign=sign, branch=branch) / R_t
    if variant == "printed":
        arg = sign * t * math.exp(t)
        if arg >= -math.exp(-1.0) and (branch == 0 or arg < 0.0):
            w = lambert_w(arg, branch)
        else:
            w = lambert_w(complex(arg), branch)
        return m3 - w / R_t
    raise DomainError(f"variant must be 'corrected' or 'printed', got {variant!r}")


def three_body_pi6_factors(m: float, c: float) -> tuple[TranscendentalEquation,
                                                        TranscendentalEquation]:
    """The two factor equations of the equal-mass q = pi/6 case.

    The determining equation becomes, with t = e^{-cV} and c = KR/2,
    (V-m)^3 - 2m^2(V-m) t - m^2(V+m) t^2 = 0, which factors exactly:

        linear:    e^{-cV} = (m - V)/m
        rational:  e^{-cV} = (V - m)^2 / (m (V + m))
    """
    m = float(m)
    c = float(c)
    if not (m > 0.0 and math.isfinite(m)):
        raise DomainError(f"mass m must be finite and positive, got {m!r}")
    if not (c > 0.0 and math.isfinite(c)):
        raise DomainError(f"exponent scale c must be finite and positive, got {c!r}")
    linear = TranscendentalEquation(sign=-1, k=c, P=Polynomial((1.0, -1.0 / m)),
                                    Q=Polynomial((1.0,)))
    rational = TranscendentalEquation(sign=-1, k=c,
                                      P=Polynomial((m * m, -2.0 * m, 1.0)),
                                      Q=Polynomial((m * m, m)))
    return linear, rational


def three_body_pi6_linear_root(m: float, c: float, branch: int = 0,
                               variant: str = "corrected") -> float:
    """Closed form for the linear pi/6 factor e^{-cV} = (m - V)/m.

    corrected: V = m + W_branch(-mc e^{-mc})/c; branch 0 is the trivial
    root 0 for mc <= 1 and the nontrivial root for mc > 1, branch -1
    the other way around.  printed: V = m (1 - W(mc e^{mc})/(mc)),
    which is identically the trivial root 0 since W(x e^x) = x.
    """
    m = float(m)
    c = float(c)
    if not (m > 0.0 and math.isfinite(m)):
        raise DomainError(f"mass m must be finite and positive, got {m!r}")
    if not (c > 0.0 and math.isfinite(c)):
        raise DomainError(f"exponent scale c must be finite and positive, got {c!r}")
    if variant == "corrected":
        return m + lambert_w_scaled(m * c, sign=-1, branch=branch) / c
    if variant == "printed":
        t = m * c
        return m * (1.0 - lambert_w(t * math.exp(t), 0) / t)
    raise DomainError(f"variant must be 'corrected' or 'printed', got {variant!r}")


def _taylor_exp(beta: float, n: int) -> Polynomial:
    """e^{beta V} truncated to degree n."""
    cs = [1.0]
    for j in range(1, n + 1):
        cs.append(cs[-1] * beta / j)
    return Polynomial(tuple(cs))


def _taylor_exp_diff_over_v(beta_hi: float, beta_lo: float, n: int) -> Polynomial:
    """(e^{beta_hi V} - e^{beta_lo V})/V truncated to degree n."""
    cs = []
    ph, pl = beta_hi, beta_lo
    fact = 1.0
    for j in range(n + 1):
        fact *= (j + 1)
        cs.append((ph - pl) / fact)
        ph *= beta_hi
        pl *= beta_lo
    return Polynomial(tuple(cs))


def three_body_rational_q(spec: ThreeBodySpec,
                          order: tuple[int, int]) -> TranscendentalEquation:
    """Small-q rational truncation e^{-sqrt(3) c cos(q) V} = P_N/Q_M.

    Substituting f = e^{c sin(q) V} into the exact residual and
    dividing out the common V factor gives, exactly,

        e^{-sqrt(3) c cos(q) V}
          = (V - m3)[f^2 V - f^2 (m1+m2) + m1 m2 (f^2-1)/V]
            / (m3 [f (m1 + m2 f^2) - m1 m2 (f^3 - f)/V]),

    entire in V on both sides.  Truncating the numerator at degree N
    and the denominator at degree M yields the P_N/Q_M equation, whose
    roots approach the exact ones as the order grows; the exact
    residual stays the ground truth.  A TruncationWarning is issued
    when the truncated nontrivial roots stray from the exact ones by
    more than 1e-4.
    """
    if not 0.0 < spec.q < math.pi / 3.0:
        raise DomainError(
            f"rational truncation needs 0 < q < pi/3, got q={spec.q!r}")
    N, M = int(order[0]), int(order[1])
    if N < 0 or M < 0 or (N == 0 and M == 0):
        raise DomainError(f"truncation order {order!r} is degenerate")
    alpha = spec.c * math.sin(spec.q)
    k = math.sqrt(3.0) * spec.c * math.cos(spec.q)
    deg = max(N, M) + 3
    m1, m2, m3 = spec.m1, spec.m2, spec.m3

    f2 = _taylor_exp(2.0 * alpha, deg)
    e2 = _taylor_exp_diff_over_v(2.0 * alpha, 0.0, deg)
    bracket = (Polynomial((0.0,) + f2.coeffs) - f2.scale(m1 + m2)
               + e2.scale(m1 * m2))
    num = (Polynomial((-m3, 1.0)) * bracket).truncated(N)

    f1 = _taylor_exp(alpha, deg)
    f3 = _taylor_exp(3.0 * alpha, deg)
    e31 = _taylor_exp_diff_over_v(3.0 * alpha, alpha, deg)
    den = ((f1.scale(m1) + f3.scale(m2) - e31.scale(m1 * m2))
           .scale(m3).truncated(M))

    eq = TranscendentalEquation(sign=-1, k=k, P=num, Q=den)

    exact = [cr.x for cr in three_body_solve(spec) if "trivial" not in cr.flags]
    if exact:
        window = default_three_body_interval(spec)
        approx = [cr.x for cr in solve_all(eq, interval=window)
                  if abs(cr.x) > _TRIVIAL_TOL]
        worst = max((min((abs(v - w) for w in approx), default=math.inf)
                     for v in exact), default=0.0)
        if worst > 1e-4:
            warnings.warn(TruncationWarning(
                f"order {order!r} truncation misses exact roots by up to "
                f"{worst:.3e}; raise the order or treat roots as seeds only"))
    return eq
