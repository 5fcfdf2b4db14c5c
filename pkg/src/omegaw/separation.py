"""Separation of exponential-quadratic and exponential-rational equations.

Two problem shapes share one mechanism:

    quadratic:  e^{-2xR} = a_o b_o (x - r1)(x - r2)
    rational:   e^{-2xR} = a_o (x - r1) / (b_o (x - r2))

Writing 2R = (1+eps)R + (1-eps)R splits either equation into two factor
equations, each solvable by one Lambert W evaluation:

    e^{-x u1} = a_o (x - r1)        u1 = (1+eps) R
    e^{-x u2} = b_o (x - r2)        u2 = (1-eps) R   (quadratic)
    e^{+x u2} = b_o (x - r2)                         (rational)

Factor i gives x = r_i + W(z_i)/u_i with z_1 = u1 e^{-r1 u1}/a_o and,
for the quadratic shape, z_2 = u2 e^{-r2 u2}/b_o (the rational shape
negates the second exponent).  The separation constant eps is the value
at which both factors produce the same x; this module scans for all
such eps, including beyond (-1, 1) where one exponent changes sign but
the W arguments stay inside a real branch domain, and returns certified
solutions.  Closed-form families (a tangency value of the root ratio,
two exact special solutions, and a fixed-point family over eps) are
implemented alongside.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    DegenerateError,
    DomainError,
    NoConvergenceError,
    NoSolutionError,
    OmegawError,
    SplitMismatchWarning,
)
from .lambertw import lambert_w, lambert_w_scaled
from .poly import FactoredQuadratic, Polynomial

__all__ = [
    "SeparationProblem",
    "SeparationSolution",
    "SpecialSolution1",
    "SpecialSolution2",
    "x1_of_epsilon",
    "x2_of_epsilon",
    "separation_residual",
    "solve_separation",
    "solve_separation_all",
    "solve_rational",
    "solve_rational_all",
    "solve_canonical",
    "demkov_lambda",
    "special_solution_1",
    "special_solution_2",
    "parametric_family",
    "omega_1_minus_1",
]

_BRANCH_PAIRS = ((0, 0), (0, -1), (-1, 0), (-1, -1))
_X_AGREE_TOL = 1e-10
_RELATION_TOL = 1e-8
_EPS_EDGE = 1e-6
_W_INNER_CAP_FACTOR = 2e-6
_LOG_FLOOR = 1e-30


@dataclass(frozen=True)
class SeparationProblem:
    """Data of e^{-2xR} = a_o b_o (x-r1)(x-r2) or its rational sibling."""

    r1: float
    r2: float
    a_o: float
    b_o: float
    R: float

    def __post_init__(self):
        for name in ("r1", "r2", "a_o", "b_o", "R"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise DomainError(f"R must be finite and positive, got {self.R!r}")
        if self.a_o == 0.0 or self.b_o == 0.0:
            raise DomainError("scales a_o and b_o must be nonzero")

    def quadratic(self) -> FactoredQuadratic:
        return FactoredQuadratic(self.a_o, self.b_o, self.r1, self.r2)


@dataclass(frozen=True)
class SeparationSolution:
    """One separated solution.

    z2 is the actual W argument of the second factor; for a rational
    problem that factor's exponent is -u2, so x = r2 + W(z2)/(-u2)
    there, while the quadratic shape has x = r2 + W(z2)/u2.  u1 and u2
    always hold (1+eps)R and (1-eps)R at full precision; epsilon itself
    can round to exactly -1.0 or 1.0 when a root sits within a few
    hundred ulps of an endpoint, so downstream work should prefer the
    u fields.  decomposed=False marks a root recovered by the direct
    numeric solver rather than by factor separation.
    """

    epsilon: float
    x: float
    z1: float
    z2: float
    branch1: int
    branch2: int
    u1: float
    u2: float
    decomposed: bool = True
    rational: bool = False


class SpecialSolution1(NamedTuple):
    r1: float
    a_o: float
    x: float


class SpecialSolution2(NamedTuple):
    r2: float
    a_o: float
    x: float


def _rho(u: float, r: float, scale: float, branch: int) -> float:
    """W(u e^{-r u}/scale)/u, continuous through u = 0 on branch 0."""
    t = math.exp(-r * u) / scale
    zz = u * t
    if branch == 0 and abs(zz) < 1e-8:
        # W(zz)/u = t (1 - zz + 1.5 zz^2 + O(zz^3)); covers u = 0 exactly
        return t * (1.0 - zz * (1.0 - 1.5 * zz))
    if u == 0.0:
        raise DegenerateError(
            "factor exponent vanished (eps = +-1); only branch 0 has a finite limit")
    return lambert_w(zz, branch) / u


def x1_of_epsilon(p: SeparationProblem, epsilon: float, branch: int = 0) -> float:
    """Root of the first factor equation e^{-x(1+eps)R} = a_o(x - r1)."""
    u1 = (1.0 + epsilon) * p.R
    return p.r1 + _rho(u1, p.r1, p.a_o, branch)


def x2_of_epsilon(p: SeparationProblem, epsilon: float, branch: int = 0) -> float:
    """Root of the second factor equation e^{-x(1-eps)R} = b_o(x - r2)."""
    u2 = (1.0 - epsilon) * p.R
    return p.r2 + _rho(u2, p.r2, p.b_o, branch)


def separation_residual(p: SeparationProblem, epsilon: float,
                        branches: tuple[int, int] = (0, 0)) -> float:
    """x1(eps) - x2(eps); zero exactly when the two factors agree.

    The documented window is eps in (-1, 1); outside it the factor
    exponents change sign and this function raises DomainError.  The
    solvers scan those extension regions internally via the u
    parametrization.
    """
    if not -1.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (-1, 1), got {epsilon!r}")
    return x1_of_epsilon(p, epsilon, branches[0]) - x2_of_epsilon(p, epsilon, branches[1])


def _residual_u(p, u1, u2, branches, rational):
    x1 = p.r1 + _rho(u1, p.r1, p.a_o, branches[0])
    ue = -u2 if rational else u2
    x2 = p.r2 + _rho(ue, p.r2, p.b_o, branches[1])
    return x1 - x2


def _make_solution(p, u1, u2, branches, rational):
    """Build and certify a SeparationSolution; None if certification fails."""
    try:
        rho1 = _rho(u1, p.r1, p.a_o, branches[0])
        ue = -u2 if rational else u2
        rho2 = _rho(ue, p.r2, p.b_o, branches[1])
    except (OmegawError, OverflowError):
        return None
    x1 = p.r1 + rho1
    x2 = p.r2 + rho2
    if rational:
        if rho2 == 0.0:
            return None
        val = (p.a_o * rho1) / (p.b_o * rho2)
    else:
        val = (p.a_o * rho1) * (p.b_o * rho2)
    if not (val > 0.0 and math.isfinite(val)):
        return None
    x = -math.log(val) / (2.0 * p.R)
    if abs(x1 - x2) > _X_AGREE_TOL * (1.0 + abs(x)):
        return None
    try:
        z1 = u1 * math.exp(-p.r1 * u1) / p.a_o
        z2 = ue * math.exp(-p.r2 * ue) / p.b_o
    except OverflowError:
        return None
    w1 = rho1 * u1
    w2 = rho2 * ue
    if rational:
        # certify against the rational equation itself
        denom = p.b_o * (x - p.r2)
        if denom == 0.0:
            return None
        lhs = math.exp(-2.0 * p.R * x)
        rhs = p.a_o * (x - p.r1) / denom
        if abs(lhs - rhs) > _X_AGREE_TOL * max(1.0, abs(lhs), abs(rhs)):
            return None
    elif w1 != 0.0 and w2 != 0.0:
        # certify the folded-W relation linking eps and x
        f2 = z1 * z2 * (1.0 / w1 + 1.0 / w2)
        s = w1 + w2
        f2 = max(f2, -math.exp(-1.0))
        wf = lambert_w(f2, 0 if s >= -1.0 else -1)
        eps = u1 / p.R - 1.0
        rel = (p.r2 - p.r1) * eps - (wf / p.R + (p.r1 + p.r2) - 2.0 * x)
        if abs(rel) > _RELATION_TOL:
            return None
    return SeparationSolution(
        epsilon=u1 / p.R - 1.0, x=x, z1=z1, z2=z2,
        branch1=branches[0], branch2=branches[1],
        u1=u1, u2=u2, decomposed=True, rational=rational)


def _refine(fun, a, b, fa, fb, iters=110):
    """Bisection on a sign-change bracket, to near machine resolution."""
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = fun(m)
        if fm is None:
            # invalid midpoint: shrink toward the valid left endpoint
            b = m
            continue
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
        if abs(b - a) <= 5e-16 * (abs(a) + abs(b)):
            break
    return a if abs(fa) <= abs(fb) else b


def _edge_probe(res_at, t_valid, t_invalid, iters=90):
    """Bisect the domain boundary between a valid and an invalid grid
    node; return (t, res) at the innermost valid point reached."""
    a, b = t_valid, t_invalid
    best = None
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        v = res_at(m)
        if v is None:
            b = m
        else:
            a = m
            best = (m, v)
    return best


def _grid_roots(res_at, grid):
    """Root positions of res_at along a 1-D grid.

    res_at returns None off its domain.  Sign changes between valid
    nodes are bisected.  At a valid/invalid transition the domain edge
    is located first and the residual just inside it supplies the
    missing endpoint, so roots hiding between the last grid node and a
    branch-domain boundary (where a W argument crosses -1/e) are still
    bracketed.
    """
    out = []
    prev = None
    prev_invalid = None
    for t in grid:
        v = res_at(t)
        if v is None:
            if prev is not None:
                edge = _edge_probe(res_at, prev[0], t)
                if edge is not None and (edge[1] < 0.0) != (prev[1] < 0.0):
                    out.append(_refine(res_at, prev[0], edge[0], prev[1], edge[1]))
            prev = None
            prev_invalid = t
            continue
        if v == 0.0:
            out.append(t)
            prev = None
            prev_invalid = None
            continue
        if prev is not None:
            if (prev[1] < 0.0) != (v < 0.0):
                out.append(_refine(res_at, prev[0], t, prev[1], v))
        elif prev_invalid is not None:
            edge = _edge_probe(res_at, t, prev_invalid)
            if edge is not None and (edge[1] < 0.0) != (v < 0.0):
                out.append(_refine(res_at, t, edge[0], v, edge[1]))
        prev = (t, v)
        prev_invalid = None
    return out


def _scan_eps_window(p, branches, rational):
    """Sign-change roots of the factor-agreement residual for eps in (-1, 1)."""
    lo, hi = -1.0 + _EPS_EDGE, 1.0 - _EPS_EDGE
    n = 512

    def res_at(eps):
        try:
            v = _residual_u(p, (1.0 + eps) * p.R, (1.0 - eps) * p.R,
                            branches, rational)
        except (OmegawError, OverflowError):
            return None
        return v if math.isfinite(v) else None

    grid = [lo + (hi - lo) * i / n for i in range(n + 1)]
    return [((1.0 + e) * p.R, (1.0 - e) * p.R) for e in _grid_roots(res_at, grid)]


def _scan_log_window(p, branches, rational, side):
    """Roots in the four endpoint regions, parametrized by w = |u| on a
    log grid down to 1e-30 so roots exponentially close to eps = +-1
    are resolved.  Sides: +-1 outer (exponent sign flipped) and +-1
    inner (tiny positive exponent, covering the gap left by the eps
    grid edge)."""
    if side == "left_outer":
        pair = lambda w: (-w, 2.0 * p.R + w)
        w_hi = 2000.0
    elif side == "right_outer":
        pair = lambda w: (2.0 * p.R + w, -w)
        w_hi = 2000.0
    elif side == "left_inner":
        pair = lambda w: (w, 2.0 * p.R - w)
        w_hi = _W_INNER_CAP_FACTOR * p.R
    else:
        pair = lambda w: (2.0 * p.R - w, w)
        w_hi = _W_INNER_CAP_FACTOR * p.R

    m_lo, m_hi = math.log(_LOG_FLOOR), math.log(w_hi)
    n = 260

    def res_at(m):
        u1, u2 = pair(math.exp(m))
        try:
            v = _residual_u(p, u1, u2, branches, rational)
        except (OmegawError, OverflowError):
            return None
        return v if math.isfinite(v) else None

    grid = [m_lo + (m_hi - m_lo) * i / n for i in range(n + 1)]
    return [pair(math.exp(m)) for m in _grid_roots(res_at, grid)]


def _solve_impl(p, branches, rational):
    cands = _scan_eps_window(p, branches, rational)
    for side in ("left_outer", "right_outer", "left_inner", "right_inner"):
        cands.extend(_scan_log_window(p, branches, rational, side))
    sols = []
    for u1, u2 in cands:
        s = _make_solution(p, u1, u2, branches, rational)
        if s is not None:
            sols.append(s)
    sols.sort(key=lambda s: s.u1)
    dedup = []
    for s in sols:
        if dedup and abs(s.u1 - dedup[-1].u1) <= 1e-8 * (1.0 + abs(s.u1)):
            continue
        dedup.append(s)
    dedup.sort(key=lambda s: s.epsilon)
    return dedup


def solve_separation_all(p: SeparationProblem,
                         branches: tuple[int, int] = (0, 0)) -> list[SeparationSolution]:
    """All separated solutions of the quadratic problem on a branch pair,
    sorted by epsilon.  Empty list when none exist on this pair."""
    return _solve_impl(p, branches, rational=False)


def solve_separation(p: SeparationProblem,
                     branches: tuple[int, int] = (0, 0)) -> SeparationSolution:
    """The smallest-|epsilon| separated solution of the quadratic problem.

    Raises NoSolutionError when the factor-agreement residual has no
    root anywhere in the scanned eps range for this branch pair.
    """
    sols = solve_separation_all(p, branches)
    if not sols:
        raise NoSolutionError(
            f"no separation constant found for {p} on branches {branches}")
    return min(sols, key=lambda s: (abs(s.epsilon), s.x))


def solve_rational_all(p: SeparationProblem,
                       branches: tuple[int, int] = (0, 0)) -> list[SeparationSolution]:
    """All separated solutions of the rational problem on a branch pair.

    The degenerate cancellation r1 = r2 with a_o = b_o reduces the
    equation to e^{-2xR} = 1, whose root x = 0 is appended with
    decomposed=False (it needs no separation constant).
    """
    sols = _solve_impl(p, branches, rational=True)
    if p.r1 == p.r2 and p.a_o == p.b_o and p.r1 != 0.0:
        if not any(abs(s.x) <= 1e-12 for s in sols):
            sols.append(SeparationSolution(
                epsilon=math.nan, x=0.0, z1=math.nan, z2=math.nan,
                branch1=branches[0], branch2=branches[1],
                u1=math.nan, u2=math.nan, decomposed=False, rational=True))
    return sols


def solve_rational(p: SeparationProblem,
                   branches: tuple[int, int] = (0, 0)) -> SeparationSolution:
    """Smallest-|epsilon| separated solution of the rational problem."""
    sols = [s for s in solve_rational_all(p, branches) if s.decomposed]
    if not sols:
        raise NoSolutionError(
            f"no separation constant found for rational {p} on branches {branches}")
    return min(sols, key=lambda s: (abs(s.epsilon), s.x))


def solve_canonical(p: SeparationProblem) -> list[SeparationSolution]:
    """Separated solutions over all real branch pairs, with a numeric
    fallback.

    Tries every pair in {0,-1} x {0,-1}.  If no pair separates, the
    quadratic is handed to the direct solver and its roots come back
    with decomposed=False; a separation constant is still attached when
    one can be recovered from the first factor (a_o(x - r1) > 0 and
    x != 0), otherwise the eps-dependent fields are NaN.
    """
    sols = []
    for pair in _BRANCH_PAIRS:
        for s in solve_separation_all(p, pair):
            if any(abs(s.u1 - t.u1) <= 1e-8 * (1.0 + abs(s.u1))
                   and t.branch1 == s.branch1 and t.branch2 == s.branch2
                   for t in sols):
                continue
            sols.append(s)
    if sols:
        sols.sort(key=lambda s: (s.x, s.epsilon))
        return sols

    from .solver import TranscendentalEquation, solve_all

    eq = TranscendentalEquation(sign=-1, k=2.0 * p.R,
                                P=p.quadratic().expand(), Q=Polynomial((1.0,)))
    out = []
    for cert in solve_all(eq):
        x = cert.x
        v1 = p.a_o * (x - p.r1)
        if x != 0.0 and v1 > 0.0:
            u1 = -math.log(v1) / x
            u2 = 2.0 * p.R - u1
            w1 = (x - p.r1) * u1
            w2 = (x - p.r2) * u2
            out.append(SeparationSolution(
                epsilon=u1 / p.R - 1.0, x=x,
                z1=u1 * math.exp(-p.r1 * u1) / p.a_o,
                z2=u2 * math.exp(-p.r2 * u2) / p.b_o,
                branch1=0 if w1 >= -1.0 else -1,
                branch2=0 if w2 >= -1.0 else -1,
                u1=u1, u2=u2, decomposed=False, rational=False))
        else:
            out.append(SeparationSolution(
                epsilon=math.nan, x=x, z1=math.nan, z2=math.nan,
                branch1=0, branch2=0, u1=math.nan, u2=math.nan,
                decomposed=False, rational=False))
    return out


def demkov_lambda(R: float) -> tuple[float, float]:
    """Root ratio lam at which the quadratic problem with r1 = 1,
    r2 = lam, a_o = 1, b_o = 1/lam separates in the eps -> 1 limit,
    and the closed-form root x that limit produces:
    lam = 1/2 + W(2R e^{-2R})/(4R), x = 1 + W(2R e^{-2R})/(2R) = 2 lam.

    At eps = 1 the second factor exponent vanishes and the factor
    agreement x1 - x2 collapses to a linear condition on lam; the
    returned x is a plain simple root of the full equation, special
    only in having an elementary W form at this one coupling.

    The x form used here is the algebraically identical stable version
    of -ln(W(2Re^{-2R})/(2R))/(2R); the logarithm form loses digits as
    R -> 0 where W(2Re^{-2R})/(2R) -> 1.
    """
    R = float(R)
    if not (R > 0.0 and math.isfinite(R)):
        raise DomainError(f"R must be finite and positive, got {R!r}")
    omega = lambert_w_scaled(2.0 * R, sign=1, branch=0)
    return 0.5 + omega / (4.0 * R), 1.0 + omega / (2.0 * R)


def special_solution_1(r2: float, b_o: float, R: float) -> SpecialSolution1:
    """Exact solution family r1 = 1/b_o, x = (1 + b_o r2)/b_o with
    a_o = e^{-2Rx}/r2; elementary functions only."""
    r2 = float(r2)
    b_o = float(b_o)
    R = float(R)
    if b_o == 0.0:
        raise DomainError("b_o must be nonzero")
    if r2 == 0.0:
        raise DomainError("r2 must be nonzero")
    if not (R > 0.0 and math.isfinite(R)):
        raise DomainError(f"R must be finite and positive, got {R!r}")
    x = (1.0 + b_o * r2) / b_o
    a_o = math.exp(-2.0 * R * x) / r2
    return SpecialSolution1(r1=1.0 / b_o, a_o=a_o, x=x)


def special_solution_2(r1: float, b_o: float, R: float) -> SpecialSolution2:
    """Exact solution family r2 = 1/a_o with
    a_o = -2R/(2 r1 R + ln(r1 b_o)) and x = -ln(r1 b_o)/(2R)."""
    r1 = float(r1)
    b_o = float(b_o)
    R = float(R)
    if not (R > 0.0 and math.isfinite(R)):
        raise DomainError(f"R must be finite and positive, got {R!r}")
    prod = r1 * b_o
    if prod <= 0.0:
        raise DomainError(f"r1*b_o must be positive, got {prod!r}")
    denom = 2.0 * r1 * R + math.log(prod)
    if denom == 0.0:
        raise DomainError("2 r1 R + ln(r1 b_o) = 0 makes a_o undefined")
    a_o = -2.0 * R / denom
    return SpecialSolution2(r2=1.0 / a_o, a_o=a_o, x=-math.log(prod) / (2.0 * R))


def _family_rhs(r, u_self, u_other, r_scale, other_scale, inner_arg_coeff, ratio):
    """One decoupled family equation: W(u_other * e^{ratio * W(inner)} /
    other_scale) / u_other with inner = inner_arg_coeff * e^{-r*u_self} / r_scale."""
    inner = lambert_w(inner_arg_coeff * math.exp(-r * u_self) / r_scale, 0)
    return lambert_w(u_other * math.exp(ratio * inner) / other_scale, 0) / u_other


def _family_equations(epsilon, a_o, b_o, R, form):
    """The two decoupled fixed-point maps r_i -> rhs_i(r_i)."""
    u1 = (1.0 + epsilon) * R
    u2 = (1.0 - epsilon) * R
    ratio12 = -u2 / u1
    ratio21 = -u1 / u2
    if form == "split":
        rhs1 = lambda r: _family_rhs(r, u1, u2, a_o, b_o, u1, ratio12)
        rhs2 = lambda r: _family_rhs(r, u2, u1, b_o, a_o, u2, ratio21)
    elif form == "printed":
        # printed family equations: the inner W arguments carry
        # (1 +- eps) without the factor R, and the second equation's
        # exponent prefactor is (1-eps)/(1-eps) = +1
        rhs1 = lambda r: _family_rhs(r, u1, u2, a_o, b_o, 1.0 + epsilon, ratio12)
        rhs2 = lambda r: _family_rhs(r, u2, u1, b_o, a_o, 1.0 - epsilon, 1.0)
    else:
        raise DomainError(f"form must be 'printed' or 'split', got {form!r}")
    return rhs1, rhs2


def _solve_fixed_point(rhs, seed, label):
    """Damped secant iteration on g(r) = rhs(r) - r."""

    def g(r):
        return rhs(r) - r

    r0 = float(seed)
    try:
        g0 = g(r0)
    except (OmegawError, OverflowError) as exc:
        raise NoConvergenceError(
            f"family equation for {label} is undefined at seed {seed!r}: {exc}") from exc
    if g0 == 0.0:
        return r0
    r1 = r0 + (0.05 if g0 > 0 else -0.05) * (1.0 + abs(r0))
    try:
        g1 = g(r1)
    except (OmegawError, OverflowError):
        r1 = r0 + 0.5 * g0
        g1 = g(r1)
    for _ in range(120):
        if g1 == g0:
            break
        step = g1 * (r1 - r0) / (g1 - g0)
        rn = r1 - step
        for _ in range(60):
            try:
                gn = g(rn)
                break
            except (OmegawError, OverflowError):
                rn = 0.5 * (rn + r1)
        else:
            raise NoConvergenceError(
                f"family equation for {label} left its domain near r={r1!r}")
        r0, g0, r1, g1 = r1, g1, rn, gn
        if abs(r1 - r0) <= 1e-15 * (1.0 + abs(r1)) or g1 == 0.0:
            break
    if abs(g1) > 1e-10 * (1.0 + abs(r1)):
        raise NoConvergenceError(
            f"fixed-point iteration for {label} stalled at r={r1!r} "
            f"with equation residual {g1!r}")
    return r1


def parametric_family(epsilon: float, a_o: float, b_o: float, R: float,
                      seeds: tuple[float, float],
                      form: str = "printed") -> tuple[float, float]:
    """Roots (r1, r2) generated by the decoupled fixed-point family at a
    given separation constant.

    form="printed" uses the family equations exactly as displayed in
    the source derivation; form="split" uses the equations that follow
    from substituting r1 = W(z2)/u2, r2 = W(z1)/u1 into one another.
    The two differ (the displayed equations drop a factor R inside the
    inner W arguments, and the second equation's exponent prefactor
    degenerates to +1), so printed-form results are validated against
    the split and a SplitMismatchWarning is issued when they do not
    satisfy it; they are never silently adjusted.

    Raises NoConvergenceError when the iteration diverges, which
    happens generically as epsilon approaches +-1 where one factor
    exponent vanishes.
    """
    if not -1.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (-1, 1), got {epsilon!r}")
    if not (R > 0.0 and math.isfinite(R)):
        raise DomainError(f"R must be finite and positive, got {R!r}")
    rhs1, rhs2 = _family_equations(epsilon, a_o, b_o, R, form)
    r1 = _solve_fixed_point(rhs1, seeds[0], "r1")
    r2 = _solve_fixed_point(rhs2, seeds[1], "r2")
    rhs1_s, rhs2_s = _family_equations(epsilon, a_o, b_o, R, "split")
    try:
        miss = max(abs(rhs1_s(r1) - r1), abs(rhs2_s(r2) - r2))
    except (OmegawError, OverflowError):
        miss = math.inf
    if miss > 1e-8 * (1.0 + abs(r1) + abs(r2)):
        warnings.warn(SplitMismatchWarning(
            f"family point (r1={r1!r}, r2={r2!r}) at eps={epsilon!r} misses "
            f"the two-factor split by {miss:.3e}; the displayed family "
            f"equations and the split disagree here"))
    return r1, r2


def omega_1_minus_1(p: SeparationProblem, epsilon: float,
                    branches: tuple[int, int] = (0, 0)) -> complex:
    """Product W(z1) W(z2-) for the rational problem at a given eps,
    with z1 = (1+eps)R e^{-r1(1+eps)R}/a_o and
    z2- = -(1-eps)R e^{+r2(1-eps)R}/b_o (the inverted second factor)."""
    u1 = (1.0 + epsilon) * p.R
    u2 = (1.0 - epsilon) * p.R
    z1 = u1 * math.exp(-p.r1 * u1) / p.a_o
    z2m = -u2 * math.exp(p.r2 * u2) / p.b_o
    w1 = lambert_w(z1, branches[0])
    w2 = lambert_w(z2m, branches[1])
    return complex(w1 * w2)
