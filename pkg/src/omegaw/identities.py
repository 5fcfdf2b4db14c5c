"""Algebraic identities built on Lambert W.

The addition law W(a) + W(b) = W(ab(1/W(a) + 1/W(b))) folds any number
of W values into a single evaluation.  That fold feeds two dual-route
checks used throughout the package: the product identity
prod W(z_i) = (prod z_i) e^{-W(f_n)} and the epsilon-x relation that a
separated two-factor solution must satisfy.  Both routes re-evaluate W
from scratch rather than reusing the running sum, so agreement is a
genuine consistency test and not a tautology.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence, Union

from .errors import DegenerateError, DomainError
from .lambertw import BranchedPoint, lambert_w

__all__ = [
    "ProductArguments",
    "addition_law_rhs",
    "f_n",
    "omega_n_product",
    "tetration",
    "epsilon_x_relation",
]

ProductArguments = Sequence[Union[BranchedPoint, complex, float]]

_TWO_PI = 2.0 * math.pi


def _as_point(p) -> BranchedPoint:
    return p if isinstance(p, BranchedPoint) else BranchedPoint(p, 0)


def addition_law_rhs(a, b):
    """The argument f with W(f) = W(a) + W(b) on the principal branch.

    f = a*b*(1/W(a) + 1/W(b)).  Both arguments in the closed left half
    plane are rejected: there the principal-branch sum can leave the
    range of W_0 and the law stops holding as stated.
    """
    if a.real <= 0.0 and b.real <= 0.0:
        raise DomainError("addition law needs Re > 0 for at least one argument")
    wa = lambert_w(a, 0)
    wb = lambert_w(b, 0)
    if wa == 0 or wb == 0:
        raise DegenerateError("addition law breaks when W of an argument is 0")
    return a * b * (1.0 / wa + 1.0 / wb)


def f_n(points: ProductArguments, intermediate_branch: int = 0):
    """Left fold of the addition law over n >= 2 branched points.

    Returns f with W(f) = sum_i W(z_i), provided every intermediate
    partial sum stays on intermediate_branch.  Each fold step
    re-evaluates W(f_j) by a fresh branch evaluation; nothing is
    carried over from the running sum, so downstream identity checks
    exercise the actual W implementation.
    """
    pts = [_as_point(p) for p in points]
    if len(pts) < 2:
        raise DomainError(f"f_n needs at least two points, got {len(pts)}")
    ws = [lambert_w(p.z, p.branch) for p in pts]
    if any(w == 0 for w in ws):
        raise DegenerateError("f_n is undefined when some W(z_i) = 0")
    f = pts[0].z
    wf = ws[0]
    for p, w in zip(pts[1:], ws[1:]):
        if wf == 0:
            raise DegenerateError("partial sum of W values hit 0 during the fold")
        f = f * p.z * (1.0 / wf + 1.0 / w)
        wf = lambert_w(f, intermediate_branch)
    return f


def omega_n_product(points: ProductArguments, intermediate_branch: int = 0):
    """(prod z_i) * e^{-W(f_n)}, which the product identity equates to
    prod W(z_i).

    For a single point this is z_1 e^{-W(z_1)} = W(z_1) on the point's
    own branch.  For n >= 2 the exponent comes from a fresh W
    evaluation of the folded argument f_n, making the identity a
    two-route consistency check.
    """
    pts = [_as_point(p) for p in points]
    if not pts:
        raise DomainError("omega_n_product needs at least one point")
    if len(pts) == 1:
        w = lambert_w(pts[0].z, pts[0].branch)
        return pts[0].z * _exp(-w)
    f = f_n(pts, intermediate_branch)
    wf = lambert_w(f, intermediate_branch)
    prod = pts[0].z
    for p in pts[1:]:
        prod = prod * p.z
    return prod * _exp(-wf)


def _exp(w):
    return math.exp(w) if isinstance(w, float) else cmath.exp(w)


def tetration(alpha):
    """Value of the infinite power tower alpha^alpha^alpha^... .

    H(alpha) = e^{-W_0(-ln alpha)}.  Real alpha in [e^{-e}, e^{1/e}]
    gives the classical convergent tower (H(sqrt 2) = 2); alpha beyond
    e^{1/e} pushes -ln alpha past the branch point and raises
    DomainError from the W evaluation.  alpha = 0 is rejected.
    """
    if alpha == 0:
        raise DomainError("the infinite tower is undefined at alpha = 0")
    if isinstance(alpha, complex) and alpha.imag != 0.0:
        t = -cmath.log(alpha)
    else:
        a = float(alpha.real if isinstance(alpha, complex) else alpha)
        t = -cmath.log(complex(a)) if a < 0.0 else -math.log(a)
    w = lambert_w(t, 0)
    return _exp(-w)


def epsilon_x_relation(r1: float, r2: float, R: float, epsilon: float, x: float,
                       a_o: float = 1.0, b_o: float = 1.0,
                       branches: tuple[int, int] = (0, 0),
                       f_branch: int | None = None) -> float:
    """Signed residual of (r2 - r1) eps = W(f_2)/R + (r1 + r2) - 2x.

    The two W arguments are rebuilt from the factor data,
    z_i = u_i e^{-r_i u_i} / scale_i with u_1 = (1+eps)R and
    u_2 = (1-eps)R, folded through the addition law, and W(f_2) is
    re-evaluated on f_branch.  When f_branch is None the branch is
    inferred from the real partial sum S = W_1 + W_2: branch 0 for
    S >= -1, branch -1 otherwise, which recovers S exactly because
    f_2 = S e^S.
    """
    u1 = (1.0 + epsilon) * R
    u2 = (1.0 - epsilon) * R
    z1 = u1 * math.exp(-r1 * u1) / a_o
    z2 = u2 * math.exp(-r2 * u2) / b_o
    w1 = lambert_w(z1, branches[0])
    w2 = lambert_w(z2, branches[1])
    if w1 == 0 or w2 == 0:
        raise DegenerateError("epsilon-x relation hit W = 0; the fold is undefined")
    f2 = z1 * z2 * (1.0 / w1 + 1.0 / w2)
    if f_branch is None:
        s = w1 + w2
        if isinstance(s, complex):
            f_branch = int(round((s + cmath.log(s) - cmath.log(f2)).imag / _TWO_PI))
        else:
            f_branch = 0 if s >= -1.0 else -1
    wf = lambert_w(f2, f_branch)
    lhs = (r2 - r1) * epsilon
    rhs = wf / R + (r1 + r2) - 2.0 * x
    out = lhs - rhs
    return out.real if isinstance(out, complex) else out
