"""Real-coefficient polynomials and factored quadratics.

These are the building blocks for equations of the shape
e^{+-kx} = P(x)/Q(x): dense polynomials with ascending coefficients,
plus the factored quadratic a_o*b_o*(x - r1)*(x - r2) that the
separation machinery keeps in factored form (the two scale factors
belong to different factor equations and must not be merged).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError

__all__ = ["Polynomial", "FactoredQuadratic", "eval", "from_quantum"]

_TRIM_TOL = 1e-15


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial, coefficients ascending in degree.

    The zero polynomial is the empty tuple.  Trailing coefficients
    smaller than 1e-15 of the largest magnitude are trimmed on
    construction so float noise cannot inflate the degree.
    """

    coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        cs = tuple(float(c) for c in self.coeffs)
        if cs:
            top = max(abs(c) for c in cs)
            cut = _TRIM_TOL * top
            n = len(cs)
            while n > 0 and abs(cs[n - 1]) <= cut:
                n -= 1
            cs = cs[:n]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        # Horner; works for float, complex, and numpy arrays alike
        if not self.coeffs:
            return 0.0 * x
        acc = 0.0 * x + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(tuple(
            c + (b[i] if i < len(b) else 0.0) for i, c in enumerate(a)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1.0)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def scale(self, s: float) -> "Polynomial":
        return Polynomial(tuple(s * c for c in self.coeffs))

    def truncated(self, degree: int) -> "Polynomial":
        """Drop all terms above the given degree."""
        return Polynomial(self.coeffs[:degree + 1])

    def shifted(self, center: float) -> "Polynomial":
        """Taylor re-expansion around center: q(t) = p(center + t).

        Coefficients are computed in exact rational arithmetic and
        rounded once, so q(0) carries the true value of p(center) even
        under catastrophic cancellation; evaluating q near 0 is then
        accurate at the local scale.  Needed to resolve roots clustered
        far below the direct-evaluation noise floor.
        """
        if not self.coeffs:
            return Polynomial()
        c = Fraction(float(center))
        work = [Fraction(v) for v in self.coeffs]
        n = len(work)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                work[j] += c * work[j + 1]
        return Polynomial(tuple(float(w) for w in work))

    def real_roots(self, imag_tol: float = 1e-8) -> list[float]:
        """Real roots via the companion matrix, ascending.

        Complex pairs are filtered by |Im| <= imag_tol*(1+|Re|), which
        also catches tightly clustered double roots split by rounding.
        """
        if self.degree < 1:
            return []
        rr = np.roots(self.coeffs[::-1])
        out = [float(r.real) for r in rr if abs(r.imag) <= imag_tol * (1.0 + abs(r.real))]
        return sorted(out)

    def cauchy_bound(self) -> float:
        """Upper bound on the magnitude of every (complex) root."""
        if self.degree < 1:
            return 0.0
        lead = abs(self.coeffs[-1])
        return 1.0 + max(abs(c) for c in self.coeffs[:-1]) / lead

    @classmethod
    def from_roots(cls, roots, lead: float = 1.0) -> "Polynomial":
        p = cls((float(lead),))
        for r in roots:
            p = p * cls((-float(r), 1.0))
        return p


def eval(p: Polynomial, x):
    """Evaluate a polynomial at x (Horner)."""
    return p(x)


@dataclass(frozen=True)
class FactoredQuadratic:
    """The right-hand side a_o*b_o*(x - r1)*(x - r2), kept factored.

    The two scale factors a_o and b_o stay separate because the
    separation step assigns a_o*(x-r1) and b_o*(x-r2) to different
    exponential factor equations.
    """

    a_o: float
    b_o: float
    r1: float
    r2: float

    def __post_init__(self):
        if self.a_o == 0.0 or self.b_o == 0.0:
            raise DomainError("FactoredQuadratic needs nonzero scales a_o, b_o")

    def __call__(self, x):
        return self.a_o * self.b_o * (x - self.r1) * (x - self.r2)

    def expand(self) -> Polynomial:
        s = self.a_o * self.b_o
        return Polynomial((s * self.r1 * self.r2,
                           -s * (self.r1 + self.r2),
                           s))


def from_quantum(lam: float, q: float = 1.0) -> FactoredQuadratic:
    """Factored right side of the two-well eigenvalue condition.

    The determinant condition (q-d)(q*lam-d) = q^2*lam*e^{-2dR}
    rearranges to e^{-2dR} = (d-q)(d-lam*q)/(lam*q^2), i.e. scales
    (1/q, 1/(lam*q)) and roots (q, lam*q).  For q=1 this is the
    canonical e^{-2xR} = (1-x)(lam-x)/lam.
    """
    lam = float(lam)
    q = float(q)
    if lam == 0.0:
        raise DomainError("charge ratio lam must be nonzero")
    if q <= 0.0 or not math.isfinite(q):
        raise DomainError(f"charge q must be positive, got {q!r}")
    return FactoredQuadratic(a_o=1.0 / q, b_o=1.0 / (lam * q), r1=q, r2=lam * q)
