"""Bound states of the double-Dirac-delta well.

The potential V(x) = -q d(x) - lam*q d(x - R) binds states e^{-d|x|}
whose decay parameter d makes the 2x2 peak-matching determinant vanish:

    (q - d)(lam*q - d) - q^2 lam e^{-2dR} = 0,

with energies E = -d^2/2.  Rearranged, the condition is the
exponential-quadratic canonical form

    e^{-2dR} = (d - q)(d - lam*q) / (q^2 lam),

handled by `solver` (and by `separation` wherever a real separation
constant exists).  The equal-charge case lam = 1 closes in Lambert W:
d = q + W(+-qR e^{-qR})/R, the + sign giving the symmetric (gerade)
level and the - sign the antisymmetric (ungerade) one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, NoConvergenceError
from .lambertw import lambert_w_scaled
from .poly import Polynomial, from_quantum
from .solver import RootCertificate, TranscendentalEquation, residual, solve_all

__all__ = [
    "WellSpec",
    "secular_matrix",
    "secular_determinant",
    "d_equal_charge",
    "d_general",
    "energy",
]

_CONTINUUM_TOL = 1e-8


@dataclass(frozen=True)
class WellSpec:
    """Double-delta well: charge q at the origin, lam*q at distance R."""

    q: float
    lam: float
    R: float

    def __post_init__(self):
        for name in ("q", "lam", "R"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.q > 0.0 and math.isfinite(self.q)):
            raise DomainError(f"charge q must be finite and positive, got {self.q!r}")
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise DomainError(f"separation R must be finite and positive, got {self.R!r}")
        if self.lam == 0.0 or not math.isfinite(self.lam):
            raise DomainError(f"charge ratio lam must be finite and nonzero, got {self.lam!r}")


def secular_matrix(spec: WellSpec, d: float) -> np.ndarray:
    """Peak-matching matrix whose determinant vanishes at eigenvalues."""
    e = math.exp(-d * spec.R)
    return np.array([[spec.q - d, spec.q * e],
                     [spec.q * spec.lam * e, spec.q * spec.lam - d]])


def secular_determinant(spec: WellSpec, d: float) -> float:
    """(q - d)(lam q - d) - q^2 lam e^{-2dR}, evaluated directly."""
    return ((spec.q - d) * (spec.q * spec.lam - d)
            - spec.q * spec.q * spec.lam * math.exp(-2.0 * d * spec.R))


def d_equal_charge(q: float, R: float, parity: int = 1, branch: int = 0) -> float:
    """Equal-charge (lam = 1) closed form d = q + W(parity qR e^{-qR})/R.

    parity +1 is the gerade level (branch must be 0; the W argument is
    positive), parity -1 the ungerade one (branches 0 and -1 are both
    real since -qRe^{-qR} >= -1/e).  For qR <= 1 the ungerade branch-0
    value is exactly 0: the level sits at the continuum edge.
    """
    q = float(q)
    R = float(R)
    if not (q > 0.0 and math.isfinite(q)):
        raise DomainError(f"charge q must be finite and positive, got {q!r}")
    if not (R > 0.0 and math.isfinite(R)):
        raise DomainError(f"separation R must be finite and positive, got {R!r}")
    if parity not in (1, -1):
        raise DomainError(f"parity must be +1 or -1, got {parity!r}")
    return q + lambert_w_scaled(q * R, sign=parity, branch=branch) / R


def d_general(spec: WellSpec) -> list[RootCertificate]:
    """All certified real eigenvalue parameters d >= 0 of the well.

    Roots come from the canonical-form equation through `solver` on the
    interval (-0.25/R, max(q(1+lam), q) + 1].  The determinant always
    vanishes at d = 0 (the continuum edge); that root is kept and
    flagged 'at_continuum' rather than dropped, while strictly negative
    roots (virtual levels) are discarded.  Each certificate is
    re-checked against the determinant form and carries E = -d^2/2.
    """
    fq = from_quantum(spec.lam, spec.q)
    eq = TranscendentalEquation(sign=-1, k=2.0 * spec.R, P=fq.expand(),
                                Q=Polynomial((1.0,)))
    lo = -0.25 / spec.R
    hi = max(spec.q * (1.0 + spec.lam), spec.q) + 1.0
    scale = max(1.0, spec.q * spec.q * abs(spec.lam))
    out = []
    for cert in solve_all(eq, interval=(lo, hi)):
        if abs(cert.x) <= _CONTINUUM_TOL:
            cert = replace(cert, x=0.0, residual=abs(residual(eq, 0.0)),
                           flags=tuple(cert.flags) + ("at_continuum",))
        elif cert.x < 0.0:
            continue
        sec = abs(secular_determinant(spec, cert.x))
        if sec > 1e-10 * scale:
            raise NoConvergenceError(
                f"root d={cert.x!r} passed canonical-form certification but "
                f"misses the determinant form by {sec:.3e}")
        out.append(replace(cert, energy=energy(cert.x)))
    return out


def energy(d: float) -> float:
    """Bound-state energy E = -d^2/2."""
    d = float(d)
    return -0.5 * d * d
