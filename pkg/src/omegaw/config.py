"""Central numeric tolerances.

One frozen instance (`TOL`) is shared package-wide so tests and the CLI
agree on what "converged" and "certified" mean.  Construct a custom
`Tolerances` and pass it explicitly to override per call site.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Package-wide numeric thresholds.

    Attributes
    ----------
    w_rel : float
        Relative residual target for Lambert W iterations.
    w_maxiter : int
        Iteration cap for Newton/Halley loops before ConvergenceError.
    root_certify : float
        Residual bound (relative to a local scale) for accepting a root.
    root_xtol : float
        Abscissa tolerance for bracket refinement.
    pole_guard : float
        Minimum distance from a real pole for a certified root.
    series_switch : float
        Branch-point offset below which the series value is used as is.
    """

    w_rel: float = 1e-15
    w_maxiter: int = 50
    root_certify: float = 1e-10
    root_xtol: float = 1e-13
    pole_guard: float = 1e-8
    series_switch: float = 2e-3


TOL = Tolerances()
