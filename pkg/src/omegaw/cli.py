"""Command-line front end.

Every module is reachable through one subcommand, with machine-readable
output for reproduction scripts and sweeps.  One invocation emits one
record: the command name, the parsed inputs, a list of results each
carrying the value, a freshly recomputed residual, the W branch path
that produced it, and any flags, plus the package version.  `--json`
prints the record as one line of JSON with sorted keys and full
round-trip float precision; `--csv` prints sweep rows under a header;
the default human mode prints 12 significant digits.

Exit codes: 0 success, 2 domain error (the message names the violated
precondition), 3 no solution or no convergence, 64 usage error.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys

from . import __version__
from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    NoConvergenceError,
    NoSolutionError,
    PoleCollisionError,
)
from .gravity import ThreeBodySpec, three_body_residual, three_body_solve, two_body_roundtrip
from .identities import addition_law_rhs, omega_n_product, tetration
from .lambertw import BranchedPoint, lambert_w
from .poly import Polynomial
from .quantum import WellSpec, d_general, secular_determinant
from .separation import (
    SeparationProblem,
    demkov_lambda,
    solve_canonical,
    solve_rational_all,
    solve_separation_all,
    special_solution_1,
    special_solution_2,
)
from .solver import TranscendentalEquation, residual as equation_residual, solve_all

__all__ = ["run", "main"]

_DEFAULT_TOL = 1e-10
_BRANCH_PAIRS = ((0, 0), (0, -1), (-1, 0), (-1, -1))


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _scalar(text: str):
    """A real or complex number; '1+2j' style for complex."""
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError(f"empty list: {text!r}")
    return vals


def _grid(text: str) -> list[float]:
    """lo:hi:step -> [lo, lo+step, ..., <= hi] (endpoint included when hit)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be numeric lo:hi:step, got {text!r}")
    if not (step > 0.0 and hi >= lo and all(map(math.isfinite, (lo, hi, step)))):
        raise argparse.ArgumentTypeError(f"grid needs step > 0 and hi >= lo: {text!r}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(n + 1)]


def _points(text: str) -> list[BranchedPoint]:
    """'z@branch,z@branch,...'; branch defaults to 0 (use --points=-1@-1
    when the first value starts with a minus sign)."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "@" in tok:
            zs, _, bs = tok.rpartition("@")
            try:
                branch = int(bs)
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad branch in point {tok!r}")
        else:
            zs, branch = tok, 0
        out.append(BranchedPoint(_scalar(zs), branch))
    if not out:
        raise argparse.ArgumentTypeError(f"empty point list: {text!r}")
    return out


# ---------------------------------------------------------------- output

def _jnum(v: float) -> str:
    # repr is the shortest digit string that round-trips the exact
    # float, never more than 17 significant digits
    if not math.isfinite(v):
        return "null"
    return repr(float(v))


def _jval(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _jnum(v)
    if isinstance(v, complex):
        return '{"imag":%s,"real":%s}' % (_jnum(v.imag), _jnum(v.real))
    if isinstance(v, str):
        import json
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_jval(x) for x in v) + "]"
    if isinstance(v, dict):
        import json
        items = sorted(v.items())
        return "{" + ",".join(f"{json.dumps(k)}:{_jval(x)}" for k, x in items) + "}"
    raise TypeError(f"unserializable value {v!r}")


def _hnum(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.12g}{v.imag:+.12g}j"
    return f"{float(v):.12g}"


def _emit(ns, command, inputs, results, csv_rows=None):
    if ns.json:
        record = {
            "command": command,
            "inputs": inputs,
            "results": results,
            "version": __version__,
        }
        sys.stdout.write(_jval(record) + "\n")
        return
    if ns.csv:
        if csv_rows is not None:
            header, rows = csv_rows
        else:
            header = ["value", "residual", "branch-path", "flags"]
            rows = [[r["value"], r["residual"], r["branch-path"],
                     ";".join(r["flags"])] for r in results]
        sys.stdout.write(",".join(header) + "\n")
        for row in rows:
            sys.stdout.write(",".join(
                _jnum(c) if isinstance(c, float) else str(c) for c in row) + "\n")
        return
    sys.stdout.write(f"{command}\n")
    for r in results:
        line = f"  value={_hnum(r['value'])} residual={r['residual']:.3e}"
        if r["branch-path"]:
            line += f" branch-path={r['branch-path']}"
        if r["flags"]:
            line += " flags=" + ",".join(r["flags"])
        extra = r.get("extra") or {}
        for k in sorted(extra):
            v = extra[k]
            line += f" {k}={_hnum(v) if isinstance(v, (int, float, complex)) else v}"
        sys.stdout.write(line + "\n")


def _result(value, resid, branch_path="", flags=(), extra=None):
    return {
        "value": value,
        "residual": abs(resid),
        "branch-path": branch_path,
        "flags": list(flags),
        "extra": {k: v for k, v in sorted((extra or {}).items())
                  if not (isinstance(v, float) and not math.isfinite(v))},
    }


def _recheck(results, tol, scale=1.0):
    bad = [r for r in results if r["residual"] > tol * max(1.0, scale)]
    if bad:
        worst = max(r["residual"] for r in bad)
        raise NoConvergenceError(
            f"re-checked residual {worst:.3e} exceeds {tol:.1e} * scale; "
            f"pass --tol to relax the bound if this is intended")


# ------------------------------------------------------------- handlers

def _cmd_lambertw(ns):
    z = ns.z
    w = lambert_w(z, ns.branch)
    resid = abs(w * (math.exp(w) if isinstance(w, float) else cmath.exp(w)) - z)
    results = [_result(w, resid, branch_path=f"W({ns.branch})")]
    _recheck(results, ns.tol, scale=abs(z))
    inputs = {"branch": ns.branch, "z": z}
    return inputs, results, None


def _cmd_identity_check(ns):
    inputs = {"which": ns.which}
    if ns.which == "addition":
        if ns.a is None or ns.b is None:
            raise _UsageError("identity-check --which addition needs --a and --b")
        f = addition_law_rhs(ns.a, ns.b)
        lhs = lambert_w(ns.a, 0) + lambert_w(ns.b, 0)
        rhs = lambert_w(f, 0)
        results = [_result(lhs, abs(lhs - rhs), branch_path="W(0)+W(0) vs W(0)",
                           extra={"folded_argument": f})]
        inputs.update(a=ns.a, b=ns.b)
    elif ns.which == "product":
        if not ns.points:
            raise _UsageError("identity-check --which product needs --points")
        direct = 1.0
        for p in ns.points:
            direct = direct * lambert_w(p.z, p.branch)
        via = omega_n_product(ns.points, intermediate_branch=ns.fold_branch)
        path = ",".join(f"W({p.branch})" for p in ns.points) + f";fold@W({ns.fold_branch})"
        results = [_result(via, abs(via - direct), branch_path=path)]
        inputs.update(points=[{"branch": p.branch, "z": p.z} for p in ns.points],
                      fold_branch=ns.fold_branch)
    elif ns.which == "tetration":
        if ns.alpha is None:
            raise _UsageError("identity-check --which tetration needs --alpha")
        h = tetration(ns.alpha)
        fixed = ns.alpha ** h if not isinstance(h, complex) else complex(ns.alpha) ** h
        results = [_result(h, abs(fixed - h), branch_path="exp(-W(0))")]
        inputs.update(alpha=ns.alpha)
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError(f"unknown identity {ns.which!r}")
    _recheck(results, ns.tol)
    return inputs, results, None


def _cmd_solve(ns):
    eq = TranscendentalEquation(sign=ns.sign, k=ns.k,
                                P=Polynomial(tuple(ns.P)),
                                Q=Polynomial(tuple(ns.Q)))
    certs = solve_all(eq, interval=(ns.lo, ns.hi))
    results = []
    for cr in certs:
        extra = {"multiplicity_hint": cr.multiplicity_hint}
        results.append(_result(cr.x, abs(equation_residual(eq, cr.x)),
                               flags=cr.flags, extra=extra))
    scale = max([1.0] + [abs(eq.P(cr.x)) for cr in certs])
    _recheck(results, ns.tol, scale=scale)
    inputs = {"P": list(ns.P), "Q": list(ns.Q), "hi": ns.hi, "k": ns.k,
              "lo": ns.lo, "sign": ns.sign}
    return inputs, results, None


def _quadratic_residual(p: SeparationProblem, x: float) -> float:
    return math.exp(-2.0 * x * p.R) - p.a_o * p.b_o * (x - p.r1) * (x - p.r2)


def _rational_residual(p: SeparationProblem, x: float) -> float:
    den = p.b_o * (x - p.r2)
    if den == 0.0:
        return math.inf
    return math.exp(-2.0 * x * p.R) - p.a_o * (x - p.r1) / den


def _cmd_separate(ns):
    if (ns.branch1 is None) != (ns.branch2 is None):
        raise _UsageError("--branch1 and --branch2 go together")
    pairs = _BRANCH_PAIRS if ns.branch1 is None else ((ns.branch1, ns.branch2),)
    p = SeparationProblem(r1=ns.r1, r2=ns.r2, a_o=ns.a_o, b_o=ns.b_o, R=ns.R)
    if ns.rational:
        solve_pair = solve_rational_all
        res_fn = _rational_residual
    else:
        solve_pair = solve_separation_all
        res_fn = _quadratic_residual
    if not ns.rational and ns.branch1 is None:
        sols = solve_canonical(p)
    else:
        sols = []
        for pair in pairs:
            for s in solve_pair(p, pair):
                if not any(abs(s.x - t.x) <= 1e-9 * (1.0 + abs(s.x)) for t in sols):
                    sols.append(s)
        sols.sort(key=lambda s: s.x)
    if not sols:
        raise NoSolutionError(f"no solution found for {p}")
    results = []
    for s in sols:
        extra = {"epsilon": s.epsilon, "u1": s.u1, "u2": s.u2,
                 "z1": s.z1, "z2": s.z2}
        flags = () if s.decomposed else ("direct",)
        results.append(_result(s.x, abs(res_fn(p, s.x)),
                               branch_path=f"W({s.branch1}),W({s.branch2})",
                               flags=flags, extra=extra))
    _recheck(results, ns.tol)
    inputs = {"R": ns.R, "a_o": ns.a_o, "b_o": ns.b_o,
              "r1": ns.r1, "r2": ns.r2, "rational": ns.rational}
    if ns.branch1 is not None:
        inputs["branch1"] = ns.branch1
        inputs["branch2"] = ns.branch2
    return inputs, results, None


def _demkov_result(R: float):
    lam, x = demkov_lambda(R)
    resid = math.exp(-2.0 * x * R) - (x - 1.0) * (x - lam) / lam
    return lam, x, abs(resid)


def _cmd_demkov(ns):
    if ns.R_grid is not None:
        rows = []
        results = []
        for R in ns.R_grid:
            lam, x, resid = _demkov_result(R)
            rows.append([R, lam, x])
            results.append(_result(lam, resid, extra={"R": R, "x": x}))
        _recheck(results, ns.tol)
        inputs = {"R-grid": ns.R_grid}
        return inputs, results, (["R", "lambda", "x"], rows)
    if ns.R is None:
        raise _UsageError("demkov needs --R or --R-grid")
    lam, x, resid = _demkov_result(ns.R)
    results = [_result(lam, resid, extra={"x": x})]
    _recheck(results, ns.tol)
    return {"R": ns.R}, results, None


def _cmd_special1(ns):
    sol = special_solution_1(ns.r2, ns.b_o, ns.R)
    p = SeparationProblem(r1=sol.r1, r2=ns.r2, a_o=sol.a_o, b_o=ns.b_o, R=ns.R)
    results = [_result(sol.x, abs(_quadratic_residual(p, sol.x)),
                       extra={"a_o": sol.a_o, "r1": sol.r1})]
    _recheck(results, ns.tol)
    return {"R": ns.R, "b_o": ns.b_o, "r2": ns.r2}, results, None


def _cmd_special2(ns):
    sol = special_solution_2(ns.r1, ns.b_o, ns.R)
    p = SeparationProblem(r1=ns.r1, r2=sol.r2, a_o=sol.a_o, b_o=ns.b_o, R=ns.R)
    results = [_result(sol.x, abs(_quadratic_residual(p, sol.x)),
                       extra={"a_o": sol.a_o, "r2": sol.r2})]
    _recheck(results, ns.tol)
    return {"R": ns.R, "b_o": ns.b_o, "r1": ns.r1}, results, None


def _quantum_results(q, lam, R):
    spec = WellSpec(q=q, lam=lam, R=R)
    out = []
    for cr in d_general(spec):
        resid = abs(secular_determinant(spec, cr.x))
        out.append(_result(cr.x, resid, flags=cr.flags,
                           extra={"energy": cr.energy}))
    return out


def _cmd_quantum(ns):
    if ns.R_grid is not None:
        rows = []
        results = []
        for R in ns.R_grid:
            for r in _quantum_results(ns.q, ns.lam, R):
                r["extra"]["R"] = R
                rows.append([R, r["value"], r["extra"]["energy"]])
                results.append(r)
        scale = max(1.0, ns.q * ns.q * abs(ns.lam))
        _recheck(results, ns.tol, scale=scale)
        inputs = {"R-grid": ns.R_grid, "lambda": ns.lam, "q": ns.q}
        return inputs, results, (["R", "d", "E"], rows)
    if ns.R is None:
        raise _UsageError("quantum needs --R or --R-grid")
    results = _quantum_results(ns.q, ns.lam, ns.R)
    scale = max(1.0, ns.q * ns.q * abs(ns.lam))
    _recheck(results, ns.tol, scale=scale)
    inputs = {"R": ns.R, "lambda": ns.lam, "q": ns.q}
    return inputs, results, None


def _cmd_gravity2map(ns):
    lam, R = two_body_roundtrip(ns.x, ns.a)
    results = [_result(lam, 0.0, extra={"R": R})]
    return {"a": ns.a, "x": ns.x}, results, None


def _gravity3_results(spec, interval):
    out = []
    for cr in three_body_solve(spec, interval):
        resid = abs(three_body_residual(spec, cr.x))
        out.append(_result(cr.x, resid, flags=cr.flags,
                           extra={"multiplicity_hint": cr.multiplicity_hint}))
    return out


def _cmd_gravity3(ns):
    if len(ns.m) != 3:
        raise _UsageError(f"--m needs exactly three masses, got {len(ns.m)}")
    m1, m2, m3 = ns.m
    interval = None
    if (ns.lo is None) != (ns.hi is None):
        raise _UsageError("--lo and --hi must be given together")
    if ns.lo is not None:
        interval = (ns.lo, ns.hi)
    if ns.q_grid is not None:
        rows = []
        results = []
        for q in ns.q_grid:
            spec = ThreeBodySpec(m1=m1, m2=m2, m3=m3, q=q, K=ns.K, R=ns.R)
            for r in _gravity3_results(spec, interval):
                r["extra"]["q"] = q
                rows.append([q, r["value"], r["residual"]])
                results.append(r)
        _recheck(results, ns.tol)
        inputs = {"K": ns.K, "R": ns.R, "m": list(ns.m), "q-grid": ns.q_grid}
        return inputs, results, (["q", "V", "residual"], rows)
    if ns.q is None:
        raise _UsageError("gravity3 needs --q or --q-grid")
    spec = ThreeBodySpec(m1=m1, m2=m2, m3=m3, q=ns.q, K=ns.K, R=ns.R)
    results = _gravity3_results(spec, interval)
    _recheck(results, ns.tol)
    inputs = {"K": ns.K, "R": ns.R, "m": list(ns.m), "q": ns.q}
    return inputs, results, None


# --------------------------------------------------------------- parser

def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true",
                     help="emit one JSON record with sorted keys")
    fmt.add_argument("--csv", action="store_true",
                     help="emit rows with a header line")
    common.add_argument("--tol", type=float, default=_DEFAULT_TOL,
                        help="re-check residual bound before printing "
                             f"(default {_DEFAULT_TOL:g})")

    parser = _Parser(prog="omegaw",
                     description="Lambert W, exponential-rational root "
                                 "solving, and their applications")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("lambertw", parents=[common],
                        help="evaluate W on a branch")
    sp.add_argument("--z", type=_scalar, required=True,
                    help="argument; real, or complex like 1+2j")
    sp.add_argument("--branch", type=int, default=0)
    sp.set_defaults(fn=_cmd_lambertw)

    sp = sub.add_parser("identity-check", parents=[common],
                        help="verify an identity at given arguments")
    sp.add_argument("--which", required=True,
                    choices=("addition", "product", "tetration"))
    sp.add_argument("--a", type=_scalar, help="addition: first argument")
    sp.add_argument("--b", type=_scalar, help="addition: second argument")
    sp.add_argument("--points", type=_points,
                    help="product: z@branch,... (use --points=... for a "
                         "leading minus sign)")
    sp.add_argument("--fold-branch", type=int, default=0,
                    help="product: branch for the folded W argument")
    sp.add_argument("--alpha", type=_scalar, help="tetration: tower base")
    sp.set_defaults(fn=_cmd_identity_check)

    sp = sub.add_parser("solve", parents=[common],
                        help="all roots of e^{sign*k*x} = P(x)/Q(x)")
    sp.add_argument("--sign", type=int, choices=(-1, 1), required=True)
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--P", type=_float_list, required=True,
                    help="coefficients low order first, e.g. 1,-2,1")
    sp.add_argument("--Q", type=_float_list, default=[1.0])
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.set_defaults(fn=_cmd_solve)

    sp = sub.add_parser("separate", parents=[common],
                        help="epsilon-separated solutions of the quadratic "
                             "or rational canonical equation")
    sp.add_argument("--r1", type=float, required=True)
    sp.add_argument("--r2", type=float, required=True)
    sp.add_argument("--a", "--a-o", dest="a_o", type=float, default=1.0)
    sp.add_argument("--b", "--b-o", dest="b_o", type=float, default=1.0)
    sp.add_argument("--R", type=float, required=True)
    sp.add_argument("--branch1", type=int,
                    help="restrict to one W branch pair (with --branch2)")
    sp.add_argument("--branch2", type=int)
    sp.add_argument("--rational", action="store_true",
                    help="rational shape e^{-2xR} = a(x-r1)/(b(x-r2))")
    sp.set_defaults(fn=_cmd_separate)

    sp = sub.add_parser("demkov", parents=[common],
                        help="tangency ratio lambda(R) and its root x")
    sp.add_argument("--R", type=float)
    sp.add_argument("--R-grid", dest="R_grid", type=_grid, help="lo:hi:step")
    sp.set_defaults(fn=_cmd_demkov)

    sp = sub.add_parser("special1", parents=[common],
                        help="elementary exact family fixing r1 and a_o")
    sp.add_argument("--r2", type=float, required=True)
    sp.add_argument("--b", "--b-o", dest="b_o", type=float, default=1.0)
    sp.add_argument("--R", type=float, required=True)
    sp.set_defaults(fn=_cmd_special1)

    sp = sub.add_parser("special2", parents=[common],
                        help="elementary exact family fixing r2 and a_o")
    sp.add_argument("--r1", type=float, required=True)
    sp.add_argument("--b", "--b-o", dest="b_o", type=float, default=1.0)
    sp.add_argument("--R", type=float, required=True)
    sp.set_defaults(fn=_cmd_special2)

    sp = sub.add_parser("quantum", parents=[common],
                        help="double-delta well decay constants d and energies")
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    sp.add_argument("--R", type=float)
    sp.add_argument("--R-grid", dest="R_grid", type=_grid, help="lo:hi:step")
    sp.set_defaults(fn=_cmd_quantum)

    sp = sub.add_parser("gravity2map", parents=[common],
                        help="map two-body (x, a) to the well's (lambda, R)")
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.set_defaults(fn=_cmd_gravity2map)

    sp = sub.add_parser("gravity3", parents=[common],
                        help="three-body determining equation roots V")
    sp.add_argument("--m", type=_float_list, required=True,
                    help="masses m1,m2,m3")
    sp.add_argument("--q", type=float, help="relative angle in radians")
    sp.add_argument("--q-grid", dest="q_grid", type=_grid, help="lo:hi:step")
    sp.add_argument("--K", type=float, required=True)
    sp.add_argument("--R", type=float, required=True)
    sp.add_argument("--lo", type=float, help="V scan interval start")
    sp.add_argument("--hi", type=float, help="V scan interval end")
    sp.set_defaults(fn=_cmd_gravity3)

    return parser


def run(argv: list[str]) -> int:
    """Parse argv, execute, print one record; return the exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        parser.print_usage(sys.stderr)
        return 64
    except SystemExit as e:  # --help prints and exits 0
        return int(e.code or 0)
    if getattr(ns, "fn", None) is None:
        parser.print_usage(sys.stderr)
        return 64
    if not (ns.tol > 0.0 and math.isfinite(ns.tol)):
        sys.stderr.write("usage error: --tol must be finite and positive\n")
        return 64
    try:
        inputs, results, csv_rows = ns.fn(ns)
    except _UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 64
    except (DomainError, DegenerateError, PoleCollisionError) as e:
        sys.stderr.write(f"domain error: {e}\n")
        return 2
    except NoSolutionError as e:
        sys.stderr.write(f"no solution: {e}\n")
        return 3
    except (NoConvergenceError, ConvergenceError) as e:
        sys.stderr.write(f"no convergence: {e}\n")
        return 3
    _emit(ns, ns.command, inputs, results, csv_rows)
    return 0


def main() -> None:  # pragma: no cover - thin shell wrapper
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
