"""Command-line front end emitting curve, distribution, and grid data files.

Subcommands reproduce the standard result displays as deterministic CSV
or JSON files: Mandel-Q curves (``qparam``), photon number
distributions (``pnd``), static and loss-evolved Wigner grids
(``wigner``, ``evolve``), sub-Poissonian squeeze thresholds
(``threshold``), and the closed-form-versus-oracle verification suites
(``verify``).  Range flags use ``a:b:step`` grammar; single values are
plain numbers.  Exit codes: 0 success, 1 failed verification or
diagnosed numeric trouble, 2 bad flags.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import fock_oracle as oracle
from .channel import (
    threshold_kt,
    wigner_evolved_grid,
    wigner_evolved_numeric,
    wigner_evolved_point,
)
from .distributions import pnd_profile
from .errors import PastsError, UndefinedQError
from .gridio import (
    grid_csv_text,
    grid_json_dict,
    json_text,
    table_csv_text,
)
from .kernel import StateParams
from .moments import mandel_q, norm_ladder, photon_moments, q_threshold_r
from .wigner import (
    auto_window,
    wigner_grid,
    wigner_m1_coeffs,
    wigner_point,
    wigner_values,
)

CUTOFF_ENV = "PASTS_CUTOFF"

DEFAULT_EVOLVE_KT = (0.05, 0.15, 0.2, 0.4)

# Shared phase-space probe set for point-by-point oracle comparisons.
PROBES = (
    (0.0, 0.0), (0.7, -0.3), (-0.7, 0.3), (1.2, 0.9), (-1.2, -0.9),
    (0.5, 1.1), (-0.5, -1.1), (1.4, 0.0), (0.0, 1.4),
)


def parse_range(text: str) -> list[float]:
    """``a:b:step`` to an inclusive list; a plain number to a singleton."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a number or a:b:step, got {text!r}"
        ) from None
    if lo == hi:
        return [lo]
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"need a <= b and step > 0 in {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(count + 1)]


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"negative count in {text!r}")
    return values


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated numbers, got {text!r}"
        ) from None


def parse_window(text: str) -> tuple[float, float, float, float] | None:
    """Half-width shorthand, explicit corners, or ``auto``."""
    if text == "auto":
        return None
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a half-width, x0,x1,y0,y1, or auto, got {text!r}"
        ) from None
    if len(parts) == 1:
        half = parts[0]
        if half <= 0:
            raise argparse.ArgumentTypeError("window half-width must be > 0")
        return (-half, half, -half, half)
    if len(parts) == 4:
        x0, x1, y0, y1 = parts
        if x0 >= x1 or y0 >= y1:
            raise argparse.ArgumentTypeError(f"degenerate window {text!r}")
        return (x0, x1, y0, y1)
    raise argparse.ArgumentTypeError(f"window takes 1 or 4 numbers, got {text!r}")


def _emit(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _state(args: argparse.Namespace) -> StateParams:
    return StateParams(
        nbar=args.nbar,
        r=args.r,
        beta_q=getattr(args, "beta_q", 0.0),
        beta_p=getattr(args, "beta_p", 0.0),
        m=args.m,
    )


def _resolve_window(args: argparse.Namespace, params: StateParams):
    if args.window is None:
        return auto_window(params)
    return args.window


def cmd_qparam(args: argparse.Namespace) -> int:
    rows = []
    for m in args.m:
        for r in args.r:
            params = StateParams(nbar=args.nbar, r=r, beta_q=0.0, beta_p=0.0, m=m)
            try:
                q = mandel_q(params)
            except UndefinedQError:
                q = None
            rows.append((r, m, q))
    if args.format == "csv":
        _emit(args.output, table_csv_text(("r", "m", "q"), rows))
    else:
        doc = {
            "kind": "qparam",
            "nbar": args.nbar,
            "columns": ["r", "m", "q"],
            "rows": [list(row) for row in rows],
        }
        _emit(args.output, json_text(doc))
    return 0


def cmd_pnd(args: argparse.Namespace) -> int:
    params = _state(args)
    profile = pnd_profile(params, args.nmax)
    rows = [(n, float(p)) for n, p in enumerate(profile.probs)]
    if args.format == "csv":
        _emit(args.output, table_csv_text(("n", "probability"), rows))
    else:
        doc = {
            "kind": "pnd",
            "params": {
                "nbar": params.nbar, "r": params.r,
                "beta_q": params.beta_q, "beta_p": params.beta_p,
                "m": params.m,
            },
            "columns": ["n", "probability"],
            "rows": [list(row) for row in rows],
        }
        _emit(args.output, json_text(doc))
    return 0


def cmd_wigner(args: argparse.Namespace) -> int:
    params = _state(args)
    grid = wigner_grid(params, _resolve_window(args, params), args.n, args.n)
    if args.format == "csv":
        _emit(args.output, grid_csv_text(grid))
    else:
        _emit(args.output, json_text(grid_json_dict(grid)))
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    params = _state(args)
    window = _resolve_window(args, params)
    kts = sorted(set(args.kt))
    minima = []
    names = []
    for kt in kts:
        grid = wigner_evolved_grid(params, kt, window, args.n, args.n)
        name = f"{args.output}_kt{kt!r}.{args.format}"
        if args.format == "csv":
            _emit(name, grid_csv_text(grid))
        else:
            _emit(name, json_text(grid_json_dict(grid)))
        names.append(name)
        minima.append(grid.min_location()[0])

    threshold = None
    bracket = [
        (kts[i], kts[i + 1])
        for i in range(len(kts) - 1)
        if minima[i] < 0.0 <= minima[i + 1]
    ]
    if bracket:
        lo, hi = bracket[0]
        threshold = threshold_kt(params, lo, hi, window, args.n, args.n)
    report = {
        "kind": "evolve-report",
        "params": {
            "nbar": params.nbar, "r": params.r,
            "beta_q": params.beta_q, "beta_p": params.beta_p,
            "m": params.m,
        },
        "window": list(window),
        "shape": [args.n, args.n],
        "kt": kts,
        "grid_min": minima,
        "threshold_kt": threshold,
        "files": names,
    }
    _emit(f"{args.output}_report.json", json_text(report))
    return 0


def cmd_threshold(args: argparse.Namespace) -> int:
    if len(args.r) < 2:
        raise PastsError("threshold needs an --r range a:b:step with b > a")
    r_lo, r_hi = args.r[0], args.r[-1]
    step = args.r[1] - args.r[0]
    rows = []
    for nbar in args.nbar:
        for m in args.m:
            rows.append((nbar, m, q_threshold_r(nbar, m, r_lo, r_hi, step, args.tol)))
    if args.format == "csv":
        _emit(args.output, table_csv_text(("nbar", "m", "r_threshold"), rows))
    else:
        doc = {
            "kind": "threshold",
            "columns": ["nbar", "m", "r_threshold"],
            "rows": [list(row) for row in rows],
        }
        _emit(args.output, json_text(doc))
    return 0


def _oracle_eval(compute, cutoff: int | None):
    """Run an oracle computation at a fixed cutoff or up the ladder."""
    if cutoff is not None:
        return compute(cutoff)
    return oracle.with_cutoff_ladder(compute)


_VERIFY_GRID = [
    (nbar, r) for nbar in (0.0, 0.5, 1.0) for r in (-0.5, 0.0, 0.3, 0.8)
]
_VERIFY_DISPLACED = StateParams(nbar=0.5, r=0.3, beta_q=0.8, beta_p=-0.4, m=0)


def _verify_norms(cutoff: int | None) -> list[dict]:
    worst = 0.0
    count = 0
    for nbar, r in _VERIFY_GRID:
        base = StateParams(nbar=nbar, r=r, beta_q=0.0, beta_p=0.0, m=0)
        closed = norm_ladder(base, 6)
        for m, value in enumerate(closed):
            ref = _oracle_eval(
                lambda c, mm=m: oracle.oracle_norm(base.with_m(mm), cutoff=c), cutoff
            )
            worst = max(worst, abs(value - ref) / abs(ref))
            count += 1
    displaced = _VERIFY_DISPLACED.with_m(2)
    ref = _oracle_eval(
        lambda c: oracle.oracle_norm(displaced, cutoff=c), cutoff
    )
    value = norm_ladder(displaced, 1)[0]
    worst = max(worst, abs(value - ref) / abs(ref))
    return [_check("norms", worst, 1e-6, f"{count + 1} normalization constants")]


def _verify_moments(cutoff: int | None) -> list[dict]:
    worst = 0.0
    count = 0
    states = [
        StateParams(nbar=nbar, r=r, beta_q=0.0, beta_p=0.0, m=m)
        for nbar, r in _VERIFY_GRID
        for m in (0, 1, 3, 5)
    ] + [_VERIFY_DISPLACED.with_m(m) for m in (0, 2)]
    for params in states:
        if params.nbar == 0 and params.r == 0 and params.m == 0 and not params.displaced:
            continue  # vacuum: zero mean, Q undefined on both sides
        closed = photon_moments(params)
        ref = _oracle_eval(
            lambda c: oracle.oracle_moments(oracle.build_pasts(params, cutoff=c)),
            cutoff,
        )
        worst = max(worst, abs(closed.mean - ref.mean) / max(abs(ref.mean), 1.0))
        worst = max(
            worst,
            abs(closed.second_factorial - ref.second_factorial)
            / max(abs(ref.second_factorial), 1.0),
        )
        worst = max(
            worst, abs(closed.mandel_q - ref.mandel_q) / max(abs(ref.mandel_q), 1.0)
        )
        count += 1
    return [_check("moments", worst, 1e-6, f"{count} states")]


def _verify_pnd(cutoff: int | None) -> list[dict]:
    worst = 0.0
    states = [
        StateParams(nbar=0.0, r=0.3, beta_q=0.0, beta_p=0.0, m=1),
        StateParams(nbar=0.5, r=0.3, beta_q=0.0, beta_p=0.0, m=5),
        StateParams(nbar=1.0, r=0.8, beta_q=0.0, beta_p=0.0, m=5),
        StateParams(nbar=0.3, r=0.0, beta_q=0.0, beta_p=0.0, m=3),
        _VERIFY_DISPLACED.with_m(2),
    ]
    for params in states:
        profile = pnd_profile(params, 40)
        dm = _oracle_eval(
            lambda c: oracle.build_pasts(params, cutoff=c), cutoff
        )
        for n in range(41):
            worst = max(worst, abs(profile.probs[n] - oracle.oracle_pnd(dm, n)))
    return [_check("pnd", worst, 1e-7, f"{len(states)} states, n <= 40")]


def _verify_wigner(cutoff: int | None) -> list[dict]:
    worst_center = 0.0
    for nbar, r in _VERIFY_GRID:
        p0 = StateParams(nbar=nbar, r=r, beta_q=0.0, beta_p=0.0, m=0)
        target = 1.0 / (math.pi * (2.0 * nbar + 1.0))
        worst_center = max(
            worst_center, abs(wigner_point(p0, 0.0, 0.0) - target) / target
        )
        p1 = p0.with_m(1)
        target1 = wigner_m1_coeffs(p1).coef_const / math.pi
        worst_center = max(
            worst_center,
            abs(wigner_point(p1, 0.0, 0.0) - target1) / abs(target1),
        )

    worst_probe = 0.0
    states = [
        StateParams(nbar=0.5, r=0.3, beta_q=0.0, beta_p=0.0, m=2),
        StateParams(nbar=1.0, r=-0.5, beta_q=0.0, beta_p=0.0, m=3),
        _VERIFY_DISPLACED.with_m(3),
    ]
    xs = np.array([p[0] for p in PROBES])
    ys = np.array([p[1] for p in PROBES])
    for params in states:
        vals = wigner_values(params, xs, ys)
        dm = _oracle_eval(lambda c: oracle.build_pasts(params, cutoff=c), cutoff)
        for k, (x, y) in enumerate(PROBES):
            worst_probe = max(worst_probe, abs(vals[k] - oracle.oracle_wigner(dm, x, y)))

    worst_mass = 0.0
    for params in states + [StateParams(nbar=0.5, r=0.3, beta_q=0.0, beta_p=0.0, m=0)]:
        grid = wigner_grid(params, auto_window(params), 201, 201)
        worst_mass = max(worst_mass, abs(grid.mass() - 1.0))

    violations = 0
    for nbar in np.arange(0.0, 3.0 + 1e-9, 0.05):
        for r in np.arange(-1.5, 1.5 + 1e-9, 0.05):
            p1 = StateParams(nbar=float(nbar), r=float(r), beta_q=0.0, beta_p=0.0, m=1)
            if not wigner_m1_coeffs(p1).coef_const < 0.0:
                violations += 1

    checks = [
        _check("wigner-centers", worst_center, 1e-10, "m=0 and m=1 closed centers"),
        _check("wigner-probes", worst_probe, 1e-7, "9-point oracle probes, m <= 3"),
        _check("wigner-mass", worst_mass, 1e-4, "auto-window grid mass"),
        _check("wigner-negative-const", float(violations), 0.5, "lattice violations"),
    ]
    return checks


def _verify_evolved(cutoff: int | None) -> list[dict]:
    probe5 = PROBES[:5]
    worst_kraus = 0.0
    states = [
        StateParams(nbar=0.5, r=0.3, beta_q=0.0, beta_p=0.0, m=1),
        StateParams(nbar=1.0, r=0.8, beta_q=0.0, beta_p=0.0, m=2),
        StateParams(nbar=0.0, r=-0.5, beta_q=0.0, beta_p=0.0, m=3),
    ]
    for params in states:
        dm = _oracle_eval(lambda c: oracle.build_pasts(params, cutoff=c), cutoff)
        for kt in (0.05, 0.2, 0.4):
            damped = oracle.damp(dm, kt)
            for x, y in probe5:
                worst_kraus = max(
                    worst_kraus,
                    abs(
                        wigner_evolved_point(params, kt, x, y)
                        - oracle.oracle_wigner(damped, x, y)
                    ),
                )

    worst_quad = 0.0
    pq = StateParams(nbar=0.5, r=0.3, beta_q=0.0, beta_p=0.0, m=3)
    for kt in (0.05, 0.2):
        for x, y in probe5:
            worst_quad = max(
                worst_quad,
                abs(
                    wigner_evolved_numeric(pq, kt, x, y)
                    - wigner_evolved_point(pq, kt, x, y)
                ),
            )

    late = StateParams(nbar=1.0, r=0.8, beta_q=0.0, beta_p=0.0, m=2)
    grid = wigner_evolved_grid(late, 20.0, (-4.0, 4.0, -4.0, 4.0), 101, 101)
    gx, gy = np.meshgrid(grid.xs(), grid.ys())
    vacuum = np.exp(-(gx * gx + gy * gy)) / math.pi
    worst_late = float(np.max(np.abs(grid.values - vacuum)))

    pm = StateParams(nbar=0.5, r=0.3, beta_q=0.0, beta_p=0.0, m=1)
    minima = [
        wigner_evolved_grid(pm, kt, (-4.0, 4.0, -4.0, 4.0), 121, 121).min_location()[0]
        for kt in (0.0,) + DEFAULT_EVOLVE_KT
    ]
    monotone = all(minima[i] <= minima[i + 1] for i in range(len(minima) - 1))

    return [
        _check("evolved-kraus", worst_kraus, 1e-6, "closed form vs Kraus oracle"),
        _check("evolved-quadrature", worst_quad, 5e-5, "closed form vs convolution"),
        _check("evolved-late-time", worst_late, 1e-8, "kt=20 grid vs vacuum"),
        _check(
            "evolved-monotone-min", 0.0 if monotone else 1.0, 0.5,
            "grid minimum non-decreasing in kt",
        ),
    ]


def _check(name: str, worst: float, tolerance: float, detail: str) -> dict:
    return {
        "name": name,
        "worst": worst,
        "tolerance": tolerance,
        "pass": bool(worst <= tolerance),
        "detail": detail,
    }


_VERIFY_SCOPES = {
    "norms": _verify_norms,
    "moments": _verify_moments,
    "pnd": _verify_pnd,
    "wigner": _verify_wigner,
    "evolved": _verify_evolved,
}


def cmd_verify(args: argparse.Namespace) -> int:
    cutoff = args.cutoff
    if cutoff is None and CUTOFF_ENV in os.environ:
        try:
            cutoff = int(os.environ[CUTOFF_ENV])
        except ValueError:
            raise PastsError(
                f"{CUTOFF_ENV} must be an integer, got {os.environ[CUTOFF_ENV]!r}"
            ) from None
    scopes = list(_VERIFY_SCOPES) if args.scope == "all" else [args.scope]
    checks = []
    for scope in scopes:
        checks.extend(_VERIFY_SCOPES[scope](cutoff))
    report = {
        "kind": "verify-report",
        "scope": args.scope,
        "cutoff": "ladder" if cutoff is None else cutoff,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
    _emit(args.output, json_text(report))
    return 0 if report["pass"] else 1


def _add_output_flags(sub: argparse.ArgumentParser, default: str = "-") -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="output format (default csv)")
    sub.add_argument("-o", "--output", default=default,
                     help=f"output path, - for stdout (default {default})")


def _add_state_flags(sub: argparse.ArgumentParser, displaced: bool = True) -> None:
    sub.add_argument("--nbar", type=float, required=True,
                     help="thermal occupation of the input field")
    sub.add_argument("--r", type=float, required=True, help="squeeze parameter")
    sub.add_argument("--m", type=int, required=True, help="number of added photons")
    if displaced:
        sub.add_argument("--beta-q", type=float, default=0.0,
                         help="displacement, position component (default 0)")
        sub.add_argument("--beta-p", type=float, default=0.0,
                         help="displacement, momentum component (default 0)")


def _add_grid_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--window", type=parse_window, default="4",
                     help="half-width, x0,x1,y0,y1, or auto (default 4)")
    sub.add_argument("--n", type=int, default=201,
                     help="grid points per axis (default 201)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pasts",
        description="Photon-added squeezed thermal states: statistics, "
                    "phase-space grids, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qparam", help="Mandel Q curves over a squeeze range")
    q.add_argument("--nbar", type=float, required=True)
    q.add_argument("--m", type=parse_int_list, required=True,
                   help="comma-separated photon-addition counts")
    q.add_argument("--r", type=parse_range, required=True,
                   help="squeeze range a:b:step or single value")
    _add_output_flags(q)
    q.set_defaults(func=cmd_qparam)

    p = sub.add_parser("pnd", help="photon number distribution")
    _add_state_flags(p)
    p.add_argument("--nmax", type=int, default=30,
                   help="largest photon number emitted (default 30)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_pnd)

    w = sub.add_parser("wigner", help="static Wigner grid")
    _add_state_flags(w)
    _add_grid_flags(w)
    _add_output_flags(w)
    w.set_defaults(func=cmd_wigner)

    e = sub.add_parser("evolve", help="loss-evolved Wigner grids plus scan report")
    _add_state_flags(e, displaced=False)
    e.add_argument("--kt", type=parse_float_list,
                   default=list(DEFAULT_EVOLVE_KT),
                   help="comma-separated decay times (default 0.05,0.15,0.2,0.4)")
    _add_grid_flags(e)
    e.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="grid format (default csv)")
    e.add_argument("-o", "--output", default="evolve",
                   help="file prefix for grids and report (default evolve)")
    e.set_defaults(func=cmd_evolve)

    t = sub.add_parser("threshold", help="squeeze threshold where Q crosses zero")
    t.add_argument("--nbar", type=parse_float_list, required=True,
                   help="comma-separated thermal occupations")
    t.add_argument("--m", type=parse_int_list, required=True,
                   help="comma-separated photon-addition counts")
    t.add_argument("--r", type=parse_range, default="0:1.5:0.01",
                   help="bracket scan range a:b:step (default 0:1.5:0.01)")
    t.add_argument("--tol", type=float, default=1e-4,
                   help="bisection tolerance on r (default 1e-4)")
    _add_output_flags(t)
    t.set_defaults(func=cmd_threshold)

    v = sub.add_parser("verify", help="closed forms versus brute-force oracle")
    v.add_argument("--scope", choices=("all",) + tuple(_VERIFY_SCOPES),
                   default="all", help="suite selection (default all)")
    v.add_argument("--cutoff", type=int, default=None,
                   help=f"fixed Fock cutoff; default escalates "
                        f"{oracle.CUTOFF_LADDER} (env {CUTOFF_ENV})")
    v.add_argument("-o", "--output", default="-",
                   help="report path, - for stdout (default -)")
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PastsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
