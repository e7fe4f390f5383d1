"""Command-line interface.

Five commands: uncertainty, density, energy, coeffs, verify.  The
first four emit delimited reports (CSV or a JSON envelope) to stdout
or a file, optionally rendering a matplotlib figure of the same data
alongside; verify runs the invariant battery and emits its JSON
report.  Exit codes: 0 success, 1 failed verification, 2 invalid
request, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from typing import Optional

import numpy as np

from . import observables, verify
from .basis import PhysicsConfig
from .coherent import TOL_MAX, build_coefficients, family_by_name
from .errors import GrapheneError, InvalidRequestError, NumericalError
from .gridio import (
    GridRequest,
    GridResult,
    axis_values,
    parse_axis,
    parse_float_list,
    write_result,
)

_DEFAULT_GRID = (-3.0, 3.0, 41)
_DEFAULT_THETAS = (0.0, math.pi / 4.0, math.pi / 2.0)
_DEFAULT_R_LISTS = {
    "one": (1.0, 4.0, 5.0),
    "shifted": (1.0, 3.0, 5.0),
    "cubic": (1.0, 50.0, 100.0),
}
_DEFAULT_X_POINTS = 512


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphene-cs",
        description=(
            "Coherent states of a Dirac electron in graphene under a constant "
            "magnetic field: uncertainty products, densities, mean energies."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_alpha: bool, with_density_axes: bool) -> None:
        p.add_argument("--family", choices=("one", "shifted", "cubic"), required=True)
        p.add_argument("--b0", type=float, required=True, help="magnetic field, > 0")
        p.add_argument("--k", type=float, default=0.0, help="transverse wavenumber")
        p.add_argument("--tol", type=float, default=1e-15, help="series tail tolerance")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        p.add_argument("--plot", default=None, help="also render a figure to this file")
        if with_alpha:
            p.add_argument("--alpha-re", type=float, default=None)
            p.add_argument("--alpha-im", type=float, default=None)
            p.add_argument("--r", type=float, default=None, help="|alpha| of a single point")
            p.add_argument("--theta", type=float, default=None, help="arg(alpha) in radians")
        if with_density_axes:
            p.add_argument("--x", default=None, help="lo:hi:count x grid")
            p.add_argument("--r-list", default=None, help="comma-separated radii")
            p.add_argument("--theta-list", default=None, help="comma-separated angles")

    for name in ("uncertainty", "energy"):
        p = sub.add_parser(name, help=f"{name} report over alpha")
        add_common(p, with_alpha=True, with_density_axes=False)
        p.add_argument("--grid-re", default=None, help="lo:hi:count sweep of Re alpha")
        p.add_argument("--grid-im", default=None, help="lo:hi:count sweep of Im alpha")

    p = sub.add_parser("density", help="x-space probability density report")
    add_common(p, with_alpha=False, with_density_axes=True)

    p = sub.add_parser("coeffs", help="coefficient table of one state")
    add_common(p, with_alpha=True, with_density_axes=False)

    p = sub.add_parser("verify", help="run the invariant battery, emit JSON")
    p.add_argument("--output", default=None)
    return parser


def _point_alpha(args) -> Optional[complex]:
    cartesian = args.alpha_re is not None or args.alpha_im is not None
    polar = args.r is not None or args.theta is not None
    if cartesian and polar:
        raise InvalidRequestError("give alpha either as --alpha-re/--alpha-im or as --r/--theta")
    if cartesian:
        return complex(args.alpha_re or 0.0, args.alpha_im or 0.0)
    if polar:
        r = args.r if args.r is not None else 0.0
        if r < 0.0:
            raise InvalidRequestError(f"--r must be >= 0, got {r}")
        theta = args.theta if args.theta is not None else 0.0
        return r * complex(math.cos(theta), math.sin(theta))
    return None


def _alpha_request(args, command: str) -> GridRequest:
    alpha = _point_alpha(args)
    grid_re = getattr(args, "grid_re", None)
    grid_im = getattr(args, "grid_im", None)
    if alpha is not None and (grid_re is not None or grid_im is not None):
        raise InvalidRequestError("a single alpha point and a grid sweep are mutually exclusive")
    re_axis = im_axis = None
    if alpha is None and command == "coeffs":
        raise InvalidRequestError("coeffs needs a single alpha point: --alpha-re/--alpha-im or --r/--theta")
    if alpha is None:
        re_axis = parse_axis(grid_re, "--grid-re") if grid_re else _DEFAULT_GRID
        im_axis = parse_axis(grid_im, "--grid-im") if grid_im else _DEFAULT_GRID
    return GridRequest(
        command=command,
        family=args.family,
        b0=args.b0,
        k=args.k,
        tol=args.tol,
        fmt=args.fmt,
        alpha=alpha,
        re_axis=re_axis,
        im_axis=im_axis,
        output=args.output,
        plot=args.plot,
    )


def _validate_tol(tol: float) -> float:
    if not (0.0 < tol <= TOL_MAX):
        raise InvalidRequestError(f"--tol must lie in (0, {TOL_MAX}], got {tol!r}")
    return tol


def _config(req: GridRequest) -> PhysicsConfig:
    try:
        return PhysicsConfig(b0=req.b0, k=req.k)
    except GrapheneError as exc:
        raise InvalidRequestError(str(exc)) from exc


def _base_meta(req: GridRequest, cfg: PhysicsConfig) -> dict:
    return {
        "family": req.family,
        "config": {"b0": cfg.b0, "k": cfg.k, "omega": cfg.omega},
        "tol": req.tol,
    }


def _alpha_grid(req: GridRequest):
    if req.alpha is not None:
        yield (req.alpha.real, req.alpha.imag)
        return
    for re in axis_values(req.re_axis):
        for im in axis_values(req.im_axis):
            yield (float(re), float(im))


def run_uncertainty(req: GridRequest) -> GridResult:
    """Rows (re_alpha, im_alpha, var_z, var_p, product) over the alpha set."""
    cfg = _config(req)
    tol = _validate_tol(req.tol)
    fam = family_by_name(req.family)
    rows = []
    max_trunc = 0
    max_tail = 0.0
    for re, im in _alpha_grid(req):
        state = build_coefficients(fam, complex(re, im), cfg, tol)
        mv = observables.uncertainty_product(state)
        rows.append((re, im, mv.var_z, mv.var_p, mv.product))
        max_trunc = max(max_trunc, state.trunc_order)
        max_tail = max(max_tail, state.tail_bound)
    meta = _base_meta(req, cfg)
    meta["truncation"] = {"max_trunc_order": max_trunc, "max_tail_bound": max_tail}
    if req.re_axis:
        meta["re_axis"] = list(req.re_axis)
        meta["im_axis"] = list(req.im_axis)
    return GridResult("uncertainty", ("re_alpha", "im_alpha", "var_z", "var_p", "product"), rows, meta)


def run_energy(req: GridRequest) -> GridResult:
    """Rows (re_alpha, im_alpha, mean_energy) over the alpha set."""
    cfg = _config(req)
    tol = _validate_tol(req.tol)
    fam = family_by_name(req.family)
    rows = []
    max_trunc = 0
    max_tail = 0.0
    for re, im in _alpha_grid(req):
        state = build_coefficients(fam, complex(re, im), cfg, tol)
        rows.append((re, im, observables.mean_energy(state)))
        max_trunc = max(max_trunc, state.trunc_order)
        max_tail = max(max_tail, state.tail_bound)
    meta = _base_meta(req, cfg)
    meta["truncation"] = {"max_trunc_order": max_trunc, "max_tail_bound": max_tail}
    if req.re_axis:
        meta["re_axis"] = list(req.re_axis)
        meta["im_axis"] = list(req.im_axis)
    return GridResult("energy", ("re_alpha", "im_alpha", "mean_energy"), rows, meta)


def run_coeffs(req: GridRequest) -> GridResult:
    """Rows (n, re_coeff, im_coeff, prob) for a single state."""
    if req.alpha is None:
        raise InvalidRequestError("coeffs needs a single alpha point, not a grid")
    cfg = _config(req)
    tol = _validate_tol(req.tol)
    fam = family_by_name(req.family)
    state = build_coefficients(fam, req.alpha, cfg, tol)
    rows = [
        (n, c.real, c.imag, c.real * c.real + c.imag * c.imag)
        for n, c in enumerate(state.coeffs)
    ]
    meta = _base_meta(req, cfg)
    meta["alpha"] = {"re": req.alpha.real, "im": req.alpha.imag}
    meta["truncation"] = {"trunc_order": state.trunc_order, "tail_bound": state.tail_bound}
    return GridResult("coeffs", ("n", "re_coeff", "im_coeff", "prob"), rows, meta)


def run_density(req: GridRequest) -> GridResult:
    """Rows (x, r, theta, rho) plus one integral summary row per (r, theta)."""
    cfg = _config(req)
    tol = _validate_tol(req.tol)
    fam = family_by_name(req.family)
    r_list = req.r_list if req.r_list else _DEFAULT_R_LISTS[req.family]
    theta_list = req.theta_list if req.theta_list else _DEFAULT_THETAS
    for r in r_list:
        if r < 0.0:
            raise InvalidRequestError(f"radii must be >= 0, got {r}")

    states = {}
    for r in r_list:
        for theta in theta_list:
            alpha = r * complex(math.cos(theta), math.sin(theta))
            states[(r, theta)] = build_coefficients(fam, alpha, cfg, tol)

    if req.x_axis is not None:
        lo, hi, count = req.x_axis
    else:
        spans = [observables.suggest_x_range(s) for s in states.values()]
        lo = min(span[0] for span in spans)
        hi = max(span[1] for span in spans)
        count = _DEFAULT_X_POINTS
    xs = np.linspace(lo, hi, count)

    rows = []
    summaries = []
    max_trunc = 0
    max_tail = 0.0
    for r in r_list:
        for theta in theta_list:
            state = states[(r, theta)]
            dens = observables.probability_density(state, xs)
            for x, rho in zip(xs, dens):
                rows.append((float(x), r, theta, float(rho)))
            total = observables.density_normalization(state, lo, hi)
            summaries.append(("integral", r, theta, total))
            max_trunc = max(max_trunc, state.trunc_order)
            max_tail = max(max_tail, state.tail_bound)
    meta = _base_meta(req, cfg)
    meta["truncation"] = {"max_trunc_order": max_trunc, "max_tail_bound": max_tail}
    meta["x_axis"] = [float(lo), float(hi), int(count)]
    meta["r_list"] = list(r_list)
    meta["theta_list"] = list(theta_list)
    return GridResult("density", ("x", "r", "theta", "rho"), rows, meta, summaries)


def run_verify() -> dict:
    """Execute the invariant battery and return its JSON-shaped report."""
    return verify.run_all()


_RUNNERS = {
    "uncertainty": run_uncertainty,
    "energy": run_energy,
    "coeffs": run_coeffs,
    "density": run_density,
}


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dispatch(args) -> int:
    if args.command == "verify":
        report = run_verify()
        text = json.dumps(report, indent=2) + "\n"
        _emit(text, args.output)
        return 0 if verify.all_passed(report) else 1

    req_builder = {
        "uncertainty": lambda: _alpha_request(args, "uncertainty"),
        "energy": lambda: _alpha_request(args, "energy"),
        "coeffs": lambda: _alpha_request(args, "coeffs"),
    }
    if args.command == "density":
        req = GridRequest(
            command="density",
            family=args.family,
            b0=args.b0,
            k=args.k,
            tol=args.tol,
            fmt=args.fmt,
            x_axis=parse_axis(args.x, "--x") if args.x else None,
            r_list=parse_float_list(args.r_list, "--r-list") if args.r_list else None,
            theta_list=parse_float_list(args.theta_list, "--theta-list") if args.theta_list else None,
            output=args.output,
            plot=args.plot,
        )
    else:
        req = req_builder[args.command]()

    result = _RUNNERS[args.command](req)

    buf = io.StringIO()
    write_result(result, req.fmt, buf)
    _emit(buf.getvalue(), req.output)

    if req.plot:
        # Imported lazily: pulling in matplotlib costs real startup time
        # and only the plot path needs it.
        from . import plotting

        plotting.render_figure(result, req.plot)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return _dispatch(args)
    except InvalidRequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GrapheneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
