"""Command-line front end.

Exit status: 0 on success, 2 on a domain error, 1 on a numerical
consistency or I/O error, 64 on a usage error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import io
from .discrete_oracle import converge_compare
from .errors import DomainError, NumericalConsistencyError
from .gabor_core import GridSpec, TruncationSpec, heuristic_bounds, sharp_bounds
from .landau_constants import landau_hex, landau_square, verify_constants_link, verify_proof_chain
from .lattice2d import Lattice2D, ModuliPoint, from_tau, make_hexagonal, make_lattice, make_rectangular
from .moduli_scan import ScanRegion, argmin_condition, montgomery_argmin, rect_sweep, scan_landscape

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

COMMANDS = ("bounds", "landscape", "rect-sweep", "identities", "landau", "montgomery", "oracle")
DENSITY_MISMATCH_TOL = 1e-9

log = logging.getLogger("gaborlab")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    lattice: str | None = None
    density: float | None = None
    grid: GridSpec = field(default_factory=GridSpec)
    trunc: TruncationSpec = field(default_factory=TruncationSpec)
    output: str | None = None
    fmt: str = "csv"
    options: dict = field(default_factory=dict)


def _real(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def _reals(text: str, count: int, what: str):
    parts = text.split(",")
    if len(parts) != count:
        raise UsageError(f"{what} expects {count} comma-separated values, got {text!r}")
    return [_real(p) for p in parts]


def parse_lattice(spec: str, density: float) -> Lattice2D:
    """Build a lattice from ``hex``, ``square``, ``rect:a,b``, ``matrix:a,b,c,d`` or ``tau:x,y``.

    Shape-only specs take their density from ``density``; explicit bases must
    agree with it to 1e-9.
    """
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "hex":
        return make_hexagonal(density)
    if kind == "square":
        return from_tau(ModuliPoint(0.0, 1.0), density)
    if kind == "tau":
        x, y = _reals(rest, 2, "tau")
        return from_tau(ModuliPoint(x, y), density)
    if kind == "rect":
        a, b = _reals(rest, 2, "rect")
        lat = make_rectangular(a, b)
    elif kind == "matrix":
        m11, m12, m21, m22 = _reals(rest, 4, "matrix")
        lat = make_lattice([[m11, m12], [m21, m22]])
    else:
        raise UsageError(f"unknown lattice spec {spec!r}; use hex, square, rect:a,b, matrix:a,b,c,d or tau:x,y")
    if abs(lat.density - density) > DENSITY_MISMATCH_TOL:
        raise UsageError(f"lattice {spec!r} has density {lat.density:.12g} but --density is {density:.12g}")
    return lat


def _g(x: float) -> str:
    return format(x, ".6g")


def _bounds_dict(b):
    return {"A": b.lower, "B": b.upper, "cond": b.cond}


def _emit(config: RunConfig, params: dict, results: list, header=None, rows=None, landscape=None):
    if not config.output:
        return
    if config.fmt == "json":
        io.write_json(config.command, params, results, config.output)
    elif landscape is not None:
        io.write_landscape_csv(landscape, config.output)
    else:
        io.write_table_csv(header, rows, config.output)


def _region(opts) -> ScanRegion:
    return ScanRegion(opts["x_min"], opts["x_max"], opts["y_min"], opts["y_max"], opts["nx"], opts["ny"])


def _cmd_bounds(config: RunConfig):
    lat = parse_lattice(config.lattice, config.density)
    params = {"lattice": config.lattice, "density": config.density, "mode": config.options["mode"]}
    if config.options["mode"] == "heuristic":
        lo, hi = heuristic_bounds(lat, config.grid, config.trunc)
        print(f"min_p={_g(lo)} max_p={_g(hi)}")
        _emit(config, params, [{"min_p": lo, "max_p": hi}], ("min_p", "max_p"), [(lo, hi)])
        return
    b = sharp_bounds(lat, config.grid, config.trunc)
    print(f"A={_g(b.lower)} B={_g(b.upper)} cond={_g(b.cond)}")
    _emit(config, params, [_bounds_dict(b)], ("A", "B", "cond"), [(b.lower, b.upper, b.cond)])


def _cmd_landscape(config: RunConfig):
    region = _region(config.options)
    samples = scan_landscape(config.density, region, config.grid, config.trunc)
    if not samples:
        raise DomainError("scan region contains no point of the fundamental domain")
    best = min(samples, key=lambda s: s.bounds.cond)
    print(f"samples={len(samples)}")
    print(f"argmin_cond tau=({_g(best.tau.x)}, {_g(best.tau.y)}) cond={_g(best.bounds.cond)}")
    if config.options.get("refine"):
        ref = argmin_condition(config.density, region, config.grid, config.trunc, samples=samples)
        print(f"refined tau=({_g(ref.tau.x)}, {_g(ref.tau.y)}) cond={_g(ref.bounds.cond)}")
    params = {"density": config.density, **{k: config.options[k] for k in ("x_min", "x_max", "y_min", "y_max", "nx", "ny")}}
    ordered = sorted(samples, key=lambda s: (s.tau.y, s.tau.x))
    results = [{"tau_x": s.tau.x, "tau_y": s.tau.y, **_bounds_dict(s.bounds)} for s in ordered]
    _emit(config, params, results, landscape=samples)


def _cmd_rect_sweep(config: RunConfig):
    o = config.options
    rows = rect_sweep(config.density, o["alpha_min"], o["alpha_max"], o["n"], config.grid, config.trunc)
    for alpha, b in rows:
        print(f"alpha={_g(alpha)} A={_g(b.lower)} B={_g(b.upper)} cond={_g(b.cond)}")
    params = {"density": config.density, "alpha_min": o["alpha_min"], "alpha_max": o["alpha_max"], "n": o["n"]}
    _emit(
        config,
        params,
        [{"alpha": a, **_bounds_dict(b)} for a, b in rows],
        ("alpha", "A", "B", "cond"),
        [(a, b.lower, b.upper, b.cond) for a, b in rows],
    )


def _cmd_identities(config: RunConfig):
    reports = verify_proof_chain(config.grid, config.trunc) + verify_constants_link(config.grid, config.trunc)
    for r in reports:
        print(f"{r.name}: lhs={r.lhs:.15g} rhs={r.rhs:.15g} residual={r.residual:.3e}")
    _emit(
        config,
        {},
        [{"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "residual": r.residual} for r in reports],
        ("name", "lhs", "rhs", "residual"),
        [(r.name, r.lhs, r.rhs, r.residual) for r in reports],
    )


def _cmd_landau(config: RunConfig):
    hx, sq = landau_hex(), landau_square()
    print(f"L_hex={hx:.6f}")
    print(f"L_square={sq:.6f}")
    _emit(
        config,
        {},
        [{"name": "L_hex", "value": hx}, {"name": "L_square", "value": sq}],
        ("name", "value"),
        [("L_hex", hx), ("L_square", sq)],
    )


def _cmd_montgomery(config: RunConfig):
    t = config.options["t"]
    tau = montgomery_argmin(t, config.density, _region(config.options), config.trunc)
    print(f"argmin tau=({_g(tau.x)}, {_g(tau.y)})")
    params = {"t": t, "density": config.density}
    _emit(config, params, [{"tau_x": tau.x, "tau_y": tau.y}], ("tau_x", "tau_y"), [(tau.x, tau.y)])


def _cmd_oracle(config: RunConfig):
    o = config.options
    rows = converge_compare(o["alpha"], o["beta"], o["n"], config.grid, config.trunc)
    for r in rows:
        print(
            f"n={r.n} lam_min={r.lam_min:.12g} lam_max={r.lam_max:.12g} "
            f"A={r.a_ref:.12g} B={r.b_ref:.12g} deviation={r.deviation:.3e}"
        )
    params = {"alpha": o["alpha"], "beta": o["beta"], "n": list(o["n"])}
    fields = ("n", "lam_min", "lam_max", "A_ref", "B_ref", "deviation")
    table = [(r.n, r.lam_min, r.lam_max, r.a_ref, r.b_ref, r.deviation) for r in rows]
    _emit(config, params, [dict(zip(fields, row)) for row in table], fields, table)


_HANDLERS = {
    "bounds": _cmd_bounds,
    "landscape": _cmd_landscape,
    "rect-sweep": _cmd_rect_sweep,
    "identities": _cmd_identities,
    "landau": _cmd_landau,
    "montgomery": _cmd_montgomery,
    "oracle": _cmd_oracle,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        if config.density is not None and not config.density > 0.0:
            raise UsageError("--density must be positive")
        _HANDLERS[config.command](config)
    except UsageError as exc:
        print(f"gaborlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"gaborlab: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalConsistencyError, OSError) as exc:
        print(f"gaborlab: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _add_common(p, density_default=None, density_required=False):
    p.add_argument("--density", type=float, default=density_default, required=density_required)
    p.add_argument("--base-resolution", type=int, default=64)
    p.add_argument("--refine-levels", type=int, default=3)
    p.add_argument("--zoom-factor", type=int, default=8)
    p.add_argument("--tail-tol", type=float, default=1e-14)
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")


def _add_region(p):
    p.add_argument("--x-min", type=float, default=-0.5)
    p.add_argument("--x-max", type=float, default=0.5)
    p.add_argument("--y-min", type=float, default=math.sqrt(3.0) / 2.0)
    p.add_argument("--y-max", type=float, default=2.0)
    p.add_argument("--nx", type=int, default=40)
    p.add_argument("--ny", type=int, default=40)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaborlab", description="Frame bounds of Gaussian Gabor systems over planar lattices.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="sharp or heuristic frame bounds of one lattice")
    p.add_argument("--lattice", required=True, help="hex | square | rect:a,b | matrix:a,b,c,d | tau:x,y")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--sharp", dest="mode", action="store_const", const="sharp")
    mode.add_argument("--heuristic", dest="mode", action="store_const", const="heuristic")
    p.set_defaults(mode="sharp")
    _add_common(p, density_required=True)

    p = sub.add_parser("landscape", help="sharp bounds over a grid of lattice shapes")
    _add_common(p, density_default=2.0)
    _add_region(p)
    p.add_argument("--refine", action="store_true", help="also refine the condition-number minimizer")

    p = sub.add_parser("rect-sweep", help="sharp bounds of rectangular lattices at fixed density")
    _add_common(p, density_default=2.0)
    p.add_argument("--alpha-min", type=float, default=0.4)
    p.add_argument("--alpha-max", type=float, default=1.25)
    p.add_argument("-n", type=int, default=18)

    p = sub.add_parser("identities", help="check the theta / hypergeometric / Landau identities")
    _add_common(p)

    p = sub.add_parser("landau", help="print the two Landau-type constants")
    _add_common(p)

    p = sub.add_parser("montgomery", help="minimize the lattice theta sum over shapes")
    _add_common(p, density_default=1.0)
    _add_region(p)
    p.add_argument("--t", type=float, default=1.0)

    p = sub.add_parser("oracle", help="finite Gabor frame eigenvalues vs. continuous sharp bounds")
    _add_common(p)
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--beta", default="1")
    p.add_argument("--n", type=int, nargs="+", default=[144, 576])
    return parser


def config_from_args(args) -> RunConfig:
    skip = {"command", "density", "base_resolution", "refine_levels", "zoom_factor", "tail_tol", "output", "fmt", "verbose", "lattice"}
    try:
        grid = GridSpec(args.base_resolution, args.refine_levels, args.zoom_factor)
        trunc = TruncationSpec(args.tail_tol)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(
        command=args.command,
        lattice=getattr(args, "lattice", None),
        density=args.density,
        grid=grid,
        trunc=trunc,
        output=args.output,
        fmt=args.fmt,
        options={k: v for k, v in vars(args).items() if k not in skip},
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(args)
    except UsageError as exc:
        print(f"gaborlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
