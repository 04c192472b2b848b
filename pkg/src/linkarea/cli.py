"""Command-line front end.

Subcommands: verify (property battery), area (functional report),
anglemap (grid CSV export), invariance (Moebius-map audit), oracle
(cross-route audit), minimize (shape descent).  Exit codes: 0 success,
1 property failure, 2 input error, 3 numerical-tolerance failure.  All
randomness sits behind --seed, and identical invocations produce
byte-identical output.
"""

import argparse
import sys

import numpy as np

from . import conformal as cf
from . import spheres as sp
from . import symplectic as sy
from . import verify as vf
from .errors import BadLinkFile, BadParameter, IoFailure, LinkAreaError, NoConvergence
from .functionals import build_grid, compute_functionals, export_grid
from .links import (TWO_PI, catalogue, random_mobius, read_link,
                    separated_link, write_link)
from .optimize import circle_fit_residual, decode_link, encode_link, minimize
from .rng import Lcg64

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_TOLERANCE = 3

INVARIANCE_TOL = 1e-5


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_link(path):
    try:
        return read_link(path)
    except FileNotFoundError:
        raise BadLinkFile(f"no such file: {path}")
    except OSError as exc:
        raise BadLinkFile(f"cannot read {path}: {exc}")


def cmd_verify(args) -> int:
    results = vf.run_battery(catalogue(), base_seed=args.seed)
    failed = 0
    for r in results:
        print(("PASS" if r.passed else "FAIL") + f" {r.name}: {r.detail}")
        failed += 0 if r.passed else 1
    print(f"verify: passed={len(results) - failed} failed={failed}")
    return EXIT_OK if failed == 0 else EXIT_PROPERTY


def cmd_area(args) -> int:
    link = _load_link(args.file)
    try:
        rep = compute_functionals(link, tol=args.tol, n_start=args.grid)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    print(f"signed_area={_fmt(rep.signed_area)} area={_fmt(rep.area)} "
          f"energy={_fmt(rep.energy)} grid={rep.grid_used[0]}x{rep.grid_used[1]} "
          f"est_error={_fmt(rep.est_error)}")
    return EXIT_OK


def cmd_anglemap(args) -> int:
    link = _load_link(args.file)
    grid = build_grid(link, args.grid, args.grid)
    export_grid(grid, args.out)
    print(f"wrote {args.grid * args.grid} rows to {args.out}")
    return EXIT_OK


def _density_fields(link, n: int = 32):
    s = np.linspace(0.0, TWO_PI, n, endpoint=False)
    return cf.density_grids(link.c1, link.c2, s, s)


def cmd_invariance(args) -> int:
    if args.transforms > 100:
        raise BadParameter("at most 100 transforms")
    link = _load_link(args.file)
    base = _density_fields(link)
    base_rep = compute_functionals(link, tol=1e-3)
    dev_area = dev_energy = dev_density = 0.0
    for k in range(args.transforms):
        mob = random_mobius(args.seed + k, 1.0)
        moved = mob.transform_link(link)
        rep = compute_functionals(moved, tol=1e-3)
        scale_a = max(abs(base_rep.area), 1.0)
        scale_e = max(abs(base_rep.energy), 1.0)
        dev_area = max(dev_area, abs(rep.area - base_rep.area) / scale_a)
        dev_energy = max(dev_energy, abs(rep.energy - base_rep.energy) / scale_e)
        fields = _density_fields(moved)
        for f_new, f_old in zip(fields, base):
            scale = max(float(np.max(np.abs(f_old))), 1.0)
            dev_density = max(dev_density, float(np.max(np.abs(f_new - f_old))) / scale)
    print(f"transforms={args.transforms} max_rel_area={_fmt(dev_area)} "
          f"max_rel_energy={_fmt(dev_energy)} max_rel_density={_fmt(dev_density)}")
    if max(dev_area, dev_energy, dev_density) > INVARIANCE_TOL:
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.samples > 10000:
        raise BadParameter("at most 10000 samples")
    link = _load_link(args.file)
    rng = Lcg64(args.seed)
    pole = cf.chart_pole(link.c1, link.c2)
    dev_chart = dev_fd = 0.0
    for _ in range(args.samples):
        s0 = rng.uniform_in(0.0, TWO_PI)
        t0 = rng.uniform_in(0.0, TWO_PI)
        g = sp.metric_coefficient(link.c1, link.c2, s0, t0)
        density = cf.inf_cross_ratio(link.c1, link.c2, s0, t0)
        theta_chart = cf.conformal_angle_chart(link.c1, link.c2, s0, t0, pole=pole)
        re_chart = density.abs * np.cos(theta_chart)
        dev_chart = max(dev_chart, abs(g - 2.0 * re_chart))
        re_fd = cf.cross_ratio_fd_auto(link.c1, link.c2, s0, t0, args.eps, pole=pole)
        dev_fd = max(dev_fd, abs(density.re - re_fd))
    sign = sy.determine_global_sign(separated_link(1.0))
    residual, _ = sy.exterior_derivative_check(link.c1, link.c2, 128, 128, sign=sign)
    print(f"samples={args.samples} wedge_vs_chart={_fmt(dev_chart)} "
          f"wedge_vs_fd={_fmt(dev_fd)} symplectic_residual={_fmt(residual)} "
          f"global_sign={sign:+d}")
    if dev_chart > vf.TOL_WEDGE_CHART or dev_fd > vf.TOL_FD or residual > vf.TOL_SYMPLECTIC:
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_minimize(args) -> int:
    link = _load_link(args.file)
    v0 = encode_link(link)
    result = minimize(v0, steps=args.steps, lr=args.lr, grid_n=args.grid,
                      stop_below=args.stop_below)
    with open(args.trace_out, "w", encoding="utf-8") as fh:
        fh.write("step,objective\n")
        for i, val in enumerate(result.trace):
            fh.write(f"{i},{_fmt(val)}\n")
    final = decode_link(result.vector)
    write_link(final, args.link_out)
    res1 = circle_fit_residual(final.c1)
    res2 = circle_fit_residual(final.c2)
    print(f"status={result.status} steps={len(result.trace) - 1} "
          f"objective={_fmt(result.trace[-1])} "
          f"circle_fit_1={_fmt(res1)} circle_fit_2={_fmt(res2)}")
    print(f"wrote {args.trace_out} and {args.link_out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkarea",
        description="Conformal area invariants of 2-component links in the 3-sphere.")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", help="run the property battery")

    p = sub.add_parser("area", help="signed area, area and cross energy of a link file")
    p.add_argument("file")
    p.add_argument("--grid", type=int, default=32, help="starting grid resolution")
    p.add_argument("--tol", type=float, default=1e-3, help="refinement tolerance")

    p = sub.add_parser("anglemap", help="export the density grid as CSV")
    p.add_argument("file")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--out", required=True)

    p = sub.add_parser("invariance", help="audit Moebius invariance of the functionals")
    p.add_argument("file")
    p.add_argument("--transforms", type=int, default=20)

    p = sub.add_parser("oracle", help="audit the three density routes against each other")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--eps", type=float, default=1e-3)

    p = sub.add_parser("minimize", help="gradient descent of the area over curve shapes")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--stop-below", type=float, default=0.0)
    p.add_argument("--trace-out", default="trace.csv")
    p.add_argument("--link-out", default="minimized.lk1")
    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "area": cmd_area,
    "anglemap": cmd_anglemap,
    "invariance": cmd_invariance,
    "oracle": cmd_oracle,
    "minimize": cmd_minimize,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (BadLinkFile, BadParameter, IoFailure, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except LinkAreaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
