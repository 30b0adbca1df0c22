"""Command-line front end.

Subcommands compute the point clouds and rasters at desk scale and write
CSV/PGM artifacts; ``verify`` runs a named self-check suite.  Exit codes:
0 success, 1 usage error, 2 verification failure.  All configuration goes
through long-form flags; outputs are byte-identical across runs for the
same configuration.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds, charpoly, dynamics, spectra, verify
from .charpoly import IntPoly, format_poly
from .signvec import SignVector

USAGE_ERROR = 1
VERIFY_ERROR = 2

# desk-scale caps; larger runs should drive the library directly
MAX_PI_PERIOD = 14
MAX_SIGMA_SIZE = 16
MAX_STAR_SIZE = 12
MAX_RES = 4096
MAX_CLOUD_POINTS = 5_000_000


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(USAGE_ERROR)


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs for one CLI invocation."""

    command: str
    window: tuple[float, float, float, float] | None = None
    res: int = 256
    n: int = 0
    samples: int = 257
    max_iter: int = 200
    out: str | None = None
    seed: int = 0
    cumulative: bool = False
    overlay: bool = False
    use_symmetry: bool = True


def _parse_window(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window must be reMin,reMax,imMin,imMax")
    w = tuple(float(p) for p in parts)
    if not (w[0] < w[1] and w[2] < w[3]):
        raise argparse.ArgumentTypeError("window must be ordered reMin < reMax, imMin < imMax")
    return w  # type: ignore[return-value]


def _parse_polyspec(text: str) -> tuple[IntPoly, str, bool]:
    """A polynomial spec: sign-pattern literal, "P:m", "Q:m", or "Pstar:m".

    Returns (polynomial, display name, in-symmetry-class); the named families
    are symmetry polynomials for m >= 2, a pattern literal only when it ends
    (-1, +1) with a palindromic prefix.
    """
    head, _, tail = text.partition(":")
    if tail:
        try:
            m = int(tail)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad family index in {text!r}")
        if head == "P":
            return charpoly.all_plus_poly(m), text, m >= 2
        if head == "Q":
            return charpoly.alternating_poly(m), text, m >= 2
        if head == "Pstar":
            return charpoly.quarter_turn(charpoly.all_plus_poly(m)), text, m >= 2
        raise argparse.ArgumentTypeError(f"unknown family {head!r} (use P, Q or Pstar)")
    try:
        k = SignVector.from_string(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if k.n < 2:
        raise argparse.ArgumentTypeError("pattern polynomials need length >= 2")
    from .signvec import is_symmetry_vector

    return charpoly.floquet_discriminant(k), str(k), is_symmetry_vector(k)


def build_parser() -> _Parser:
    ap = _Parser(prog="hopspec", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polys", help="tabulate the distinct symmetry polynomials")
    p.add_argument("--max-degree", type=int, default=6)

    p = sub.add_parser("pi", help="union of period-n spectra (CSV)")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--cumulative", action="store_true", help="union over periods 1..n")
    p.add_argument("--samples", type=int, default=257)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sigma", help="eigenvalues of all n x n sections (CSV)")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sigma-star", help="order-n pseudospectral bound raster (PGM)")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--window", type=_parse_window, default=(-2.5, 2.5, -2.5, 2.5))
    p.add_argument("--res", type=int, default=256)
    p.add_argument("--out", required=True)
    p.add_argument("--no-symmetry", action="store_true", help="disable the octant shortcut")

    p = sub.add_parser("julia", help="escape-time raster of a filled Julia set (PGM)")
    p.add_argument("--poly", type=_parse_polyspec, required=True)
    p.add_argument(
        "--window", type=_parse_window, default=(-1.8, 1.8, -1.8, 1.8),
        help="reMin,reMax,imMin,imMax (use --window=... when reMin is negative)",
    )
    p.add_argument("--res", type=int, default=512)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--out", required=True)

    p = sub.add_parser("cloud", help="backward-iteration point cloud (CSV)")
    p.add_argument("--poly", type=_parse_polyspec, required=True)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--seeds", type=int, default=64)
    p.add_argument("--seed", type=int, default=0, help="RNG seed for the level-0 samples")
    p.add_argument("--out", required=True)

    p = sub.add_parser("region", help="membership raster of a bound region (PGM)")
    p.add_argument("--name", choices=("delta", "n2", "w"), required=True)
    p.add_argument("--window", type=_parse_window, default=(-2.2, 2.2, -2.2, 2.2))
    p.add_argument("--res", type=int, default=512)
    p.add_argument("--overlay", action="store_true", help="mark the 1.1-circle on the raster")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("suite", choices=verify.SUITE_NAMES)
    return ap


def _alias(p: IntPoly, table: list[tuple[IntPoly, SignVector]]) -> str:
    """Closed-form or composition name for a symmetry polynomial, if any."""
    names: list[str] = []
    d = p.degree
    if charpoly.all_plus_poly(d).coeffs == p.coeffs:
        names.append(f"P{d}")
    if d % 2 == 1:
        m = (d + 1) // 2
        if charpoly.alternating_poly(m).coeffs == p.coeffs:
            names.append(f"Q{m}")
    star = charpoly.quarter_turn(p)
    if star.coeffs != p.coeffs:
        if charpoly.all_plus_poly(d).coeffs == star.coeffs:
            names.append(f"P{d}*")
        if d % 2 == 1 and charpoly.alternating_poly((d + 1) // 2).coeffs == star.coeffs:
            names.append(f"Q{(d + 1) // 2}*")
    for a, _ in table:
        for b, _ in table:
            if a.degree * b.degree == d and a.compose(b).coeffs == p.coeffs:
                names.append(f"({format_poly(a)}) o ({format_poly(b)})")
    return ", ".join(dict.fromkeys(names))


def cmd_polys(args) -> int:
    if args.max_degree < 2:
        print("error: --max-degree must be >= 2", file=sys.stderr)
        return USAGE_ERROR
    table = charpoly.symmetry_polynomials(args.max_degree)
    print(f"{len(table)} distinct symmetry polynomials of degree <= {args.max_degree}")
    for p, k in table:
        alias = _alias(p, table)
        suffix = f"   [{alias}]" if alias else ""
        print(f"  {str(k):>14}   {format_poly(p)}{suffix}")
    return 0


def cmd_pi(args) -> int:
    n, num_t = args.period, args.samples
    if not 1 <= n <= MAX_PI_PERIOD:
        print(f"error: --period must be in 1..{MAX_PI_PERIOD} (desk-scale cap)", file=sys.stderr)
        return USAGE_ERROR
    if num_t < 2 or num_t * (2**n) * n > 2 * 10**8:
        print("error: sample budget too large for this period", file=sys.stderr)
        return USAGE_ERROR
    cloud = spectra.periodic_cloud(n, num_t, cumulative=args.cumulative)
    cloud.write_csv(args.out)
    print(f"{cloud.label}: {len(cloud)} points -> {args.out}")
    return 0


def cmd_sigma(args) -> int:
    n = args.size
    if not 1 <= n <= MAX_SIGMA_SIZE:
        print(f"error: --size must be in 1..{MAX_SIGMA_SIZE} (desk-scale cap)", file=sys.stderr)
        return USAGE_ERROR
    cloud = spectra.eigenvalue_cloud(n)
    cloud.write_csv(args.out)
    print(f"{cloud.label}: {len(cloud)} points -> {args.out}")
    return 0


def cmd_sigma_star(args) -> int:
    n, res = args.size, args.res
    if not 1 <= n <= MAX_STAR_SIZE:
        print(f"error: --size must be in 1..{MAX_STAR_SIZE} (desk-scale cap)", file=sys.stderr)
        return USAGE_ERROR
    if not 1 <= res <= 1024:
        print("error: --res must be in 1..1024 for pseudospectral rasters", file=sys.stderr)
        return USAGE_ERROR
    grid = bounds.pseudospectral_raster(n, args.window, res, res, use_symmetry=not args.no_symmetry)
    grid.write_pgm(args.out)
    inside = int(grid.values.sum())
    print(f"order-{n} bound: {inside}/{res * res} member pixels -> {args.out}")
    return 0


def cmd_julia(args) -> int:
    p, name, in_class = args.poly
    if not 1 <= args.res <= MAX_RES:
        print(f"error: --res must be in 1..{MAX_RES}", file=sys.stderr)
        return USAGE_ERROR
    if p.degree < 2:
        print("error: filled Julia sets need degree >= 2", file=sys.stderr)
        return USAGE_ERROR
    grid = dynamics.filled_julia_raster(
        p, args.window, args.res, args.res, args.max_iter,
        symmetry_poly=in_class, discriminant=True,
    )
    grid.write_pgm(args.out, escape_max=args.max_iter)
    members = int((grid.values == args.max_iter).sum())
    print(f"{name} ({format_poly(p)}): {members} member pixels -> {args.out}")
    return 0


def cmd_cloud(args) -> int:
    p, name, _in_class = args.poly
    if args.depth < 1 or args.seeds < 1:
        print("error: --depth and --seeds must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    if p.degree < 2:
        print("error: backward clouds need degree >= 2", file=sys.stderr)
        return USAGE_ERROR
    if args.seeds * p.degree**args.depth > MAX_CLOUD_POINTS * 4:
        print("error: depth/seeds budget too large; lower one of them", file=sys.stderr)
        return USAGE_ERROR
    cloud = dynamics.preimage_cloud(p, args.depth, args.seeds, rng_seed=args.seed)
    cloud.write_csv(args.out)
    print(f"{name}: {len(cloud)} backward points -> {args.out}")
    return 0


def cmd_region(args) -> int:
    if not 1 <= args.res <= MAX_RES:
        print(f"error: --res must be in 1..{MAX_RES}", file=sys.stderr)
        return USAGE_ERROR
    masks = {
        "delta": bounds.in_diamond,
        "n2": bounds.in_second_order_range,
        "w": bounds.lower_region_mask,
    }
    grid = bounds.raster_membership(masks[args.name], args.window, args.res, args.res)
    values = grid.values
    circle_ok = True
    if args.overlay:
        # membership of the circle itself, sampled densely (pixels near the
        # circle may poke past it by half a pixel, which proves nothing)
        th = 2.0 * np.pi * np.arange(8 * args.res) / (8 * args.res)
        circle_ok = bool(np.all(masks[args.name](1.1 * np.exp(1j * th))))
        centers = grid.centers()
        ring = np.abs(np.abs(centers) - 1.1) <= 0.5 * grid.pixel_diag
        values = np.where(ring, 2, values)
        grid = bounds.RasterGrid(grid.window, grid.width, grid.height, values)
    grid.write_pgm(args.out)
    inside = int((values == 1).sum())
    note = "" if circle_ok else "  (warning: overlay circle not fully inside)"
    print(f"region {args.name}: {inside}/{args.res * args.res} member pixels -> {args.out}{note}")
    return 0


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"[{tag}] {r.name}{detail}")
    failed = sum(not r.passed for r in results)
    print(f"suite {args.suite}: {len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else VERIFY_ERROR


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "polys": cmd_polys,
        "pi": cmd_pi,
        "sigma": cmd_sigma,
        "sigma-star": cmd_sigma_star,
        "julia": cmd_julia,
        "cloud": cmd_cloud,
        "region": cmd_region,
        "verify": cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
