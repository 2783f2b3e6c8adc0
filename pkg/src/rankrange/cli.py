"""Command line interface.

Exit codes: 0 success (nonempty region, inside/boundary point, witness found),
2 for empty regions and outside points, 3 when witness synthesis fails, 1 for
usage, parsing and other errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .engine import (
    Approximate,
    EmptyCertificate,
    Membership,
    NonEmptyWitness,
    RankRangeQuery,
    boundary_region,
    emptiness_check,
    membership,
    ProvablyEmpty,
    ProvablyNonEmpty,
)
from .counterexample import build_counterexample, perturb_nonnormal
from .errors import RankRangeError, SynthesisError
from .io import (
    RegionExport,
    read_matrix,
    write_array_json,
    write_matrix_csv,
    write_matrix_json,
    write_region_csv,
    write_region_json,
    write_region_svg,
)
from .normal import is_normal, normal_exact_region
from .settings import DEFAULT, geometric_tolerance
from .witness import synthesize_isometry

__all__ = ["main"]


def _write_region(path: str, export: RegionExport) -> None:
    if path.endswith(".csv"):
        write_region_csv(path, export)
    else:
        write_region_json(path, export)


def _write_matrix(path: str, a: np.ndarray) -> None:
    if path.endswith(".csv"):
        write_matrix_csv(path, a)
    else:
        write_matrix_json(path, a)


def _spectral_radius(a: np.ndarray) -> float:
    return float(np.abs(np.linalg.eigvals(a)).max())


def _describe_certificate(cert) -> str:
    if isinstance(cert, EmptyCertificate):
        angles = ", ".join(f"{t:.6g}" for t in cert.angles)
        return f"empty intersection certified by {len(cert.angles)} half-planes at angles [{angles}]"
    if isinstance(cert, NonEmptyWitness):
        mu = cert.mu + complex(0.0, 0.0)  # normalize -0.0 for display
        return (
            f"witness mu = {mu.real:.12g}{mu.imag:+.12g}i "
            f"with compression residual {cert.residual:.3e}"
        )
    if isinstance(cert, Approximate):
        suffix = f" ({cert.reason})" if cert.reason else ""
        return f"approximate region, no certificate{suffix}"
    return "no certificate"


def cmd_range(args) -> int:
    a = read_matrix(args.matrix)
    query = RankRangeQuery(a, args.k, grid_size=args.grid, tolerance=geometric_tolerance())
    result = boundary_region(query)
    export = RegionExport.from_result(result)
    if args.out:
        _write_region(args.out, export)
    if args.svg:
        write_region_svg(args.svg, export, spectral_radius=_spectral_radius(a))
    region = result.region
    print(f"kind: {region.kind.value}")
    if not region.is_empty:
        print(f"vertices: {len(region.vertices)}")
        print(f"diameter: {region.diameter():.12g}")
    print(_describe_certificate(result.certificate))
    return 2 if region.is_empty else 0


def cmd_member(args) -> int:
    a = read_matrix(args.matrix)
    query = RankRangeQuery(a, args.k, grid_size=args.grid, tolerance=geometric_tolerance())
    point = complex(args.re, args.im)
    verdict = membership(query, point)
    print(f"verdict: {verdict.verdict.value}")
    print(f"margin: {verdict.margin:.12g}")
    if verdict.verdict is Membership.OUTSIDE:
        print(f"violated angle: {verdict.angle:.12g}")
    return 2 if verdict.verdict is Membership.OUTSIDE else 0


def cmd_witness(args) -> int:
    a = read_matrix(args.matrix)
    target = complex(args.re, args.im)
    iso = synthesize_isometry(a, args.k, target, tol=DEFAULT.witness)
    residual = float(
        np.abs(iso.matrix.conj().T @ a @ iso.matrix - target * np.eye(args.k)).max()
    )
    print(f"witness found for mu = {target.real:.12g}{target.imag:+.12g}i")
    print(f"compression residual: {residual:.3e}")
    if args.out:
        write_array_json(args.out, iso.matrix)
        print(f"isometry written to {args.out}")
    return 0


def cmd_counterexample(args) -> int:
    a = build_counterexample(args.n, args.k)
    if args.epsilon > 0.0:
        a = perturb_nonnormal(a, args.epsilon, args.seed, k=args.k, grid_size=args.grid)
    verdict = emptiness_check(RankRangeQuery(a, args.k, grid_size=args.grid))
    if isinstance(verdict, ProvablyEmpty):
        print(f"rank-{args.k} range certified empty for the generated {args.n}x{args.n} matrix")
    else:
        print(f"warning: emptiness not certified ({type(verdict).__name__})")
    if args.out:
        _write_matrix(args.out, a)
        print(f"matrix written to {args.out}")
    return 0


def cmd_normal_exact(args) -> int:
    a = read_matrix(args.matrix)
    if not is_normal(a):
        raise RankRangeError("matrix is not normal; the exact construction does not apply")
    eigenvalues = np.linalg.eigvals(a)
    region = normal_exact_region(eigenvalues, args.k, tolerance=geometric_tolerance())
    export = RegionExport.from_region(region)
    if args.out:
        _write_region(args.out, export)
    if args.svg:
        write_region_svg(args.svg, export, spectral_radius=float(np.abs(eigenvalues).max()))
    print(f"kind: {region.kind.value}")
    if not region.is_empty:
        print(f"vertices: {len(region.vertices)}")
    return 2 if region.is_empty else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankrange",
        description="Rank-k numerical ranges: regions, membership, witnesses and counterexamples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def matrix_options(sp, with_grid=True):
        sp.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
        sp.add_argument("--k", type=int, required=True, help="compression rank")
        if with_grid:
            sp.add_argument("--grid", type=int, default=720, help="number of sampled support angles")

    sp = sub.add_parser("range", help="compute the region bounded by the sampled support family")
    matrix_options(sp)
    sp.add_argument("--out", help="write the region to this .json or .csv file")
    sp.add_argument("--svg", help="draw the region into this SVG file")
    sp.set_defaults(func=cmd_range)

    sp = sub.add_parser("member", help="classify a point against the sampled region")
    matrix_options(sp)
    sp.add_argument("--re", type=float, required=True, help="real part of the point")
    sp.add_argument("--im", type=float, required=True, help="imaginary part of the point")
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("witness", help="search for a compression isometry at a target point")
    matrix_options(sp, with_grid=False)
    sp.add_argument("--re", type=float, required=True, help="real part of the target")
    sp.add_argument("--im", type=float, required=True, help="imaginary part of the target")
    sp.add_argument("--out", help="write the isometry to this .json file")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("counterexample", help="generate a matrix with empty rank-k range")
    sp.add_argument("--n", type=int, required=True, help="matrix size")
    sp.add_argument("--k", type=int, required=True, help="compression rank")
    sp.add_argument("--epsilon", type=float, default=0.0, help="size of the nonnormal perturbation")
    sp.add_argument("--seed", type=int, default=0, help="seed for the perturbation direction")
    sp.add_argument("--grid", type=int, default=720, help="grid used to re-certify emptiness")
    sp.add_argument("--out", help="write the matrix to this .json or .csv file")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("normal-exact", help="exact region of a normal matrix from its eigenvalues")
    matrix_options(sp, with_grid=False)
    sp.add_argument("--out", help="write the region to this .json or .csv file")
    sp.add_argument("--svg", help="draw the region into this SVG file")
    sp.set_defaults(func=cmd_normal_exact)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except SynthesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (RankRangeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
