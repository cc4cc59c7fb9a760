"""Command-line surface: decompose, sharpen, tune, and bench.

Exit codes: 0 success, 2 usage or input errors, 3 numerical failure,
4 tuning scan exhausted.  Inputs are sniffed: files starting with the
PGM magic are read as images (values scaled to [0, 1]); anything else
is parsed as a text matrix.  Output format follows the file extension
(.pgm writes an image, anything else a matrix file).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, io_formats, solver, tuning
from .core import TDS, TDS1, TDS2, TDS3, loss
from .errors import NumericalError
from .tuning import TuneConfig, fluctuation_std


def _vec(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",") if t.strip() != ""])
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from None


def _read_input(path) -> tuple[np.ndarray, int | None]:
    """Returns (grid, maxval); maxval is None for matrix inputs."""
    with open(path, "rb") as f:
        magic = f.read(2)
    if magic == b"P5":
        return io_formats.read_pgm(path)
    return io_formats.read_matrix(path), None


def _write_output(grid, path, maxval, clamp: bool, label: str) -> None:
    if str(path).endswith(".pgm"):
        clipped = io_formats.write_pgm(grid, path, maxval or 255, clamp=clamp)
        if clipped:
            print(f"note: clamped {clipped} out-of-range {label} samples", file=sys.stderr)
    else:
        io_formats.write_matrix(grid, path)


def _out_maxval(args, input_maxval):
    return args.out_maxval if args.out_maxval is not None else input_maxval


def _params_from_args(args):
    has_scalar_g = args.gamma is not None
    has_vec_g = args.gamma_vec is not None
    has_scalar_d = args.delta is not None
    has_vec_d = args.delta_vec is not None
    any_gd = has_scalar_g or has_vec_g or has_scalar_d or has_vec_d
    if args.lam is not None:
        if any_gd:
            raise ValueError("--lambda conflicts with the gamma/delta options")
        return TDS(args.lam)
    if not any_gd:
        raise ValueError("choose a variant: --lambda, or gamma and delta options")
    if has_scalar_g and has_vec_g:
        raise ValueError("--gamma conflicts with --gamma-vec")
    if has_scalar_d and has_vec_d:
        raise ValueError("--delta conflicts with --delta-vec")
    if not (has_scalar_g or has_vec_g) or not (has_scalar_d or has_vec_d):
        raise ValueError("gamma and delta must both be given (scalar or vector)")
    gamma = args.gamma if has_scalar_g else _vec(args.gamma_vec)
    delta = args.delta if has_scalar_d else _vec(args.delta_vec)
    if has_scalar_g and has_scalar_d:
        return TDS1(gamma, delta)
    if has_vec_g and has_vec_d:
        return TDS2(gamma, delta)
    return TDS3(gamma, delta)


def _cmd_decompose(args) -> int:
    z, maxval = _read_input(args.input)
    params = _params_from_args(args)
    dec = solver.solve(z, params, tol=args.tol, max_iter=args.max_iter)
    out_maxval = _out_maxval(args, maxval)
    if args.out_trend:
        _write_output(dec.trend, args.out_trend, out_maxval, args.clamp, "trend")
    if args.out_fluct:
        _write_output(dec.fluctuation, args.out_fluct, out_maxval, args.clamp, "fluctuation")
    if args.report:
        mean, std = fluctuation_std(dec.fluctuation)
        print(f"method: {dec.diagnostics.method}")
        print(f"iterations: {dec.iterations}")
        print(f"residual: {dec.residual:.6e}")
        print(f"loss: {loss(z, dec.trend, params):.10g}")
        print(f"fluct-mean: {mean:.10g}")
        print(f"fluct-std: {std:.10g}")
    return 0


def _cmd_sharpen(args) -> int:
    with open(args.input, "rb") as f:
        if f.read(2) != b"P5":
            raise ValueError(f"{args.input} is not a binary PGM image")
    img, maxval = io_formats.read_pgm(args.input)
    out = solver.forward_apply(img, TDS(args.lam))
    clipped = io_formats.write_pgm(out, args.out, _out_maxval(args, maxval), clamp=args.clamp)
    if clipped:
        print(f"note: clamped {clipped} out-of-range samples", file=sys.stderr)
    return 0


def _cmd_tune(args) -> int:
    z, maxval = _read_input(args.input)
    reference = None
    if args.reference:
        reference, _ = _read_input(args.reference)
    peak = args.peak
    if peak is None and maxval is not None:
        peak = 1.0
    cfg = TuneConfig(
        metric=args.metric,
        target=args.target,
        eps=args.eps,
        step=args.step,
        max_lambda=args.max_lambda,
        initial_lambda=args.initial_lambda,
        peak=peak,
    )
    result = tuning.tune_lambda(z, reference, cfg, accelerate=args.accelerate)
    if args.trace:
        with open(args.trace, "w", newline="\n") as f:
            f.write("lambda,alpha\n")
            for lam, alpha in result.trace:
                f.write(f"{lam:.10g},{alpha:.10g}\n")
    print(f"status: {result.status}")
    print(f"lambda: {result.lam:.10g}")
    print(f"alpha: {result.alpha:.10g}")
    return 0 if result.converged else 4


def _cmd_bench(args) -> int:
    image = None
    if args.image:
        image, _ = io_formats.read_pgm(args.image)
    rows, failures = bench.run_suite(args.suite, args.seeds, args.seed, image)
    bench.write_csv(rows, args.out, args.seed)
    print(f"seed: {args.seed}")
    print(f"seeds: {args.seeds}")
    print(f"rows: {len(rows)}")
    print(f"failures: {len(failures)}")
    times = bench.family_times(rows)
    summary = " ".join(f"{k}={v:.3e}s" for k, v in sorted(times.items()))
    print(f"slowest row per family: {summary}")
    print(f"out: {args.out}")
    for msg in failures:
        print(f"row failed: {msg}", file=sys.stderr)
    return 3 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tds",
        description="Trend/fluctuation decomposition of 2-D data and image utilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="split a grid into trend and fluctuation")
    p.add_argument("input", help="matrix file or binary PGM image")
    p.add_argument("--lambda", dest="lam", type=float, help="global smoothing weight")
    p.add_argument("--gamma", type=float, help="along-row smoothing weight")
    p.add_argument("--delta", type=float, help="along-column smoothing weight")
    p.add_argument("--gamma-vec", help="comma-separated per-row weights (length m)")
    p.add_argument("--delta-vec", help="comma-separated per-column weights (length n)")
    p.add_argument("--out-trend", help="where to write the trend")
    p.add_argument("--out-fluct", help="where to write the fluctuation")
    p.add_argument("--report", action="store_true", help="print residual/loss/fluctuation stats")
    p.add_argument("--tol", type=float, default=solver.CG_TOL,
                   help="relative residual tolerance for the iterative path")
    p.add_argument("--max-iter", type=int, default=None,
                   help="iteration cap for the iterative path")
    p.add_argument("--clamp", action=argparse.BooleanOptionalAction, default=True,
                   help="clamp out-of-range samples when writing images")
    p.add_argument("--out-maxval", type=int, choices=(255, 65535), default=None,
                   help="PGM output depth (default: same as the input image)")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("sharpen", help="apply the forward operator to an image")
    p.add_argument("input", help="binary PGM image")
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="sharpening weight (0 copies the image)")
    p.add_argument("--out", required=True, help="output PGM path")
    p.add_argument("--clamp", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out-maxval", type=int, choices=(255, 65535), default=None,
                   help="PGM output depth (default: same as the input image)")
    p.set_defaults(func=_cmd_sharpen)

    p = sub.add_parser("tune", help="scan the global weight until a metric hits its target")
    p.add_argument("input")
    p.add_argument("--metric", required=True, choices=tuning.METRICS)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--max-lambda", type=float, required=True)
    p.add_argument("--initial-lambda", type=float, default=0.0)
    p.add_argument("--reference", help="reference grid for mse/psnr/ssim")
    p.add_argument("--peak", type=float, help="PSNR/SSIM peak (default: reference max magnitude)")
    p.add_argument("--trace", help="write the visited (lambda, alpha) pairs as CSV")
    p.add_argument("--accelerate", action="store_true",
                   help="bisect instead of scanning (metric must be nondecreasing)")
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("bench", help="run a benchmark suite and write a CSV table")
    p.add_argument("--suite", required=True, choices=bench.SUITES)
    p.add_argument("--seeds", type=int, default=1, help="number of seeds (default 1)")
    p.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--image", help="PGM image for the image suite (bundled default)")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
