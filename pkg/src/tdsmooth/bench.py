"""Benchmark harness: metric tables for smoothing vs. baseline filters.

The synthetic suite corrupts the canonical 31x21 surface with the four
noise models and sweeps every filter family's parameter grid; the image
suite does the same on a grayscale image with image-scale noise.  Each
table cell reports the median metric over the requested seeds against
the clean reference.

Determinism contract: given the same base seed and suite, the emitted
CSV is bit-identical across runs.  Wall-clock time therefore enters the
CSV only as an upper bound rounded up to the reporting quantum (the
precise medians are returned for stdout reporting); everything else is
exact arithmetic on seeded draws.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import baselines, io_formats, metrics, synth
from .solver import SpectralCache, solve_tds, solve_tds1

CSV_HEADER = "filter,params,noise,seed_count,mse,psnr,ssim,seconds"

# CSV time quantum: reported seconds are ceil(t / quantum) * quantum.
# Coarse on purpose: desk-scale rows finish orders of magnitude faster, so
# the quantized bound never wobbles between runs.
TIME_QUANTUM = 0.5

SUITES = ("synthetic", "image")

_SYNTH_WINDOWS = [(3, 3), (3, 4), (4, 3), (4, 4), (4, 5), (5, 4), (5, 5)]
_SYNTH_SIGMAS = [round(1.2 + 0.2 * i, 1) for i in range(20)]
_IMAGE_WINDOWS = [(k, k) for k in range(3, 13)]
_IMAGE_SIGMAS = [round(1.0 + 0.1 * i, 1) for i in range(14)]
_IMAGE_LAMBDAS = {
    "awgn": [float(v) for v in range(2, 21, 2)],
    "spn": [float(v) for v in range(2, 12)],
    "poisson": [round(0.2 * i, 1) for i in range(1, 11)],
}
_IMAGE_TDS1 = {
    "awgn": [(10.0, 2.0), (33.0, 10.0)],
    "spn": [(5.0, 2.0), (19.0, 6.0)],
    "poisson": [(0.8, 0.3), (3.0, 1.2)],
}


@dataclass(frozen=True)
class BenchRow:
    """One (filter, parameter, noise) table cell; metrics are medians over seeds."""

    filter: str
    params: str
    noise: str
    seed_count: int
    mse: float
    psnr: float
    ssim: float
    seconds: float
    raw_seconds: float  # unquantized median, for stdout reports only

    def sort_key(self):
        return (self.noise, self.filter, self.params)


def thread_count() -> int:
    """Worker-pool size; the TDS_THREADS environment variable caps it."""
    env = os.environ.get("TDS_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def default_image() -> np.ndarray:
    """The bundled grayscale test image."""
    path = resources.files("tdsmooth.data") / "phantom.pgm"
    with resources.as_file(path) as p:
        img, _ = io_formats.read_pgm(p)
    return img


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf"
    return f"{v:.10g}"


def write_csv(rows: list[BenchRow], path, base_seed: int) -> None:
    """Write rows in canonical order with the stable schema."""
    with open(path, "w", newline="\n") as f:
        f.write(f"# seed={base_seed}\n")
        f.write(CSV_HEADER + "\n")
        for r in sorted(rows, key=BenchRow.sort_key):
            f.write(
                f"{r.filter},{r.params},{r.noise},{r.seed_count},"
                f"{_fmt(r.mse)},{_fmt(r.psnr)},{_fmt(r.ssim)},{r.seconds:.1f}\n"
            )


def _cell(name, label, noise, noisy_by_seed, reference, peak, run) -> BenchRow:
    mses = []
    ssims = []
    times = []
    for z_noisy in noisy_by_seed:
        t0 = time.perf_counter()
        filtered = run(z_noisy)
        times.append(time.perf_counter() - t0)
        mses.append(metrics.mse(reference, filtered))
        ssims.append(metrics.ssim(reference, filtered, peak))
    raw = float(np.median(times))
    med_mse = float(np.median(mses))
    # PSNR is derived from the median MSE (not a median of PSNRs) so the
    # two columns stay exactly consistent even for even seed counts, where
    # the median pair-average does not commute with the log transform.
    if med_mse == 0.0:
        row_psnr = math.inf
    else:
        row_psnr = 10.0 * math.log10(peak * peak / med_mse)
    return BenchRow(
        filter=name,
        params=label,
        noise=noise,
        seed_count=len(noisy_by_seed),
        mse=med_mse,
        psnr=row_psnr,
        ssim=float(np.median(ssims)),
        seconds=math.ceil(raw / TIME_QUANTUM - 1e-12) * TIME_QUANTUM,
        raw_seconds=raw,
    )


def _run_cells(cells) -> tuple[list[BenchRow], list[str]]:
    workers = thread_count()

    def run_one(cell):
        return _cell(*cell)

    outcomes: list[BenchRow | Exception] = []
    if workers == 1:
        for cell in cells:
            try:
                outcomes.append(run_one(cell))
            except Exception as exc:  # noqa: BLE001 - recorded per row
                outcomes.append(exc)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_one, cell) for cell in cells]
            for fut in futures:
                try:
                    outcomes.append(fut.result())
                except Exception as exc:  # noqa: BLE001 - recorded per row
                    outcomes.append(exc)
    rows: list[BenchRow] = []
    failures: list[str] = []
    for cell, outcome in zip(cells, outcomes):
        if isinstance(outcome, Exception):
            failures.append(f"{cell[2]}/{cell[0]}/{cell[1]}: {outcome}")
        else:
            rows.append(outcome)
    return sorted(rows, key=BenchRow.sort_key), failures


def synthetic_suite(seeds: list[int]) -> tuple[list[BenchRow], list[str]]:
    """Run the surface benchmark; returns (rows, per-row failure messages)."""
    z = synth.canonical_surface()
    peak = float(np.max(np.abs(z)))
    cache = SpectralCache(*z.shape)
    noise_specs = {
        "awgn": lambda s: synth.Awgn(1.0, seed=s),
        "cn": lambda s: synth.ComplexNoise(2.0, 1.0, seed=s),
        "mwgn": lambda s: synth.Mwgn(0.04, seed=s),
        "spn": lambda s: synth.SaltPepper(0.9, seed=s),
    }
    cells = []
    for noise, mk in noise_specs.items():
        noisy = [synth.apply_noise(z, mk(s)) for s in seeds]
        for lam in range(10, 311, 10):
            cells.append(
                ("tds", f"lambda={lam}", noise, noisy, z, peak,
                 lambda g, lam=float(lam): solve_tds(g, lam, cache).trend)
            )
        for h, w in _SYNTH_WINDOWS:
            cells.append(("median", f"{h}x{w}", noise, noisy, z, peak,
                          lambda g, s=(h, w): baselines.median_filter(g, s)))
        for h, w in [(3, 3), (5, 5)]:
            cells.append(("mean", f"{h}x{w}", noise, noisy, z, peak,
                          lambda g, s=(h, w): baselines.mean_filter(g, s)))
        for sg in _SYNTH_SIGMAS:
            cells.append(("gaussian", f"sigma={sg}", noise, noisy, z, peak,
                          lambda g, sg=sg: baselines.gaussian_filter(g, sg)))
        for h, w in _SYNTH_WINDOWS:
            cells.append(("wiener", f"{h}x{w}", noise, noisy, z, peak,
                          lambda g, s=(h, w): baselines.wiener_filter(g, s)))
    return _run_cells(cells)


def image_suite(seeds: list[int], image: np.ndarray | None = None) -> tuple[list[BenchRow], list[str]]:
    """Run the image benchmark on a [0, 1] grayscale image (bundled default).

    Noisy images are clipped back to [0, 1] before filtering, matching
    how image pipelines store corrupted frames; PSNR/SSIM use peak 1.
    """
    z = default_image() if image is None else np.asarray(image, dtype=float)
    cache = SpectralCache(*z.shape)
    noise_specs = {
        "awgn": lambda s: synth.Awgn(0.1, seed=s),
        "spn": lambda s: synth.SaltPepper(0.02, low=0.0, high=1.0, seed=s),
        "poisson": lambda s: synth.PoissonNoise(255.0, seed=s),
    }
    cells = []
    for noise, mk in noise_specs.items():
        noisy = [np.clip(synth.apply_noise(z, mk(s)), 0.0, 1.0) for s in seeds]
        for lam in _IMAGE_LAMBDAS[noise]:
            cells.append(("tds", f"lambda={lam}", noise, noisy, z, 1.0,
                          lambda g, lam=lam: solve_tds(g, lam, cache).trend))
        for gamma, delta in _IMAGE_TDS1[noise]:
            # no commas in the params field: it is one CSV column
            cells.append(
                ("tds1", f"gamma={gamma} delta={delta}", noise, noisy, z, 1.0,
                 lambda g, a=gamma, b=delta: solve_tds1(g, a, b, cache).trend)
            )
        for h, w in _IMAGE_WINDOWS:
            cells.append(("median", f"{h}x{w}", noise, noisy, z, 1.0,
                          lambda g, s=(h, w): baselines.median_filter(g, s)))
        for h, w in [(3, 3), (5, 5)]:
            cells.append(("mean", f"{h}x{w}", noise, noisy, z, 1.0,
                          lambda g, s=(h, w): baselines.mean_filter(g, s)))
        for sg in _IMAGE_SIGMAS:
            cells.append(("gaussian", f"sigma={sg}", noise, noisy, z, 1.0,
                          lambda g, sg=sg: baselines.gaussian_filter(g, sg)))
        for h, w in _IMAGE_WINDOWS:
            cells.append(("wiener", f"{h}x{w}", noise, noisy, z, 1.0,
                          lambda g, s=(h, w): baselines.wiener_filter(g, s)))
    return _run_cells(cells)


def run_suite(
    suite: str, seed_count: int, base_seed: int, image: np.ndarray | None = None
) -> tuple[list[BenchRow], list[str]]:
    """Run a named suite with seeds base_seed .. base_seed + seed_count - 1."""
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}, got {suite!r}")
    if seed_count < 1:
        raise ValueError(f"seed count must be >= 1, got {seed_count}")
    seeds = [base_seed + i for i in range(seed_count)]
    if suite == "synthetic":
        return synthetic_suite(seeds)
    return image_suite(seeds, image)


def family_times(rows: list[BenchRow]) -> dict[str, float]:
    """Worst unquantized per-row time per filter family, for reporting."""
    out: dict[str, float] = {}
    for r in rows:
        out[r.filter] = max(out.get(r.filter, 0.0), r.raw_seconds)
    return out
