"""Benchmark the smoother against classic filters on the noisy surface.

Runs the synthetic suite (four noise models x five filter families, each
over its parameter grid) with a few seeds, writes the CSV table, and
prints the per-family best cells. The trend decomposition leads on the
Gaussian-flavored noise models; impulse noise is where median filtering
traditionally competes.
"""

from pathlib import Path

from tdsmooth.bench import family_times, run_suite, write_csv

SEEDS = 3
BASE = 0

rows, failures = run_suite("synthetic", SEEDS, BASE)
out = Path("demo_out")
out.mkdir(exist_ok=True)
csv_path = out / "synthetic_bench.csv"
write_csv(rows, csv_path, BASE)
print(f"{len(rows)} table cells ({SEEDS} seeds) -> {csv_path}")
if failures:
    print(f"failed rows: {failures}")

for noise in ("awgn", "cn", "mwgn", "spn"):
    print(f"\n{noise}: best parameter per family (median MSE / PSNR)")
    sub = [r for r in rows if r.noise == noise]
    for family in ("tds", "median", "mean", "gaussian", "wiener"):
        best = min((r for r in sub if r.filter == family), key=lambda r: r.mse)
        print(f"  {family:>8}  {best.params:<12} mse={best.mse:<10.4g} "
              f"psnr={best.psnr:.2f}")

print("\nslowest row per family (median wall time, seconds):")
for family, seconds in sorted(family_times(rows).items()):
    print(f"  {family:>8}  {seconds:.2e}")
