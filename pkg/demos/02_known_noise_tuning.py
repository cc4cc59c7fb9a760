"""Pick the smoothing weight by matching the known noise scale.

When the corruption is known to be unit Gaussian, scan the weight until
the fluctuation's sample std reaches 1.0. The scan is the literal
step-and-check loop; the accelerated variant bisects the same grid and
lands on the same answer.
"""

import time

from tdsmooth import Awgn, TuneConfig, apply_noise, canonical_surface, tune_lambda

noisy = apply_noise(canonical_surface(), Awgn(sigma=1.0, seed=1))

cfg = TuneConfig(metric="fluct-std", target=1.0, eps=0.008, step=5.0, max_lambda=2000.0)

t0 = time.perf_counter()
scan = tune_lambda(noisy, None, cfg)
t_scan = time.perf_counter() - t0

t0 = time.perf_counter()
fast = tune_lambda(noisy, None, cfg, accelerate=True)
t_fast = time.perf_counter() - t0

print(f"scan:     status={scan.status} lambda*={scan.lam:g} "
      f"alpha={scan.alpha:.4f} ({len(scan.trace)} solves, {t_scan:.2f}s)")
print(f"bisected: status={fast.status} lambda*={fast.lam:g} "
      f"alpha={fast.alpha:.4f} ({len(fast.trace)} solves, {t_fast:.2f}s)")

print("\nlast scan steps (lambda, fluctuation std):")
for lam, alpha in scan.trace[-5:]:
    print(f"  {lam:>6g}  {alpha:.4f}")

print("\nAn unreachable target exhausts the scan instead:")
bad = TuneConfig(metric="fluct-std", target=50.0, eps=0.001, step=100.0, max_lambda=500.0)
result = tune_lambda(noisy, None, bad)
print(f"  status={result.status} after visiting "
      f"{[lam for lam, _ in result.trace]}")
