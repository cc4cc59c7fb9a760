import numpy as np
import pytest

from tdsmooth.bench import default_image
from tdsmooth.cli import main
from tdsmooth.io_formats import write_pgm
from tdsmooth.metrics import psnr
from tdsmooth.solver import SpectralCache, solve_tds
from tdsmooth.synth import Awgn, apply_noise, phantom


def test_bundled_image_matches_generator():
    img = default_image()
    assert img.shape == (128, 128)
    # the bundle is the quantized phantom
    expected = np.rint(phantom((128, 128)) * 255) / 255
    assert np.array_equal(img, expected)


def test_denoising_psnr_anchor():
    # unit-range image, gaussian noise of variance 0.01: smoothing at
    # weight 4 restores about 30.9 dB (band around the reference level)
    img = default_image()
    cache = SpectralCache(*img.shape)
    values = []
    for seed in range(5):
        noisy = np.clip(apply_noise(img, Awgn(0.1, seed=seed)), 0.0, 1.0)
        values.append(psnr(img, solve_tds(noisy, 4.0, cache).trend, 1.0))
    assert 30.85 - 1.5 <= float(np.median(values)) <= 30.85 + 1.5


def test_bench_accepts_external_image(tmp_path):
    img = phantom((32, 32))
    path = tmp_path / "small.pgm"
    write_pgm(img, path, 255)
    out = tmp_path / "table.csv"
    assert main(["bench", "--suite", "image", "--seeds", "1", "--seed", "2",
                 "--out", str(out), "--image", str(path)]) == 0
    assert out.read_text().count("\n") > 100
