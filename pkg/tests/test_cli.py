import subprocess
import sys

import numpy as np
import pytest

from tdsmooth.cli import main
from tdsmooth.io_formats import read_matrix, read_pgm, write_matrix, write_pgm
from tdsmooth.metrics import mse
from tdsmooth.synth import Awgn, apply_noise, phantom


@pytest.fixture
def noisy_file(tmp_path, surface):
    z = apply_noise(surface, Awgn(1.0, seed=1))
    path = tmp_path / "noisy.txt"
    write_matrix(z, path)
    return path


@pytest.fixture
def clean_file(tmp_path, surface):
    path = tmp_path / "clean.txt"
    write_matrix(surface, path)
    return path


def test_decompose_zero_weight_identity(tmp_path, noisy_file):
    out = tmp_path / "g.txt"
    code = main(["decompose", str(noisy_file), "--lambda", "0", "--out-trend", str(out)])
    assert code == 0
    assert out.read_bytes() == noisy_file.read_bytes()


def test_decompose_report_fluctuation_band(tmp_path, noisy_file, capsys):
    code = main(
        ["decompose", str(noisy_file), "--lambda", "100", "--report",
         "--out-trend", str(tmp_path / "g.txt"), "--out-fluct", str(tmp_path / "c.txt")]
    )
    assert code == 0
    report = dict(
        line.split(": ") for line in capsys.readouterr().out.strip().splitlines()
    )
    assert 0.90 <= float(report["fluct-std"]) <= 1.05
    assert float(report["residual"]) <= 1e-6
    g = read_matrix(tmp_path / "g.txt")
    c = read_matrix(tmp_path / "c.txt")
    z = read_matrix(noisy_file)
    assert np.abs(g + c - z).max() <= 1e-12


def test_decompose_directional_beats_global_on_fixture(tmp_path, surface):
    # fine-tuned directional weights improve on the single global weight
    z = apply_noise(surface, Awgn(1.0, seed=9))
    noisy = tmp_path / "z.txt"
    write_matrix(z, noisy)
    g1 = tmp_path / "g1.txt"
    g2 = tmp_path / "g2.txt"
    assert main(["decompose", str(noisy), "--gamma", "90", "--delta", "40",
                 "--out-trend", str(g1)]) == 0
    assert main(["decompose", str(noisy), "--lambda", "60",
                 "--out-trend", str(g2)]) == 0
    assert mse(surface, read_matrix(g1)) < mse(surface, read_matrix(g2))


def test_decompose_per_line_and_mixed_variants(tmp_path, noisy_file):
    m, n = 31, 21
    gvec = ",".join(["2.0"] * m)
    dvec = ",".join(["3.0"] * n)
    out = tmp_path / "g.txt"
    assert main(["decompose", str(noisy_file), "--gamma-vec", gvec,
                 "--delta-vec", dvec, "--out-trend", str(out)]) == 0
    tds2 = read_matrix(out)
    assert main(["decompose", str(noisy_file), "--gamma", "2.0",
                 "--delta-vec", dvec, "--out-trend", str(out)]) == 0
    tds3 = read_matrix(out)
    assert main(["decompose", str(noisy_file), "--gamma", "2.0", "--delta", "3.0",
                 "--out-trend", str(out)]) == 0
    tds1 = read_matrix(out)
    assert np.linalg.norm(tds2 - tds1) <= 1e-7 * np.linalg.norm(tds1)
    assert np.linalg.norm(tds3 - tds1) <= 1e-7 * np.linalg.norm(tds1)


def test_argument_conflicts_exit_2(noisy_file, tmp_path):
    out = str(tmp_path / "g.txt")
    assert main(["decompose", str(noisy_file), "--lambda", "1", "--gamma", "2",
                 "--out-trend", out]) == 2
    assert main(["decompose", str(noisy_file), "--out-trend", out]) == 2
    assert main(["decompose", str(noisy_file), "--gamma", "2", "--out-trend", out]) == 2
    assert main(["decompose", str(tmp_path / "missing.txt"), "--lambda", "1",
                 "--out-trend", out]) == 2
    assert main(["nonsense"]) == 2


def test_solver_failure_exits_3(noisy_file, tmp_path):
    gvec = ",".join(["1000.0"] * 31)
    dvec = ",".join(["1000.0"] * 21)
    code = main(["decompose", str(noisy_file), "--gamma-vec", gvec, "--delta-vec", dvec,
                 "--max-iter", "1", "--out-trend", str(tmp_path / "g.txt")])
    assert code == 3


def test_sharpen_zero_weight_copies_pixels(tmp_path):
    img = phantom((32, 24))
    src = tmp_path / "in.pgm"
    dst = tmp_path / "out.pgm"
    write_pgm(img, src, 255)
    assert main(["sharpen", str(src), "--lambda", "0", "--out", str(dst)]) == 0
    a, _ = read_pgm(src)
    b, _ = read_pgm(dst)
    assert np.array_equal(a, b)


def test_sharpen_rejects_matrix_input(tmp_path, noisy_file):
    assert main(["sharpen", str(noisy_file), "--lambda", "1",
                 "--out", str(tmp_path / "o.pgm")]) == 2


def test_smooth_then_sharpen_round_trip(tmp_path):
    img = phantom((48, 40))
    src = tmp_path / "in.pgm"
    mid = tmp_path / "smooth.pgm"
    back = tmp_path / "back.pgm"
    write_pgm(img, src, 255)
    # the intermediate trend goes out at 16-bit depth so sharpening does
    # not amplify 8-bit quantization
    assert main(["decompose", str(src), "--lambda", "2", "--out-trend", str(mid),
                 "--out-maxval", "65535"]) == 0
    assert main(["sharpen", str(mid), "--lambda", "2", "--out", str(back)]) == 0
    a, _ = read_pgm(src)
    b, _ = read_pgm(back)
    assert np.abs(a - b).max() <= 1.0 / 255.0


def test_sharpen_strength_monotone_in_weight(tmp_path):
    img = phantom((40, 40))
    src = tmp_path / "in.pgm"
    write_pgm(img, src, 255)
    base, _ = read_pgm(src)
    norms = []
    for lam in (0.2, 0.4, 0.6, 0.8, 1.0):
        dst = tmp_path / f"s{lam}.pgm"
        assert main(["sharpen", str(src), "--lambda", str(lam), "--out", str(dst),
                     "--out-maxval", "65535"]) == 0
        out, _ = read_pgm(dst)
        norms.append(np.linalg.norm(out - base))
    assert all(a < b for a, b in zip(norms, norms[1:]))


def test_tune_cli_converges_and_writes_trace(tmp_path, noisy_file):
    trace = tmp_path / "trace.csv"
    code = main(["tune", str(noisy_file), "--metric", "fluct-std", "--target", "1.0",
                 "--eps", "0.008", "--step", "5", "--max-lambda", "2000",
                 "--trace", str(trace)])
    assert code == 0
    lines = trace.read_text().strip().splitlines()
    assert lines[0] == "lambda,alpha"
    assert len(lines) == 2 + 750 // 5  # header + scan from 0 to 750 in steps of 5
    last = lines[-1].split(",")
    assert float(last[0]) == 750.0


def test_tune_cli_exhaustion_exits_4(noisy_file, clean_file, tmp_path):
    trace = tmp_path / "t.csv"
    code = main(["tune", str(noisy_file), "--metric", "ssim", "--target", "2.0",
                 "--eps", "0.001", "--step", "10", "--max-lambda", "50",
                 "--reference", str(clean_file), "--trace", str(trace)])
    assert code == 4
    assert len(trace.read_text().strip().splitlines()) == 7  # header + {0,10,...,50}


def test_tune_target_alpha_at_zero(noisy_file, clean_file):
    # target the metric value already achieved at the initial weight
    z = read_matrix(noisy_file)
    ref = read_matrix(clean_file)
    alpha0 = mse(ref, z)
    code = main(["tune", str(noisy_file), "--metric", "mse", "--target", str(alpha0),
                 "--eps", "1e-9", "--step", "10", "--max-lambda", "100",
                 "--reference", str(clean_file)])
    assert code == 0


def test_console_entry_point_subprocess(tmp_path, noisy_file):
    # exit codes must survive the real process boundary
    result = subprocess.run(
        [sys.executable, "-m", "tdsmooth", "tune", str(noisy_file), "--metric",
         "fluct-std", "--target", "99.0", "--eps", "0.001", "--step", "200",
         "--max-lambda", "400"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 4
    assert "exhausted" in result.stdout
    result = subprocess.run(
        [sys.executable, "-m", "tdsmooth", "decompose", str(noisy_file)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 2


def test_tune_cli_psnr_metric_with_peak_and_initial(tmp_path, noisy_file, clean_file, capsys):
    # scan upward from a nonzero start against the reference PSNR
    code = main(["tune", str(noisy_file), "--metric", "psnr", "--target", "41.0",
                 "--eps", "1.0", "--step", "10", "--max-lambda", "1000",
                 "--initial-lambda", "20", "--reference", str(clean_file),
                 "--peak", "18.3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "status: converged" in out


def test_tune_cli_accelerated_matches_scan(tmp_path, noisy_file, capsys):
    args = ["tune", str(noisy_file), "--metric", "fluct-std", "--target", "1.0",
            "--eps", "0.008", "--step", "5", "--max-lambda", "2000"]
    assert main(args) == 0
    scan_out = capsys.readouterr().out
    assert main(args + ["--accelerate"]) == 0
    fast_out = capsys.readouterr().out
    assert scan_out == fast_out
