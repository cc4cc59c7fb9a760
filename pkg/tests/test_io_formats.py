import numpy as np
import pytest

from tdsmooth.io_formats import (
    FormatError,
    read_matrix,
    read_pgm,
    write_matrix,
    write_pgm,
)


def test_matrix_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    g = rng.normal(size=(5, 5)) * 1e3
    path = tmp_path / "m.txt"
    write_matrix(g, path)
    assert np.array_equal(read_matrix(path), g)


def test_matrix_round_trip_many_random_grids(tmp_path):
    rng = np.random.default_rng(1)
    path = tmp_path / "m.txt"
    for _ in range(1000):
        m = rng.integers(1, 7)
        n = rng.integers(1, 7)
        g = rng.normal(size=(m, n)) * 10.0 ** rng.integers(-12, 12)
        write_matrix(g, path)
        assert np.array_equal(read_matrix(path), g)


def test_matrix_header_and_count_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("tds-matrix v1 2 2\n1 2\n3\n")
    with pytest.raises(FormatError) as err:
        read_matrix(path)
    assert err.value.line == 3
    path.write_text("not-a-header\n")
    with pytest.raises(FormatError):
        read_matrix(path)
    path.write_text("tds-matrix v1 3 2\n1 2\n3 4\n")
    with pytest.raises(FormatError) as err:
        read_matrix(path)
    assert "3 data rows" in str(err.value)


def test_matrix_nonfinite_token(tmp_path):
    path = tmp_path / "inf.txt"
    path.write_text("tds-matrix v1 1 2\n1e309 0\n")
    with pytest.raises(FormatError) as err:
        read_matrix(path)
    assert err.value.line == 2
    assert err.value.column == 1
    path.write_text("tds-matrix v1 1 2\n0 nan\n")
    with pytest.raises(FormatError):
        read_matrix(path)


def test_pgm_zero_image_bytes(tmp_path):
    path = tmp_path / "z.pgm"
    write_pgm(np.zeros((4, 4)), path, 255)
    data = path.read_bytes()
    assert data == b"P5\n4 4\n255\n" + bytes(16)


def test_pgm_half_rounds_to_even(tmp_path):
    path = tmp_path / "h.pgm"
    write_pgm(np.full((1, 1), 0.5), path, 255)
    img, maxval = read_pgm(path)
    assert maxval == 255
    assert img[0, 0] * 255 == 128.0  # 127.5 ties to even


def test_pgm_round_trip_quantized(tmp_path):
    rng = np.random.default_rng(2)
    for maxval in (255, 65535):
        g = rng.integers(0, maxval + 1, size=(9, 7)).astype(float) / maxval
        p1 = tmp_path / "a.pgm"
        p2 = tmp_path / "b.pgm"
        write_pgm(g, p1, maxval)
        img, mv = read_pgm(p1)
        assert mv == maxval
        assert np.array_equal(img, g)
        write_pgm(img, p2, maxval)
        assert p1.read_bytes() == p2.read_bytes()


def test_pgm_quantization_error_bound(tmp_path):
    rng = np.random.default_rng(3)
    g = rng.uniform(size=(8, 8))
    path = tmp_path / "q.pgm"
    write_pgm(g, path, 255)
    img, _ = read_pgm(path)
    assert np.abs(img - g).max() <= 0.5 / 255 + 1e-12


def test_pgm_header_comments_and_16bit(tmp_path):
    payload = np.arange(6, dtype=">u2").tobytes()
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5 # comment\n# another\n3 2\n65535\n" + payload)
    img, maxval = read_pgm(path)
    assert maxval == 65535
    assert img.shape == (2, 3)
    assert img[1, 2] == pytest.approx(5.0 / 65535)


def test_pgm_errors(tmp_path):
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P6\n2 2\n255\n" + bytes(12))
    with pytest.raises(FormatError):
        read_pgm(path)
    path.write_bytes(b"P5\n2 2\n255\n" + bytes(3))  # truncated payload
    with pytest.raises(FormatError):
        read_pgm(path)
    path.write_bytes(b"P5\n2 2\n255\n" + bytes(5))  # trailing garbage
    with pytest.raises(FormatError):
        read_pgm(path)
    path.write_bytes(b"P5\n0 2\n255\n")
    with pytest.raises(FormatError):
        read_pgm(path)
    path.write_bytes(b"P5\n2 2\n70000\n" + bytes(8))
    with pytest.raises(FormatError):
        read_pgm(path)


def test_pgm_out_of_range_handling(tmp_path):
    g = np.array([[1.2, 0.5], [-0.1, 0.0]])
    path = tmp_path / "o.pgm"
    clipped = write_pgm(g, path, 255, clamp=True)
    assert clipped == 2
    img, _ = read_pgm(path)
    assert img[0, 0] == 1.0
    assert img[1, 0] == 0.0
    with pytest.raises(ValueError):
        write_pgm(g, path, 255, clamp=False)
    with pytest.raises(ValueError):
        write_pgm(np.zeros((2, 2)), path, 1000)
