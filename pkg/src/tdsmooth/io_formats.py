"""Deterministic file formats: plain-text matrices and binary PGM images.

Both formats are specified bit-exactly in docs/formats.md.  Matrix files
round-trip float64 grids losslessly; PGM files carry grayscale images as
8- or 16-bit samples scaled to [0, 1] in memory.
"""

from __future__ import annotations

import numpy as np

from .core import as_grid

MATRIX_MAGIC = "tds-matrix"
MATRIX_VERSION = "v1"


class FormatError(ValueError):
    """Malformed file content; carries the location when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


def write_matrix(g, path) -> None:
    """Write a grid as a text matrix file with lossless float precision."""
    g = as_grid(g, 1, "g")
    m, n = g.shape
    with open(path, "w", newline="\n") as f:
        f.write(f"{MATRIX_MAGIC} {MATRIX_VERSION} {m} {n}\n")
        for row in g:
            f.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    """Parse a text matrix file; errors report the offending line/column."""
    with open(path, "r") as f:
        lines = f.read().split("\n")
    if not lines or not lines[0].strip():
        raise FormatError("empty file, expected matrix header", line=1)
    head = lines[0].split()
    if len(head) != 4 or head[0] != MATRIX_MAGIC or head[1] != MATRIX_VERSION:
        raise FormatError(
            f"bad header {lines[0]!r}, expected '{MATRIX_MAGIC} {MATRIX_VERSION} <rows> <cols>'",
            line=1,
        )
    try:
        m, n = int(head[2]), int(head[3])
    except ValueError:
        raise FormatError(f"non-integer dimensions in header {lines[0]!r}", line=1) from None
    if m < 1 or n < 1:
        raise FormatError(f"dimensions must be positive, got {m}x{n}", line=1)
    body = lines[1:]
    while body and body[-1] == "":
        body.pop()
    if len(body) != m:
        raise FormatError(
            f"expected {m} data rows, found {len(body)}", line=1 + min(len(body) + 1, m + 1)
        )
    out = np.empty((m, n))
    for r, text in enumerate(body):
        tokens = text.split()
        if len(tokens) != n:
            raise FormatError(
                f"expected {n} values, found {len(tokens)}", line=r + 2
            )
        for c, tok in enumerate(tokens):
            try:
                v = float(tok)
            except ValueError:
                raise FormatError(f"bad number {tok!r}", line=r + 2, column=c + 1) from None
            if not np.isfinite(v):
                raise FormatError(f"non-finite value {tok!r}", line=r + 2, column=c + 1)
            out[r, c] = v
    return out


def _pgm_tokens(data: bytes):
    """Yield header tokens, skipping whitespace and '#' comments."""
    i = 0
    while i < len(data):
        b = data[i : i + 1]
        if b.isspace():
            i += 1
            continue
        if b == b"#":
            j = data.find(b"\n", i)
            i = len(data) if j < 0 else j + 1
            continue
        j = i
        while j < len(data) and not data[j : j + 1].isspace():
            j += 1
        yield data[i:j], j
        i = j


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Read a binary (P5) PGM file.

    Returns the image scaled to [0, 1] by its maxval, and the maxval.
    """
    with open(path, "rb") as f:
        data = f.read()
    tokens = _pgm_tokens(data)
    try:
        magic, _ = next(tokens)
    except StopIteration:
        raise FormatError("empty file, expected PGM magic 'P5'") from None
    if magic != b"P5":
        raise FormatError(f"bad magic {magic!r}, expected b'P5'")
    header = []
    end = 0
    for _ in range(3):
        try:
            tok, end = next(tokens)
        except StopIteration:
            raise FormatError("truncated PGM header") from None
        try:
            header.append(int(tok))
        except ValueError:
            raise FormatError(f"bad PGM header token {tok!r}") from None
    width, height, maxval = header
    if width < 1 or height < 1:
        raise FormatError(f"dimensions must be positive, got {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise FormatError(f"maxval must be in [1, 65535], got {maxval}")
    payload = data[end + 1 :]  # exactly one whitespace byte after maxval
    dtype = ">u2" if maxval > 255 else np.uint8
    expected = width * height * (2 if maxval > 255 else 1)
    if len(payload) != expected:
        raise FormatError(
            f"expected {expected} payload bytes for {width}x{height} maxval {maxval}, "
            f"found {len(payload)}"
        )
    samples = np.frombuffer(payload, dtype=dtype).reshape((height, width))
    if (samples > maxval).any():
        raise FormatError(f"sample exceeds maxval {maxval}")
    return samples.astype(float) / maxval, maxval


def write_pgm(g, path, maxval: int = 255, clamp: bool = True) -> int:
    """Write a [0, 1] grid as a binary PGM file.

    Samples are ``round(g * maxval)`` with ties to even.  Out-of-range
    samples are clipped when ``clamp`` is set (the return value counts
    them); otherwise they raise.
    """
    g = as_grid(g, 1, "g")
    if maxval not in (255, 65535):
        raise ValueError(f"maxval must be 255 or 65535, got {maxval}")
    samples = np.rint(g * maxval)
    clipped = int(((samples < 0) | (samples > maxval)).sum())
    if clipped and not clamp:
        raise ValueError(
            f"{clipped} samples fall outside [0, {maxval}] and clamping is disabled"
        )
    samples = np.clip(samples, 0, maxval)
    dtype = ">u2" if maxval > 255 else np.uint8
    m, n = g.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{n} {m}\n{maxval}\n".encode("ascii"))
        f.write(samples.astype(dtype).tobytes())
    return clipped
