"""Binary PGM (P5) writer and reader for orbit images."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np


def write_pgm(path, pixels: np.ndarray, maxval: int = 255) -> None:
    pixels = np.asarray(pixels)
    if pixels.ndim != 2:
        raise ValueError("PGM images are 2-D")
    if pixels.min(initial=0) < 0 or pixels.max(initial=0) > maxval:
        raise ValueError(f"pixel values must lie in [0, {maxval}]")
    h, w = pixels.shape
    header = f"P5\n{w} {h}\n{maxval}\n".encode("ascii")
    dtype = np.uint8 if maxval < 256 else ">u2"
    Path(path).write_bytes(header + pixels.astype(dtype).tobytes())


_HEADER = re.compile(rb"P5(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)\s")


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    match = _HEADER.match(data)
    if not match:
        raise ValueError("not a binary PGM file")
    w, h, maxval = (int(g) for g in match.groups())
    dtype = np.uint8 if maxval < 256 else ">u2"
    body = np.frombuffer(data, dtype=dtype, offset=match.end(), count=w * h)
    return body.reshape(h, w).astype(np.int64)


def residue_pixels(values: np.ndarray, m: int) -> np.ndarray:
    """Gray level a * floor(255 / (m-1)); everything is black when m = 1."""
    if m == 1:
        return np.zeros_like(values, dtype=np.int64)
    return np.asarray(values, dtype=np.int64) * (255 // (m - 1))
