"""Netpbm grayscale (PGM) reading and writing.

Reads plain (``P2``) and raw (``P5``, maxval <= 255) files, with ``#``
comments in the header.  Always writes ``P5`` with maxval 255.
"""

from __future__ import annotations

import os
from typing import Union

import numpy as np

from .conv import ImageGrid

PathLike = Union[str, "os.PathLike[str]"]


class PGMError(ValueError):
    pass


def _header(data: bytes, count: int) -> tuple[list[bytes], int]:
    """First ``count`` whitespace-separated tokens, skipping comments.

    Returns the tokens and the offset just past the single whitespace byte
    that ends the last one.
    """
    tokens: list[bytes] = []
    i, n = 0, len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i : i + 1] == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        if i >= n:
            raise PGMError("truncated header")
        j = i
        while j < n and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
            j += 1
        tokens.append(data[i:j])
        i = j
    return tokens, i + 1


def decode_pgm(data: bytes) -> ImageGrid:
    tokens, pos = _header(data, 4)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise PGMError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise PGMError(f"bad header: {exc}") from None
    if width <= 0 or height <= 0 or not 0 < maxval < 65536:
        raise PGMError(f"bad dimensions {width}x{height} or maxval {maxval}")
    count = width * height
    if magic == b"P5":
        if maxval > 255:
            raise PGMError("16-bit raw PGM is not supported")
        raw = data[pos : pos + count]
        if len(raw) < count:
            raise PGMError(f"expected {count} samples, found {len(raw)}")
        samples = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
    else:
        body = []
        for line in data[pos - 1 :].splitlines():
            body.extend(line.split(b"#", 1)[0].split())
        if len(body) < count:
            raise PGMError(f"expected {count} samples, found {len(body)}")
        samples = np.array([int(t) for t in body[:count]], dtype=np.float64)
    return ImageGrid(samples.reshape(height, width) / maxval)


def encode_pgm(img: ImageGrid) -> bytes:
    """Raw P5, samples ``round(clamp(v, 0, 1) * 255)`` with halves rounded up."""
    q = np.floor(np.clip(img.pixels, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + q.tobytes()


def read_pgm(path: PathLike) -> ImageGrid:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        return decode_pgm(data)
    except PGMError as exc:
        raise PGMError(f"{os.fspath(path)}: {exc}") from None


def write_pgm(img: ImageGrid, path: PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img))
