"""Discrete convolution: 1D signals, images, and the DFT cross-check.

A :class:`Signal1D` is a function ``Z -> R`` that is zero outside
``[offset, offset + len(samples))``.  Convolution is the integer-indexed
instance of the monoid-semiring product::

    (f * g)(w) = sum_u f(u) * g(w - u)

Samples only need ``+`` and ``*``, so a signal of signals works too: an
image is a signal (over rows) of signals (over columns), and 2D convolution
falls out of 1D convolution by nesting.  :func:`conv2d` does it the direct
way with numpy; :func:`conv2d_nested` does it the nested way, as a check.

Image convolution is true convolution: the kernel is flipped.  The bundled
kernels are symmetric, so this only matters for custom kernels.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .algebra import NAT, Semiring
from .poly import DensePoly, dense_mul


class Signal1D:
    """Finitely supported samples starting at ``offset``."""

    __slots__ = ("offset", "samples")

    def __init__(self, samples: Sequence = (), offset: int = 0):
        self.samples = tuple(samples)
        self.offset = offset if self.samples else 0

    @classmethod
    def impulse(cls, at: int = 0, weight=1.0) -> "Signal1D":
        return cls([weight], at)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def end(self) -> int:
        return self.offset + len(self.samples)

    def __getitem__(self, i: int):
        j = i - self.offset
        if 0 <= j < len(self.samples):
            return self.samples[j]
        return 0

    def __add__(self, other: "Signal1D") -> "Signal1D":
        if not self.samples:
            return other
        if not other.samples:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.end, other.end)
        out = []
        for i in range(lo, hi):
            inside_a = self.offset <= i < self.end
            inside_b = other.offset <= i < other.end
            if inside_a and inside_b:
                out.append(self[i] + other[i])
            else:
                out.append(self[i] if inside_a else other[i])
        return Signal1D(out, lo)

    def __mul__(self, other: "Signal1D") -> "Signal1D":
        return conv1d(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Signal1D)
            and self.offset == other.offset
            and self.samples == other.samples
        )

    def __hash__(self):
        return hash((self.offset, self.samples))

    def close_to(self, other: "Signal1D", tol: float = 1e-9) -> bool:
        lo = min(self.offset, other.offset)
        hi = max(self.end, other.end)
        return all(abs(self[i] - other[i]) <= tol for i in range(lo, hi))

    def __repr__(self) -> str:
        return f"Signal1D({list(self.samples)!r}, offset={self.offset})"


def conv1d(f: Signal1D, g: Signal1D) -> Signal1D:
    """Full convolution.  Each output sums over ``u`` in increasing order."""
    if not f.samples or not g.samples:
        return Signal1D()
    out: list[Any] = [None] * (len(f) + len(g) - 1)
    for i, a in enumerate(f.samples):
        for j, b in enumerate(g.samples):
            term = a * b
            k = i + j
            out[k] = term if out[k] is None else out[k] + term
    return Signal1D(out, f.offset + g.offset)


def nat_conv(f, g, ring: Semiring = NAT):
    """Convolution over the naturals as index monoid: long multiplication.

    This is :func:`semiconv.poly.dense_mul` under another name.
    """
    if isinstance(f, DensePoly):
        return f * g
    return dense_mul(f, g, ring)


# -- images ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ImageGrid:
    """Row-major grayscale pixels, nominally in ``[0, 1]``."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2D pixel array, got shape {arr.shape}")
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def constant(cls, width: int, height: int, v: float) -> "ImageGrid":
        return cls(np.full((height, width), v, dtype=np.float64))

    def __eq__(self, other) -> bool:
        return isinstance(other, ImageGrid) and np.array_equal(self.pixels, other.pixels)


class Kernel(ImageGrid):
    """An image with odd width and height, anchored at its center."""

    def __post_init__(self):
        super().__post_init__()
        h, w = self.pixels.shape
        if h % 2 == 0 or w % 2 == 0:
            raise ValueError(f"kernel dimensions must be odd, got {w}x{h}")

    @property
    def anchor(self) -> tuple[int, int]:
        return self.height // 2, self.width // 2


def standard_kernels() -> dict[str, Kernel]:
    box = np.full((3, 3), 1.0 / 9.0)
    sharpen = np.array([[0, -1, 0], [-1, 5, -1], [0, -1, 0]], dtype=np.float64)
    edge = np.full((3, 3), -1.0)
    edge[1, 1] = 8.0
    ident = np.zeros((3, 3))
    ident[1, 1] = 1.0
    return {
        "identity": Kernel(ident),
        "blur": Kernel(box),
        "sharpen": Kernel(sharpen),
        "edge": Kernel(edge),
    }


def conv2d(img: ImageGrid, k: Kernel) -> ImageGrid:
    """Same-size convolution with zero padding.

    ``out[y, x] = sum k[ry + dy, rx + dx] * img[y - dy, x - dx]`` over the
    kernel taps, accumulated tap by tap in row-major kernel order.
    """
    if not isinstance(k, Kernel):
        k = Kernel(k.pixels)
    ry, rx = k.anchor
    h, w = img.height, img.width
    padded = np.zeros((h + 2 * ry, w + 2 * rx))
    padded[ry : ry + h, rx : rx + w] = img.pixels
    out = np.zeros((h, w))
    for ky in range(k.height):
        for kx in range(k.width):
            c = k.pixels[ky, kx]
            if c == 0:
                continue
            dy, dx = ky - ry, kx - rx
            out += c * padded[ry - dy : ry - dy + h, rx - dx : rx - dx + w]
    return ImageGrid(out)


def to_nested(pixels: np.ndarray, origin: tuple[int, int] = (0, 0)) -> Signal1D:
    """Rows become a signal whose samples are column signals."""
    oy, ox = origin
    return Signal1D([Signal1D([float(v) for v in row], ox) for row in pixels], oy)


def conv2d_nested(img: ImageGrid, k: Kernel) -> ImageGrid:
    """:func:`conv2d` computed as 1D convolution of signals of signals."""
    ry, rx = k.anchor
    full = conv1d(to_nested(img.pixels), to_nested(k.pixels, (-ry, -rx)))
    out = np.zeros((img.height, img.width))
    for y in range(img.height):
        row = full[y]
        if isinstance(row, Signal1D):
            for x in range(img.width):
                out[y, x] = row[x]
    return ImageGrid(out)


# -- convolution theorem -----------------------------------------------------


def dft(xs: Sequence, inverse: bool = False) -> list[complex]:
    """Naive O(n^2) discrete Fourier transform."""
    n = len(xs)
    sign = 1 if inverse else -1
    out = []
    for k in range(n):
        acc = 0j
        for j, x in enumerate(xs):
            acc += x * cmath.exp(sign * 2j * cmath.pi * j * k / n)
        out.append(acc / n if inverse else acc)
    return out


def cyclic_conv(f: Sequence, g: Sequence, n: int) -> list:
    """Convolution over Z_n of two sample lists placed at index 0."""
    out = [0.0] * n
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[(i + j) % n] += a * b
    return out


def _embed(s: Signal1D | Sequence, n: int) -> list:
    xs = list(s.samples if isinstance(s, Signal1D) else s)
    if len(xs) > n:
        raise ValueError(f"signal of length {len(xs)} does not fit in Z_{n}")
    return xs + [0.0] * (n - len(xs))


def dft_check(f: Signal1D | Sequence, g: Signal1D | Sequence, n: int, tol: float = 1e-9) -> bool:
    """Do direct cyclic convolution and inverse-DFT of the DFT product agree?"""
    fa, ga = _embed(f, n), _embed(g, n)
    direct = cyclic_conv(fa, ga, n)
    spectral = dft([x * y for x, y in zip(dft(fa), dft(ga))], inverse=True)
    return all(abs(d - s) <= tol for d, s in zip(direct, spectral))
