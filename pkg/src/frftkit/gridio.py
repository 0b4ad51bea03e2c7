"""Raster and field I/O: binary PGM images, the FRC1 complex-field format,
test-image synthesis, amplitude rendering, and CSV surface export."""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError

__all__ = [
    "ImageU8",
    "load_pgm",
    "save_pgm",
    "pgm_bytes",
    "parse_pgm",
    "normalize",
    "denormalize",
    "save_cfield",
    "load_cfield",
    "cfield_bytes",
    "parse_cfield",
    "synth_test_image",
    "amplitude_map",
    "export_surface_csv",
    "surface_csv_text",
]

_CFIELD_MAGIC = b"FRC1"


@dataclass(frozen=True, eq=False)
class ImageU8:
    """8-bit grayscale raster, row-major."""

    width: int
    height: int
    pixels: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self):
        if self.pixels.shape != (self.height, self.width):
            raise ValueError("pixel buffer does not match declared dimensions")

    def __eq__(self, other):
        if not isinstance(other, ImageU8):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and np.array_equal(self.pixels, other.pixels))


def _image_from_array(arr: np.ndarray) -> ImageU8:
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    return ImageU8(width=arr.shape[1], height=arr.shape[0], pixels=arr)


# ---------------------------------------------------------------------------
# PGM (binary P5, maxval 255)

def _read_token(buf: io.BytesIO) -> bytes:
    token = b""
    while True:
        ch = buf.read(1)
        if ch == b"":
            raise FormatError("truncated PGM header")
        if ch == b"#":  # comment runs to end of line
            while ch not in (b"\n", b""):
                ch = buf.read(1)
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def parse_pgm(data: bytes) -> ImageU8:
    buf = io.BytesIO(data)
    magic = _read_token(buf)
    if magic != b"P5":
        raise FormatError(f"unsupported PGM magic {magic!r}; only binary P5 is handled")
    try:
        width = int(_read_token(buf))
        height = int(_read_token(buf))
        maxval = int(_read_token(buf))
    except ValueError as exc:
        raise FormatError("malformed PGM header") from exc
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"unsupported PGM maxval {maxval}; expected 255")
    payload = buf.read(width * height)
    if len(payload) != width * height:
        raise FormatError(f"truncated PGM payload: expected {width * height} bytes, got {len(payload)}")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    return _image_from_array(pixels)


def pgm_bytes(image: ImageU8) -> bytes:
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def load_pgm(path) -> ImageU8:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def save_pgm(image: ImageU8, path) -> None:
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(image))


def normalize(image: ImageU8) -> np.ndarray:
    """Pixel values scaled to [0, 1]."""
    return image.pixels.astype(np.float64) / 255.0


def denormalize(grid) -> ImageU8:
    """round(clamp(v, 0, 1) * 255) as an 8-bit raster."""
    g = np.asarray(grid, dtype=float)
    if g.ndim != 2:
        raise ValueError("expected a 2D grid")
    return _image_from_array(np.rint(np.clip(g, 0.0, 1.0) * 255.0).astype(np.uint8))


# ---------------------------------------------------------------------------
# FRC1 complex field: magic, u32le width/height, row-major (re, im) f64le

def cfield_bytes(grid) -> bytes:
    g = np.asarray(grid, dtype=complex)
    if g.ndim != 2:
        raise ValueError("expected a 2D field")
    h, w = g.shape
    payload = np.empty((h, w, 2), dtype="<f8")
    payload[:, :, 0] = g.real
    payload[:, :, 1] = g.imag
    return _CFIELD_MAGIC + struct.pack("<II", w, h) + payload.tobytes()


def parse_cfield(data: bytes) -> np.ndarray:
    if data[:4] != _CFIELD_MAGIC:
        raise FormatError(f"bad field magic {data[:4]!r}; expected {_CFIELD_MAGIC!r}")
    if len(data) < 12:
        raise FormatError("truncated field header")
    w, h = struct.unpack("<II", data[4:12])
    expected = 12 + 16 * w * h
    if len(data) != expected:
        raise FormatError(f"field payload length mismatch: expected {expected} bytes, got {len(data)}")
    raw = np.frombuffer(data, dtype="<f8", offset=12).reshape(h, w, 2)
    return raw[:, :, 0] + 1j * raw[:, :, 1]


def save_cfield(grid, path) -> None:
    with open(path, "wb") as fh:
        fh.write(cfield_bytes(grid))


def load_cfield(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_cfield(fh.read())


# ---------------------------------------------------------------------------

def synth_test_image(n: int) -> ImageU8:
    """Four-quadrant checker: diagonal blocks 0, anti-diagonal blocks 255."""
    n = int(n)
    if n < 2 or n % 2:
        raise ValueError(f"test image size must be even and >= 2, got {n}")
    img = np.zeros((n, n), dtype=np.uint8)
    h = n // 2
    img[:h, h:] = 255
    img[h:, :h] = 255
    return _image_from_array(img)


def amplitude_map(grid, scale: str = "linear") -> ImageU8:
    """Magnitude rendering: |values| (or log1p|values|) normalized by the
    maximum and quantized to 8 bits.  An all-zero field maps to all zeros."""
    g = np.abs(np.asarray(grid, dtype=complex))
    if g.ndim != 2:
        raise ValueError("expected a 2D field")
    if not np.all(np.isfinite(g)):
        raise ValueError("field must be finite")
    if scale == "log":
        g = np.log1p(g)
    elif scale != "linear":
        raise ValueError(f"unknown amplitude scale {scale!r}")
    peak = g.max() if g.size else 0.0
    if peak == 0.0:
        return _image_from_array(np.zeros(g.shape, dtype=np.uint8))
    return _image_from_array(np.rint(g / peak * 255.0).astype(np.uint8))


def surface_csv_text(grid) -> str:
    """CSV rows "x,y,re,im,abs" over the centered grid, row-major order,
    17-significant-digit formatting for lossless round trips."""
    g = np.asarray(grid, dtype=complex)
    if g.ndim != 2:
        raise ValueError("expected a 2D field")
    ny, nx = g.shape
    xs = (np.arange(nx) - nx // 2) / np.sqrt(nx)
    ys = (np.arange(ny) - ny // 2) / np.sqrt(ny)
    lines = ["x,y,re,im,abs"]
    for iy in range(ny):
        for ix in range(nx):
            v = g[iy, ix]
            lines.append(
                f"{xs[ix]:.17g},{ys[iy]:.17g},{v.real:.17g},{v.imag:.17g},{abs(v):.17g}"
            )
    return "\n".join(lines) + "\n"


def export_surface_csv(grid, path) -> None:
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(surface_csv_text(grid))
    except OSError as exc:
        raise OSError(f"cannot write surface CSV to {path}: {exc}") from exc
