"""Image and sampling-mask file formats.

``pgm8`` / ``pgm16``
    Binary PGM (P5); 16-bit samples are big-endian.  Values load onto the
    [0, 255] scale, so a 16-bit 65535 reads as 255.0.
``raw-f64``
    Little-endian float64, row-major, with a sidecar ``<path>.json``
    holding ``{"width": W, "height": H}``.  Lossless.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path

import numpy as np

from ._validation import MAX_PIXELS, check_image
from ._validation import DimensionOverflowError as _PixelBudgetError
from .imagecore import SamplingMask

FORMATS = ("pgm8", "pgm16", "raw-f64")


class ImageFormatError(ValueError):
    """Base class for unreadable image files."""


class MalformedHeaderError(ImageFormatError):
    pass


class TruncatedDataError(ImageFormatError):
    pass


class DimensionOverflowError(ImageFormatError, _PixelBudgetError):
    pass


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def guess_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".pgm":
        return "pgm8"
    if suffix in (".f64", ".raw"):
        return "raw-f64"
    raise ValueError(f"cannot infer image format from {path!s}; pass format explicitly")


def _check_dims(width: int, height: int) -> None:
    if width <= 0 or height <= 0:
        raise MalformedHeaderError(f"non-positive dimensions {width}x{height}")
    if width * height > MAX_PIXELS:
        raise DimensionOverflowError(f"{width}x{height} exceeds {MAX_PIXELS} pixels")


_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*([^\s#]+)")


def _read_pgm(data: bytes) -> np.ndarray:
    tokens = []
    pos = 0
    for _ in range(4):
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise MalformedHeaderError("incomplete PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    if tokens[0] != b"P5":
        raise MalformedHeaderError(f"not a binary PGM (magic {tokens[0]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise MalformedHeaderError(f"non-numeric PGM header field: {exc}") from None
    _check_dims(width, height)
    if not 0 < maxval < 65536:
        raise MalformedHeaderError(f"PGM maxval {maxval} out of range")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise MalformedHeaderError("missing whitespace after PGM maxval")
    pos += 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    nbytes = width * height * dtype.itemsize
    raster = data[pos:pos + nbytes]
    if len(raster) < nbytes:
        raise TruncatedDataError(f"expected {nbytes} pixel bytes, found {len(raster)}")
    pixels = np.frombuffer(raster, dtype=dtype).astype(np.float64).reshape(height, width)
    if maxval != 255:
        pixels *= 255.0 / maxval
    return pixels


def _read_raw(path: Path) -> np.ndarray:
    meta_path = sidecar_path(path)
    try:
        meta = json.loads(meta_path.read_text())
        width, height = int(meta["width"]), int(meta["height"])
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedHeaderError(f"bad raw-f64 header {meta_path}: {exc}") from None
    _check_dims(width, height)
    data = path.read_bytes()
    nbytes = width * height * 8
    if len(data) < nbytes:
        raise TruncatedDataError(f"expected {nbytes} bytes in {path}, found {len(data)}")
    return np.frombuffer(data[:nbytes], dtype="<f8").reshape(height, width).astype(np.float64)


def load_image(path, format: str | None = None) -> np.ndarray:
    """Read an image file onto the [0, 255] float scale."""
    path = Path(path)
    fmt = format or guess_format(path)
    if fmt in ("pgm8", "pgm16"):
        img = _read_pgm(path.read_bytes())
    elif fmt == "raw-f64":
        img = _read_raw(path)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if not np.all(np.isfinite(img)):
        raise ImageFormatError(f"{path} contains non-finite values")
    return img


def _write_atomic(path: Path, payload: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(payload)
    os.replace(tmp, path)


def save_image(img, path, format: str | None = None) -> None:
    """Write ``img``; PGM output is clipped to [0, 255] and rounded half-to-even."""
    arr = np.asarray(img, dtype=np.float64)
    if np.isnan(arr).any():
        raise ValueError("refusing to save an image containing NaN")
    arr = check_image(arr, "img")
    path = Path(path)
    fmt = format or guess_format(path)
    height, width = arr.shape
    if fmt == "pgm8":
        raster = np.rint(np.clip(arr, 0.0, 255.0)).astype(np.uint8).tobytes()
        _write_atomic(path, b"P5\n%d %d\n255\n" % (width, height) + raster)
    elif fmt == "pgm16":
        scaled = np.clip(arr, 0.0, 255.0) * (65535.0 / 255.0)
        raster = np.rint(scaled).astype(">u2").tobytes()
        _write_atomic(path, b"P5\n%d %d\n65535\n" % (width, height) + raster)
    elif fmt == "raw-f64":
        _write_atomic(path, arr.astype("<f8").tobytes())
        _write_atomic(sidecar_path(path),
                      json.dumps({"width": width, "height": height}).encode() + b"\n")
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def save_mask(mask: SamplingMask, path) -> None:
    _write_atomic(Path(path), json.dumps(mask.to_json()).encode() + b"\n")


def load_mask(path) -> SamplingMask:
    try:
        obj = json.loads(Path(path).read_text())
        return SamplingMask.from_json(obj)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise MalformedHeaderError(f"bad mask file {path}: {exc}") from None
