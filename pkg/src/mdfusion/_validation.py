"""Input validation helpers shared by the operators and estimators."""

from __future__ import annotations

import numbers

import numpy as np

# Guards width*height and L-fold upsampling against silly allocations.
MAX_PIXELS = 1 << 31


class DimensionError(ValueError):
    """Image dimensions are inconsistent with the requested operation."""


class DimensionOverflowError(DimensionError):
    """An operation would produce an image larger than MAX_PIXELS."""


def check_image(x, name: str = "image", allow_empty: bool = False) -> np.ndarray:
    """Return ``x`` as a finite 2-D float64 array.

    Images are (height, width) arrays in row-major order, nominal range
    [0, 255].  NaN or Inf anywhere is rejected.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D (height, width), got shape {arr.shape}")
    if not allow_empty and arr.size == 0:
        raise DimensionError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def check_same_shape(a: np.ndarray, b: np.ndarray, names=("a", "b")) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"{names[0]} shape {a.shape} != {names[1]} shape {b.shape}")


def check_factor(L, minimum: int = 1, name: str = "L") -> int:
    if isinstance(L, bool) or not isinstance(L, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {L!r}")
    if L < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {L}")
    return int(L)


def check_positive(value, name: str, allow_zero: bool = False) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite")
    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise ValueError(f"{name} must be {bound}, got {value}")
    return value


def check_odd_patch_size(n) -> int:
    n = check_factor(n, 1, "patch_size")
    if n % 2 == 0:
        raise ValueError(f"patch_size must be odd, got {n}")
    return n


def check_pixel_budget(height: int, width: int) -> None:
    if height * width > MAX_PIXELS:
        raise DimensionOverflowError(
            f"{width}x{height} exceeds the {MAX_PIXELS}-pixel limit")
