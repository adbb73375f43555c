"""Measurement containers and the linear operators behind ``y = A x``.

Images are plain 2-D float64 numpy arrays indexed ``[row, col]`` on a
[0, 255] intensity scale.  Two forward geometries are supported:

* super-resolution: ``A`` averages each L x L block (``block_downsample``),
  and its scaled adjoint copies a value back over the block
  (``replicate_upsample``), so ``<u, D v> == <U u / L**2, v>``;
* sparse sampling: ``A`` selects the pixels listed in a ``SamplingMask``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ._rng import SplitMix64
from ._validation import (
    DimensionError,
    check_factor,
    check_image,
    check_pixel_budget,
    check_positive,
)

__all__ = [
    "SamplingMask",
    "SuperResolution",
    "SparseSample",
    "MeasurementSet",
    "block_downsample",
    "replicate_upsample",
    "sample_sparse",
]


@dataclass(frozen=True)
class SamplingMask:
    """Strictly increasing flat (row-major) indices of the measured pixels."""

    width: int
    height: int
    indices: np.ndarray = field(repr=False)

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).ravel()
        if self.width < 1 or self.height < 1:
            raise DimensionError("mask dimensions must be positive")
        if idx.size and (idx[0] < 0 or idx[-1] >= self.width * self.height):
            raise IndexError("mask index out of range")
        if np.any(np.diff(idx) <= 0):
            raise ValueError("mask indices must be strictly increasing")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @property
    def n_measured(self) -> int:
        return int(self.indices.size)

    def to_bool(self) -> np.ndarray:
        out = np.zeros(self.height * self.width, dtype=bool)
        out[self.indices] = True
        return out.reshape(self.shape)

    def gather(self, x: np.ndarray) -> np.ndarray:
        """Apply the selection matrix: values of ``x`` at the measured pixels."""
        if x.shape != self.shape:
            raise DimensionError(f"image shape {x.shape} does not match mask {self.shape}")
        return x.ravel()[self.indices].copy()

    def to_json(self) -> dict:
        return {"width": self.width, "height": self.height,
                "indices": [int(i) for i in self.indices]}

    @classmethod
    def from_json(cls, obj: dict) -> "SamplingMask":
        return cls(int(obj["width"]), int(obj["height"]), np.asarray(obj["indices"], dtype=np.int64))


@dataclass(frozen=True)
class SuperResolution:
    factor: int

    def __post_init__(self):
        check_factor(self.factor, 2, "factor")


@dataclass(frozen=True)
class SparseSample:
    mask: SamplingMask


ForwardModel = Union[SuperResolution, SparseSample]


@dataclass(frozen=True)
class MeasurementSet:
    """Observed data together with the forward model that produced it.

    For ``SuperResolution`` ``y`` is the low-resolution image; for
    ``SparseSample`` it is the 1-D vector of measured values, ordered like
    ``mask.indices``.
    """

    y: np.ndarray = field(repr=False)
    model: ForwardModel
    sigma_w: float = 0.0

    def __post_init__(self):
        check_positive(self.sigma_w, "sigma_w", allow_zero=True)
        if isinstance(self.model, SuperResolution):
            y = check_image(self.y, "y")
        elif isinstance(self.model, SparseSample):
            y = np.asarray(self.y, dtype=np.float64).ravel()
            if y.size != self.model.mask.n_measured:
                raise DimensionError(
                    f"{y.size} values for a mask of {self.model.mask.n_measured} pixels")
            if not np.all(np.isfinite(y)):
                raise ValueError("y contains NaN or Inf")
        else:
            raise TypeError(f"unknown forward model {self.model!r}")
        object.__setattr__(self, "y", y)

    @property
    def target_shape(self) -> tuple[int, int]:
        if isinstance(self.model, SuperResolution):
            L = self.model.factor
            return (self.y.shape[0] * L, self.y.shape[1] * L)
        return self.model.mask.shape

    @property
    def n_measured(self) -> int:
        return int(self.y.size)


def block_downsample(x, L: int) -> np.ndarray:
    """Mean over each non-overlapping L x L block.

    The mean is pivoted on the block's first pixel, so a constant block
    returns its value bit-exactly and ``block_downsample(replicate_upsample(y))``
    is exactly ``y``.  Raises ``DimensionError`` when either side is not
    divisible by ``L``; cropping silently would bias every downstream RMSE.
    """
    x = check_image(x, "x")
    L = check_factor(L)
    h, w = x.shape
    if h % L or w % L:
        raise DimensionError(f"{w}x{h} image is not divisible by L={L}")
    blocks = x.reshape(h // L, L, w // L, L)
    pivot = blocks[:, :1, :, :1]
    return pivot[:, 0, :, 0] + (blocks - pivot).sum(axis=(1, 3)) / (L * L)


def replicate_upsample(y, L: int) -> np.ndarray:
    """Copy every pixel into an L x L block (pixel replication)."""
    y = check_image(y, "y")
    L = check_factor(L)
    check_pixel_budget(y.shape[0] * L, y.shape[1] * L)
    return np.repeat(np.repeat(y, L, axis=0), L, axis=1)


def sample_sparse(x, fraction: float, seed: int) -> tuple[MeasurementSet, SamplingMask]:
    """Measure ``round(fraction * N)`` pixels chosen uniformly without replacement.

    The draw uses SplitMix64 seeded with ``seed`` so the mask is identical
    on every platform and numpy release.
    """
    x = check_image(x, "x")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    n = x.size
    m = int(round(fraction * n))
    if m < 1:
        raise ValueError(f"fraction {fraction} selects no pixels of a {n}-pixel image")
    indices = SplitMix64(seed).sample_without_replacement(n, m)
    mask = SamplingMask(x.shape[1], x.shape[0], indices)
    return MeasurementSet(mask.gather(x), SparseSample(mask)), mask
