"""Deterministic synthetic microscopy-like scenes and experiment setups.

``gen_lattice_scene`` stands in for atomic-resolution images (Gaussian
spots on a jittered hexagonal lattice); ``gen_texture_scene`` gives a
smooth texture crossed by dark cracks.  All randomness comes from
SplitMix64 so a (config, seed) pair always regenerates the same pixels.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._rng import SplitMix64
from ._validation import DimensionError, check_image
from .imagecore import MeasurementSet, SamplingMask, SparseSample, SuperResolution, \
    block_downsample, sample_sparse

__all__ = [
    "Region",
    "SparseMode",
    "Experiment",
    "gen_lattice_scene",
    "gen_texture_scene",
    "gen_experiment",
]


def gen_lattice_scene(width: int, height: int, spot_spacing: float = 10.0,
                      spot_sigma: float = 2.0, amplitude: float = 150.0,
                      jitter: float = 0.0, background: float = 40.0,
                      seed: int = 0) -> np.ndarray:
    """Gaussian spots on a hexagonal lattice centred on the image centre."""
    if width < 1 or height < 1:
        raise DimensionError(f"scene dimensions must be positive, got {width}x{height}")
    if spot_spacing <= 0 or spot_sigma <= 0:
        raise ValueError("spot_spacing and spot_sigma must be positive")
    if spot_spacing <= 2 * spot_sigma:
        warnings.warn("spot_spacing <= 2*spot_sigma: neighbouring spots will merge",
                      stacklevel=2)
    img = np.full((height, width), float(background))
    if amplitude == 0:
        return np.clip(img, 0.0, 255.0)

    rng = SplitMix64(seed)
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    row_step = spot_spacing * math.sqrt(3.0) / 2.0
    reach = int(math.ceil(5.0 * spot_sigma + jitter))
    n_rows = int(math.ceil((height / 2.0 + reach) / row_step)) + 1
    n_cols = int(math.ceil((width / 2.0 + reach) / spot_spacing)) + 1
    inv = 1.0 / (2.0 * spot_sigma * spot_sigma)
    for j in range(-n_rows, n_rows + 1):
        for i in range(-n_cols, n_cols + 1):
            px = cx + (i + 0.5 * (j % 2)) * spot_spacing
            py = cy + j * row_step
            if jitter:
                px += jitter * (2.0 * rng.uniform() - 1.0)
                py += jitter * (2.0 * rng.uniform() - 1.0)
            r0, r1 = max(0, int(py) - reach), min(height, int(py) + reach + 2)
            c0, c1 = max(0, int(px) - reach), min(width, int(px) + reach + 2)
            if r0 >= r1 or c0 >= c1:
                continue
            dy = (np.arange(r0, r1) - py)[:, None]
            dx = (np.arange(c0, c1) - px)[None, :]
            img[r0:r1, c0:c1] += amplitude * np.exp(-(dx * dx + dy * dy) * inv)
    return np.clip(img, 0.0, 255.0)


def gen_texture_scene(width: int, height: int, n_waves: int = 24, n_cracks: int = 3,
                      contrast: float = 60.0, background: float = 120.0,
                      seed: int = 0) -> np.ndarray:
    """Band-limited random texture with a few dark straight cracks."""
    if width < 1 or height < 1:
        raise DimensionError(f"scene dimensions must be positive, got {width}x{height}")
    rng = SplitMix64(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    tex = np.zeros((height, width))
    for _ in range(n_waves):
        theta = 2 * math.pi * rng.uniform()
        freq = 0.05 + 0.25 * rng.uniform()
        phase = 2 * math.pi * rng.uniform()
        tex += np.cos(freq * (xx * math.cos(theta) + yy * math.sin(theta)) + phase)
    img = background + contrast * tex / math.sqrt(n_waves / 2.0)
    for _ in range(n_cracks):
        theta = math.pi * rng.uniform()
        x0, y0 = width * rng.uniform(), height * rng.uniform()
        dist = np.abs((xx - x0) * math.sin(theta) - (yy - y0) * math.cos(theta))
        img -= 0.8 * background * np.exp(-dist ** 2 / 2.0)
    return np.clip(img, 0.0, 255.0)


@dataclass(frozen=True)
class Region:
    x: int
    y: int
    width: int
    height: int

    def contains(self, shape) -> bool:
        h, w = shape
        return (self.x >= 0 and self.y >= 0 and self.width > 0 and self.height > 0
                and self.x + self.width <= w and self.y + self.height <= h)

    def crop(self, img: np.ndarray) -> np.ndarray:
        return img[self.y:self.y + self.height, self.x:self.x + self.width].copy()

    @property
    def n_pixels(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class SparseMode:
    fraction: float
    seed: int = 0


@dataclass(frozen=True)
class Experiment:
    measurements: MeasurementSet
    library_image: np.ndarray
    ground_truth: np.ndarray
    m_low: int
    m_high: int

    @property
    def n_recon(self) -> int:
        return int(self.ground_truth.size)

    @property
    def mask(self) -> SamplingMask | None:
        model = self.measurements.model
        return model.mask if isinstance(model, SparseSample) else None


def _gaussian_noise(rng: SplitMix64, size: int) -> np.ndarray:
    # Box-Muller on the SplitMix64 stream
    u1 = 1.0 - rng.uniforms(size)
    u2 = rng.uniforms(size)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * math.pi * u2)


def gen_experiment(scene, mode, library_region: Region, sigma_w: float = 0.0,
                   noise_seed: int = 0) -> Experiment:
    """Split one scene into full-field measurements plus a high-res library crop.

    ``mode`` is ``SuperResolution(L)`` or ``SparseMode(fraction, seed)``.
    The library crop may overlap the evaluation field, as it would when both
    come from one specimen.
    """
    scene = check_image(scene, "scene")
    if not library_region.contains(scene.shape):
        raise DimensionError(f"library region {library_region} outside scene {scene.shape}")
    if isinstance(mode, SuperResolution):
        y = block_downsample(scene, mode.factor)
        model = mode
    elif isinstance(mode, SparseMode):
        meas, _ = sample_sparse(scene, mode.fraction, mode.seed)
        y, model = meas.y, meas.model
    else:
        raise TypeError(f"unknown acquisition mode {mode!r}")
    if sigma_w > 0:
        y = y + sigma_w * _gaussian_noise(SplitMix64(noise_seed), y.size).reshape(y.shape)
    meas = MeasurementSet(y, model, sigma_w)
    return Experiment(meas, library_region.crop(scene), scene.copy(),
                      m_low=meas.n_measured, m_high=library_region.n_pixels)
