"""High-resolution patch libraries and reflect-101 patch extraction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._rng import SplitMix64
from ._validation import DimensionError, check_image, check_odd_patch_size

__all__ = [
    "PatchLibrary",
    "reflect101_index",
    "pad_reflect101",
    "extract_patch",
    "build_library",
    "save_library",
    "load_library",
]

DEFAULT_PATCH_SIZE = 7
DEFAULT_STRIDE = 2
DEFAULT_MAX_PATCHES = 20_000


def reflect101_index(i, n: int):
    """Map (possibly out-of-range) coordinates onto [0, n) by reflect-101.

    ``-1 -> 1``, ``n -> n - 2``; the edge sample is not repeated.  Works for
    offsets of any size by folding with period ``2 (n - 1)``.
    """
    i = np.asarray(i, dtype=np.int64)
    if n == 1:
        return np.zeros_like(i)
    period = 2 * (n - 1)
    i = np.mod(i, period)
    return np.where(i < n, i, period - i)


def pad_reflect101(img: np.ndarray, pad: int) -> np.ndarray:
    h, w = img.shape
    rows = reflect101_index(np.arange(-pad, h + pad), h)
    cols = reflect101_index(np.arange(-pad, w + pad), w)
    return img[np.ix_(rows, cols)]


def extract_patch(img, center, patch_size: int) -> np.ndarray:
    """Row-major ``patch_size**2`` vector around ``center``.

    ``center`` is either a flat row-major index or a ``(row, col)`` pair.
    Coordinates falling off the image are reflected (reflect-101).
    """
    img = check_image(img, "img")
    n = check_odd_patch_size(patch_size)
    h, w = img.shape
    if np.ndim(center) == 0:
        if not 0 <= center < img.size:
            raise IndexError(f"center {center} outside a {w}x{h} image")
        r, c = divmod(int(center), w)
    else:
        r, c = (int(v) for v in center)
        if not (0 <= r < h and 0 <= c < w):
            raise IndexError(f"center {(r, c)} outside a {w}x{h} image")
    half = n // 2
    rows = reflect101_index(np.arange(r - half, r + half + 1), h)
    cols = reflect101_index(np.arange(c - half, c + half + 1), w)
    return img[np.ix_(rows, cols)].ravel()


@dataclass(frozen=True)
class PatchLibrary:
    """Immutable set of N_l flattened patches plus their centre pixels."""

    patch_size: int
    patches: np.ndarray = field(repr=False)
    source_meta: tuple[str, ...] = ()

    def __post_init__(self):
        n = check_odd_patch_size(self.patch_size)
        p = np.array(self.patches, dtype=np.float64, order="C")
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] != n * n:
            raise ValueError(f"patches must have shape (N_l >= 1, {n * n}), got {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("library patches contain NaN or Inf")
        p.setflags(write=False)
        object.__setattr__(self, "patches", p)
        object.__setattr__(self, "source_meta", tuple(str(s) for s in self.source_meta))

    @property
    def n_patches(self) -> int:
        return self.patches.shape[0]

    @property
    def patches_t(self) -> np.ndarray:
        """Contiguous (patch_size**2, N_l) transpose used by the filter kernels."""
        try:
            return self._patches_t
        except AttributeError:
            t = np.ascontiguousarray(self.patches.T)
            t.setflags(write=False)
            object.__setattr__(self, "_patches_t", t)
            return t

    @property
    def centers(self) -> np.ndarray:
        return self.patches[:, (self.patch_size * self.patch_size) // 2]

    def __len__(self) -> int:
        return self.n_patches


def _interior_grid(length: int, patch_size: int, stride: int) -> np.ndarray:
    half = patch_size // 2
    return np.arange(half, length - half, stride)


def build_library(images, patch_size: int = DEFAULT_PATCH_SIZE, stride: int = DEFAULT_STRIDE,
                  max_patches: int | None = DEFAULT_MAX_PATCHES, seed: int = 0,
                  names=None) -> PatchLibrary:
    """Collect interior patches on a stride grid from every library image.

    Patch centres start at ``(patch_size - 1) / 2`` so no reflection is
    needed.  When more than ``max_patches`` are found a SplitMix64-seeded
    uniform subset of exactly ``max_patches`` is kept (original order).
    """
    n = check_odd_patch_size(patch_size)
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if max_patches is not None and max_patches < 1:
        raise ValueError(f"max_patches must be >= 1, got {max_patches}")
    if isinstance(images, np.ndarray) and images.ndim == 2:
        images = [images]
    images = [check_image(im, f"images[{k}]") for k, im in enumerate(images)]
    if not images:
        raise ValueError("at least one library image is required")
    if names is None:
        names = [f"image{k}" for k in range(len(images))]

    blocks, meta = [], []
    for name, img in zip(names, images):
        h, w = img.shape
        if h < n or w < n:
            raise DimensionError(f"library image {name} ({w}x{h}) smaller than patch size {n}")
        windows = np.lib.stride_tricks.sliding_window_view(img, (n, n))
        rows = _interior_grid(h, n, stride) - n // 2
        cols = _interior_grid(w, n, stride) - n // 2
        blocks.append(windows[np.ix_(rows, cols)].reshape(-1, n * n))
        meta.append(f"{name}:{w}x{h}:stride={stride}:count={rows.size * cols.size}")
    patches = np.concatenate(blocks, axis=0)

    if max_patches is not None and patches.shape[0] > max_patches:
        keep = SplitMix64(seed).sample_without_replacement(patches.shape[0], max_patches)
        patches = patches[keep]
        meta.append(f"subsample:{max_patches}:seed={seed}")
    return PatchLibrary(n, patches, tuple(meta))


def save_library(lib: PatchLibrary, path) -> None:
    """Raw little-endian float64 patch blob plus ``<path>.json`` header."""
    path = Path(path)
    path.write_bytes(lib.patches.astype("<f8").tobytes())
    header = {"patch_size": lib.patch_size, "n_patches": lib.n_patches,
              "provenance": list(lib.source_meta)}
    path.with_name(path.name + ".json").write_text(json.dumps(header, indent=2) + "\n")


def load_library(path) -> PatchLibrary:
    path = Path(path)
    header = json.loads(path.with_name(path.name + ".json").read_text())
    n, count = int(header["patch_size"]), int(header["n_patches"])
    data = path.read_bytes()
    expected = n * n * count * 8
    if len(data) != expected:
        raise ValueError(f"library blob {path} holds {len(data)} bytes, header implies {expected}")
    patches = np.frombuffer(data, dtype="<f8").reshape(count, n * n)
    return PatchLibrary(n, patches, tuple(header.get("provenance", ())))
