"""Denoisers used as the prior step of Plug-and-Play.

``lbnlm_denoise``
    Library-based non-local means: every pixel becomes a weighted mean of
    library centre pixels, weighted by patch similarity.
``internal_nlm_denoise``
    Classic NLM over a search window of the image itself.  With
    ``symmetrize=True`` the weight matrix is pushed towards doubly
    stochastic by Sinkhorn balancing; this is the "DSG-NLM-approx"
    comparison prior, not the published DSG-NLM.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._validation import check_image, check_positive
from .patchlib import PatchLibrary, pad_reflect101

__all__ = [
    "DenoiserConfig",
    "lbnlm_weights",
    "lbnlm_weight_matrix",
    "lbnlm_denoise",
    "internal_nlm_weight_matrix",
    "internal_nlm_denoise",
    "identity_denoiser",
]

DSG_NLM_LABEL = "DSG-NLM-approx"


@dataclass(frozen=True)
class DenoiserConfig:
    sigma_n: float
    variant: str = "library_nlm"
    patch_size: int = 7
    search_radius: int = 5
    symmetrize: bool = False
    sinkhorn_iters: int = 10

    def __post_init__(self):
        check_positive(self.sigma_n, "sigma_n")
        if self.variant not in ("library_nlm", "internal_nlm"):
            raise ValueError(f"unknown denoiser variant {self.variant!r}")
        if self.patch_size < 1 or self.patch_size % 2 == 0:
            raise ValueError(f"patch_size must be odd and positive, got {self.patch_size}")
        if self.search_radius < 1:
            raise ValueError(f"search_radius must be >= 1, got {self.search_radius}")
        if self.sinkhorn_iters < 0:
            raise ValueError("sinkhorn_iters must be >= 0")


def _inv_two_var(patch_size: int, sigma_n: float) -> float:
    return 1.0 / (2.0 * patch_size * patch_size * sigma_n * sigma_n)


def lbnlm_weights(patch, lib: PatchLibrary, sigma_n: float) -> np.ndarray:
    """Normalised weights of one image patch against every library patch."""
    sigma_n = check_positive(sigma_n, "sigma_n")
    patch = np.asarray(patch, dtype=np.float64).ravel()
    if patch.size != lib.patch_size ** 2:
        raise ValueError(f"patch has {patch.size} values, library expects {lib.patch_size ** 2}")
    d = np.sum((lib.patches - patch) ** 2, axis=1)
    w = np.exp(-(d - d.min()) * _inv_two_var(lib.patch_size, sigma_n))
    return w / w.sum()


def lbnlm_weight_matrix(v, lib: PatchLibrary, sigma_n: float) -> np.ndarray:
    """(N, N_l) weights for every pixel of ``v``, rows summing to one."""
    v = check_image(v, "v")
    sigma_n = check_positive(sigma_n, "sigma_n")
    padded = pad_reflect101(v, lib.patch_size // 2)
    return _kernels.lbnlm_weights_all(padded, v.shape[0], v.shape[1], lib.patches_t,
                                      _inv_two_var(lib.patch_size, sigma_n))


def lbnlm_denoise(v, lib: PatchLibrary, sigma_n: float) -> np.ndarray:
    """Replace each pixel with the similarity-weighted mean of library centres.

    Patches around border pixels are reflect-101 extended, exactly as in
    ``extract_patch``.  Sums are Neumaier-compensated, so the output does
    not depend on library order beyond ~1e-15 relative.
    """
    v = check_image(v, "v")
    sigma_n = check_positive(sigma_n, "sigma_n")
    padded = pad_reflect101(v, lib.patch_size // 2)
    out = _kernels.lbnlm_filter(padded, v.shape[0], v.shape[1], lib.patches_t,
                                np.ascontiguousarray(lib.centers),
                                _inv_two_var(lib.patch_size, sigma_n))
    return out.reshape(v.shape)


def _sinkhorn_balance(weights: np.ndarray, nbrs: np.ndarray, iters: int) -> np.ndarray:
    """Alternate column then row normalisation; always ends on a row pass."""
    n = weights.shape[0]
    flat_nbrs = nbrs.ravel()
    for _ in range(iters):
        col = np.bincount(flat_nbrs, weights=weights.ravel(), minlength=n)
        weights = weights / col[nbrs]
        weights = weights / weights.sum(axis=1, keepdims=True)
    return weights


def internal_nlm_weight_matrix(v, cfg: DenoiserConfig) -> tuple[np.ndarray, np.ndarray]:
    """Row-stochastic window weights and neighbour indices, both (N, K)."""
    v = check_image(v, "v")
    if cfg.variant != "internal_nlm":
        raise ValueError(f"config variant is {cfg.variant!r}, expected 'internal_nlm'")
    half = cfg.patch_size // 2
    padded = pad_reflect101(v, half)
    weights, nbrs = _kernels.window_weights(padded, v.shape[0], v.shape[1], cfg.patch_size,
                                            cfg.search_radius,
                                            _inv_two_var(cfg.patch_size, cfg.sigma_n))
    weights = weights / weights.sum(axis=1, keepdims=True)
    if cfg.symmetrize:
        weights = _sinkhorn_balance(weights, nbrs, cfg.sinkhorn_iters)
    return weights, nbrs


def internal_nlm_denoise(v, cfg: DenoiserConfig) -> np.ndarray:
    v = check_image(v, "v")
    weights, nbrs = internal_nlm_weight_matrix(v, cfg)
    return np.sum(weights * v.ravel()[nbrs], axis=1).reshape(v.shape)


def identity_denoiser(v, sigma_n: float) -> np.ndarray:
    """H(v) = v; turns Plug-and-Play into repeated projection."""
    return np.array(v, dtype=np.float64, copy=True)
