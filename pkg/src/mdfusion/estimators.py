"""scikit-learn style wrappers around the functional core.

The estimators follow the ``BaseEstimator`` conventions (constructor only
stores hyper-parameters, learned state ends in ``_``), so ``clone``,
``get_params`` and ``set_params`` work and nested parameters such as
``denoiser__patch_size`` can be swept.

``fit`` consumes high-resolution library images; ``predict`` consumes a
``MeasurementSet`` and returns the reconstructed image.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from .baselines import baseline_reconstruct, bicubic_interpolate, shepard_interpolate
from .denoise import DenoiserConfig, identity_denoiser, internal_nlm_denoise, lbnlm_denoise
from .imagecore import MeasurementSet, SparseSample, SuperResolution
from .metrics import rmse_percent
from .patchlib import (DEFAULT_MAX_PATCHES, DEFAULT_PATCH_SIZE, DEFAULT_STRIDE, PatchLibrary,
                       build_library)
from .pnp import PnPConfig, pnp_reconstruct

__all__ = [
    "LibraryNLM",
    "InternalNLM",
    "IdentityDenoiser",
    "BaselineReconstructor",
    "PnPReconstructor",
]


def _as_stack(X) -> tuple[np.ndarray, bool]:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 2:
        return arr[None], True
    if arr.ndim == 3:
        return arr, False
    raise ValueError(f"expected an image (H, W) or a stack (n, H, W), got shape {arr.shape}")


class _DenoiserMixin(TransformerMixin):
    """``transform`` denoises one image or a stack at ``self.sigma_n``."""

    def transform(self, X):
        stack, single = _as_stack(X)
        out = np.stack([self.denoise(img, self.sigma_n) for img in stack])
        return out[0] if single else out

    def __call__(self, v, sigma_n):
        return self.denoise(v, sigma_n)


class LibraryNLM(_DenoiserMixin, BaseEstimator):
    """Library-based non-local means; ``fit`` builds the patch library.

    Parameters
    ----------
    sigma_n : float
        Noise level used by ``transform``.  Inside Plug-and-Play the loop
        passes its own ``sqrt(beta) * sigma_lambda`` instead.
    patch_size, stride, max_patches, seed
        Library construction, see ``build_library``.
    library : PatchLibrary, optional
        Use a prebuilt library; ``fit`` then just adopts it.
    """

    def __init__(self, sigma_n=10.0, patch_size=DEFAULT_PATCH_SIZE, stride=DEFAULT_STRIDE,
                 max_patches=DEFAULT_MAX_PATCHES, seed=0, library=None):
        self.sigma_n = sigma_n
        self.patch_size = patch_size
        self.stride = stride
        self.max_patches = max_patches
        self.seed = seed
        self.library = library

    def fit(self, X=None, y=None):
        if self.library is not None:
            if not isinstance(self.library, PatchLibrary):
                raise TypeError("library must be a PatchLibrary")
            self.library_ = self.library
        else:
            if X is None:
                raise ValueError("LibraryNLM.fit needs library images or a prebuilt library")
            images = [X] if np.ndim(X) == 2 else list(X)
            self.library_ = build_library(images, self.patch_size, self.stride,
                                          self.max_patches, self.seed)
        return self

    def denoise(self, v, sigma_n):
        check_is_fitted(self, "library_")
        return lbnlm_denoise(v, self.library_, sigma_n)


class InternalNLM(_DenoiserMixin, BaseEstimator):
    """Image-internal NLM; ``symmetrize=True`` gives the DSG-NLM-approx prior."""

    def __init__(self, sigma_n=10.0, patch_size=DEFAULT_PATCH_SIZE, search_radius=5,
                 symmetrize=True, sinkhorn_iters=10):
        self.sigma_n = sigma_n
        self.patch_size = patch_size
        self.search_radius = search_radius
        self.symmetrize = symmetrize
        self.sinkhorn_iters = sinkhorn_iters

    def fit(self, X=None, y=None):
        self.fitted_ = True
        return self

    def denoise(self, v, sigma_n):
        cfg = DenoiserConfig(sigma_n, "internal_nlm", self.patch_size, self.search_radius,
                             self.symmetrize, self.sinkhorn_iters)
        return internal_nlm_denoise(v, cfg)


class IdentityDenoiser(_DenoiserMixin, BaseEstimator):
    def __init__(self, sigma_n=1.0):
        self.sigma_n = sigma_n

    def fit(self, X=None, y=None):
        self.fitted_ = True
        return self

    def denoise(self, v, sigma_n):
        return identity_denoiser(v, sigma_n)


class BaselineReconstructor(BaseEstimator):
    """Cubic or Shepard reconstruction; ``method='auto'`` picks by geometry."""

    def __init__(self, method="auto"):
        self.method = method

    def fit(self, X=None, y=None):
        return self

    def predict(self, meas: MeasurementSet) -> np.ndarray:
        if self.method == "auto":
            return baseline_reconstruct(meas)
        if self.method == "cubic":
            if not isinstance(meas.model, SuperResolution):
                raise ValueError("cubic baseline needs a super-resolution measurement set")
            return bicubic_interpolate(meas.y, meas.model.factor)
        if self.method == "shepard":
            if not isinstance(meas.model, SparseSample):
                raise ValueError("shepard baseline needs a sparse measurement set")
            return shepard_interpolate(meas)
        raise ValueError(f"unknown baseline method {self.method!r}")

    def score(self, meas: MeasurementSet, ground_truth) -> float:
        return -rmse_percent(self.predict(meas), ground_truth)


class PnPReconstructor(BaseEstimator):
    """Plug-and-Play ADMM with a pluggable denoiser estimator.

    ``fit(library_images)`` fits a clone of ``denoiser``;
    ``predict(measurements)`` runs the loop from the baseline
    reconstruction and stores the ``ReconstructionReport`` in ``report_``.
    ``score`` is the negative percent RMSE, so larger is better.
    """

    def __init__(self, denoiser=None, beta=0.36, sigma_lambda="auto", sigma_w=None,
                 max_iters=100, residual_tol=1e-4, record_history=True):
        self.denoiser = denoiser
        self.beta = beta
        self.sigma_lambda = sigma_lambda
        self.sigma_w = sigma_w
        self.max_iters = max_iters
        self.residual_tol = residual_tol
        self.record_history = record_history

    def _config(self) -> PnPConfig:
        return PnPConfig(self.beta, self.sigma_lambda, self.sigma_w, self.max_iters,
                         self.residual_tol, self.record_history)

    def fit(self, X=None, y=None):
        self._config()
        den = LibraryNLM() if self.denoiser is None else self.denoiser
        self.denoiser_ = clone(den).fit(X)
        return self

    def predict(self, meas: MeasurementSet, init=None, callback=None) -> np.ndarray:
        try:
            check_is_fitted(self, "denoiser_")
        except NotFittedError:
            raise NotFittedError("PnPReconstructor must be fitted with library images "
                                 "before predict") from None
        if init is None:
            init = baseline_reconstruct(meas)
        x_hat, self.report_ = pnp_reconstruct(meas, self.denoiser_.denoise, self._config(),
                                              init, callback=callback)
        return x_hat

    def score(self, meas: MeasurementSet, ground_truth) -> float:
        return -rmse_percent(self.predict(meas), ground_truth)
