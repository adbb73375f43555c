"""Inversion operators: the proximal map of the data-fidelity term.

Both geometries solve

    F(x~) = argmin_x  ||y - A x||^2 / (2 sigma_w^2) + ||x - x~||^2 / (2 sigma_lambda^2)

followed by clipping at zero for positivity.  With ``sigma_w == 0`` the
data term becomes a hard constraint and F is the projection onto
``{x : A x = y}`` (then clipped).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import DimensionError, check_image, check_positive
from .imagecore import MeasurementSet, SparseSample, SuperResolution, block_downsample, \
    replicate_upsample

__all__ = ["InversionProblem", "sr_inversion", "sparse_inversion", "invert"]


@dataclass(frozen=True)
class InversionProblem:
    measurements: MeasurementSet
    sigma_lambda: float

    def __post_init__(self):
        check_positive(self.sigma_lambda, "sigma_lambda")

    @property
    def target_shape(self) -> tuple[int, int]:
        return self.measurements.target_shape

    @property
    def sigma_w(self) -> float:
        return self.measurements.sigma_w


def sr_inversion(x_tilde, prob: InversionProblem) -> np.ndarray:
    """Block-average super-resolution inversion.

    The data term only sees each L x L block through its mean, so the
    minimiser shifts every block of ``x_tilde`` by a constant:

        delta = (y - mean_block(x~)) / (1 + L^2 sigma_w^2 / sigma_lambda^2)

    (the Sherman-Morrison solution for the rank-one block system).  At
    ``sigma_w == 0`` the shrink factor is 1 and the block means match ``y``.
    """
    meas = prob.measurements
    if not isinstance(meas.model, SuperResolution):
        raise TypeError("sr_inversion needs a SuperResolution measurement set")
    x_tilde = check_image(x_tilde, "x_tilde")
    if x_tilde.shape != meas.target_shape:
        raise DimensionError(f"x_tilde shape {x_tilde.shape} != target {meas.target_shape}")
    L = meas.model.factor
    residual = meas.y - block_downsample(x_tilde, L)
    if meas.sigma_w > 0:
        residual = residual / (1.0 + (L * L) * (meas.sigma_w / prob.sigma_lambda) ** 2)
    return np.maximum(x_tilde + replicate_upsample(residual, L), 0.0)


def sparse_inversion(x_tilde, prob: InversionProblem) -> np.ndarray:
    """Sparse-sampling inversion; only measured pixels change.

    Measured pixels become the precision-weighted blend of ``y`` and
    ``x_tilde`` (exactly ``y`` when ``sigma_w == 0``).
    """
    meas = prob.measurements
    if not isinstance(meas.model, SparseSample):
        raise TypeError("sparse_inversion needs a SparseSample measurement set")
    x_tilde = check_image(x_tilde, "x_tilde")
    mask = meas.model.mask
    if x_tilde.shape != mask.shape:
        raise DimensionError(f"x_tilde shape {x_tilde.shape} != mask {mask.shape}")
    out = x_tilde.copy().ravel()
    if meas.sigma_w == 0:
        out[mask.indices] = meas.y
    else:
        pw = 1.0 / meas.sigma_w ** 2
        pl = 1.0 / prob.sigma_lambda ** 2
        out[mask.indices] = (meas.y * pw + out[mask.indices] * pl) / (pw + pl)
    return np.maximum(out, 0.0).reshape(mask.shape)


def invert(x_tilde, prob: InversionProblem) -> np.ndarray:
    """Dispatch to the inversion operator matching the forward model."""
    if isinstance(prob.measurements.model, SuperResolution):
        return sr_inversion(x_tilde, prob)
    return sparse_inversion(x_tilde, prob)
