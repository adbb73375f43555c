"""Baseline reconstructions: bicubic upsampling and Shepard interpolation.

They serve as comparison methods and as the starting point of the
Plug-and-Play loop.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from ._validation import check_factor, check_image, check_pixel_budget
from .imagecore import MeasurementSet, SparseSample, SuperResolution

__all__ = ["cubic_kernel", "bicubic_interpolate", "shepard_interpolate", "baseline_reconstruct"]

CUBIC_A = -0.5
SHEPARD_POWER = 2.0
SHEPARD_NEIGHBOURS = 16


def cubic_kernel(t, a: float = CUBIC_A):
    """Keys cubic convolution kernel; a = -0.5 reproduces quadratics."""
    t = np.abs(np.asarray(t, dtype=np.float64))
    t2, t3 = t * t, t * t * t
    near = (a + 2.0) * t3 - (a + 3.0) * t2 + 1.0
    far = a * t3 - 5.0 * a * t2 + 8.0 * a * t - 4.0 * a
    return np.where(t <= 1.0, near, np.where(t < 2.0, far, 0.0))


def _axis_taps(n_in: int, L: int):
    """Source indices and weights of the 4 taps for every output sample.

    Output sample X sits at source coordinate (X + 0.5) / L - 0.5, which
    puts each low-res pixel at the centre of its L x L block.  Taps beyond
    the edge are clamped.
    """
    pos = (np.arange(n_in * L) + 0.5) / L - 0.5
    base = np.floor(pos).astype(np.int64)
    frac = pos - base
    offsets = np.arange(-1, 3)
    idx = np.clip(base[None, :] + offsets[:, None], 0, n_in - 1)
    weights = cubic_kernel(frac[None, :] - offsets[:, None])
    return idx, weights


def bicubic_interpolate(y, L: int) -> np.ndarray:
    """Upsample by ``L`` with separable bicubic convolution, clipped at 0."""
    y = check_image(y, "y")
    L = check_factor(L, 2)
    h, w = y.shape
    check_pixel_budget(h * L, w * L)
    ci, cw = _axis_taps(w, L)
    ri, rw = _axis_taps(h, L)
    # fixed 4-term sums keep the result independent of BLAS threading
    rows = sum(cw[k][None, :] * y[:, ci[k]] for k in range(4))
    out = sum(rw[k][:, None] * rows[ri[k], :] for k in range(4))
    return np.maximum(out, 0.0)


def shepard_interpolate(meas: MeasurementSet, k: int = SHEPARD_NEIGHBOURS,
                        power: float = SHEPARD_POWER) -> np.ndarray:
    """Inverse-distance-weighted fill from the k nearest measured pixels.

    Measured pixels keep their values exactly; every other pixel is a
    convex combination, so the result stays inside [min(y), max(y)].
    """
    if not isinstance(meas.model, SparseSample):
        raise TypeError("shepard_interpolate needs a SparseSample measurement set")
    mask = meas.model.mask
    if mask.n_measured == 0:
        raise ValueError("cannot interpolate from an empty mask")
    h, w = mask.shape
    out = np.empty(h * w)
    out[mask.indices] = meas.y
    measured = mask.to_bool().ravel()
    missing = np.flatnonzero(~measured)
    if missing.size:
        pts = np.column_stack(np.divmod(mask.indices, w)).astype(np.float64)
        query = np.column_stack(np.divmod(missing, w)).astype(np.float64)
        kk = min(k, mask.n_measured)
        dist, nn = cKDTree(pts).query(query, k=kk)
        if kk == 1:
            dist, nn = dist[:, None], nn[:, None]
        wts = dist ** -power
        out[missing] = np.sum(wts * meas.y[nn], axis=1) / np.sum(wts, axis=1)
    return out.reshape(h, w)


def baseline_reconstruct(meas: MeasurementSet) -> np.ndarray:
    """Cubic for super-resolution, Shepard for sparse sampling."""
    if isinstance(meas.model, SuperResolution):
        return bicubic_interpolate(meas.y, meas.model.factor)
    return shepard_interpolate(meas)
