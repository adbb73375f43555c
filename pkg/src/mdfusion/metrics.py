"""Reconstruction error and acquisition-speedup bookkeeping."""

from __future__ import annotations

import numpy as np

from ._validation import check_image, check_same_shape

__all__ = ["rmse_percent", "acquisition_stats"]

DYNAMIC_RANGE = 255.0


def rmse_percent(a, b) -> float:
    """Root-mean-square difference as a percentage of the 8-bit range."""
    a = check_image(a, "a")
    b = check_image(b, "b")
    check_same_shape(a, b)
    return float(100.0 * np.linalg.norm((a - b).ravel()) / (np.sqrt(a.size) * DYNAMIC_RANGE))


def acquisition_stats(n_recon: int, m_low: int, m_high: int) -> tuple[float, float]:
    """Return ``(rho, speedup)``.

    ``rho`` is high-resolution pixels acquired per low-resolution pixel
    acquired; ``speedup`` is reconstructed pixels per pixel measured.
    """
    if n_recon <= 0 or m_low <= 0:
        raise ValueError("n_recon and m_low must be positive")
    if m_high < 0:
        raise ValueError("m_high must be nonnegative")
    if m_low + m_high > n_recon:
        raise ValueError(f"{m_low} + {m_high} measured pixels exceed {n_recon} reconstructed")
    return m_high / m_low, n_recon / (m_low + m_high)
