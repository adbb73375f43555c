"""numba kernels for the patch-distance loops.

Every output pixel is reduced by exactly one thread in a fixed order, so
results are bit-identical for any thread count.  ``MDF_NUM_THREADS`` picks
the thread count; it has to be in the environment before numba is first
imported, which is why this module reads it at import time.
"""

from __future__ import annotations

import os

_requested = os.environ.get("MDF_NUM_THREADS")
if _requested:
    os.environ.setdefault("NUMBA_NUM_THREADS", _requested)
# the TBB layer shipped in some images is too old and warns on first use
os.environ.setdefault("NUMBA_THREADING_LAYER_PRIORITY", "omp workqueue tbb")

import numba  # noqa: E402
import numpy as np  # noqa: E402
from numba import njit, prange  # noqa: E402


def set_num_threads(n: int) -> None:
    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


def get_num_threads() -> int:
    return numba.get_num_threads()


if _requested:
    set_num_threads(int(_requested))


@njit(cache=True)
def _lbnlm_pixel_exponentials(padded, r, c, lib_t, n, inv_two_var, e):
    # lib_t is (n*n, N_l): the inner loop runs over library patches and vectorises
    n_lib = lib_t.shape[1]
    for k in range(n_lib):
        e[k] = 0.0
    idx = 0
    for i in range(n):
        for j in range(n):
            p = padded[r + i, c + j]
            row = lib_t[idx]
            for k in range(n_lib):
                diff = p - row[k]
                e[k] += diff * diff
            idx += 1
    dmin = np.inf
    for k in range(n_lib):
        if e[k] < dmin:
            dmin = e[k]
    # subtracting the smallest distance keeps the largest term at exp(0) = 1
    for k in range(n_lib):
        e[k] = np.exp(-(e[k] - dmin) * inv_two_var)


@njit(cache=True, inline="always")
def _neumaier_add(total, comp, x):
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


@njit(parallel=True, cache=True)
def lbnlm_filter(padded, height, width, lib_t, centers, inv_two_var):
    n = int(np.sqrt(lib_t.shape[0]) + 0.5)
    n_lib = lib_t.shape[1]
    out = np.empty(height * width)
    for s in prange(height * width):
        r = s // width
        c = s - r * width
        e = np.empty(n_lib)
        _lbnlm_pixel_exponentials(padded, r, c, lib_t, n, inv_two_var, e)
        den = 0.0
        den_c = 0.0
        num = 0.0
        num_c = 0.0
        for k in range(n_lib):
            den, den_c = _neumaier_add(den, den_c, e[k])
            num, num_c = _neumaier_add(num, num_c, e[k] * centers[k])
        out[s] = (num + num_c) / (den + den_c)
    return out


@njit(parallel=True, cache=True)
def lbnlm_weights_all(padded, height, width, lib_t, inv_two_var):
    n = int(np.sqrt(lib_t.shape[0]) + 0.5)
    n_lib = lib_t.shape[1]
    out = np.empty((height * width, n_lib))
    for s in prange(height * width):
        r = s // width
        c = s - r * width
        e = np.empty(n_lib)
        _lbnlm_pixel_exponentials(padded, r, c, lib_t, n, inv_two_var, e)
        den = 0.0
        den_c = 0.0
        for k in range(n_lib):
            den, den_c = _neumaier_add(den, den_c, e[k])
        den = den + den_c
        for k in range(n_lib):
            out[s, k] = e[k] / den
    return out


@njit(parallel=True, cache=True)
def window_weights(padded, height, width, n, radius, inv_two_var):
    """Unnormalised NLM kernel between each pixel and its search window.

    Returns ``(weights, neighbours)`` of shape (N, (2R+1)**2); window slots
    falling outside the image get weight 0 and point at the pixel itself.
    """
    side = 2 * radius + 1
    k_max = side * side
    weights = np.zeros((height * width, k_max))
    nbrs = np.empty((height * width, k_max), dtype=np.int64)
    for s in prange(height * width):
        r = s // width
        c = s - r * width
        k = 0
        for dr in range(-radius, radius + 1):
            for dc in range(-radius, radius + 1):
                rr = r + dr
                cc = c + dc
                if rr < 0 or rr >= height or cc < 0 or cc >= width:
                    nbrs[s, k] = s
                else:
                    acc = 0.0
                    for i in range(n):
                        for j in range(n):
                            diff = padded[r + i, c + j] - padded[rr + i, cc + j]
                            acc += diff * diff
                    weights[s, k] = np.exp(-acc * inv_two_var)
                    nbrs[s, k] = rr * width + cc
                k += 1
    return weights, nbrs
