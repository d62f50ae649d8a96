"""The standard C-infinity glue used by smooth steps and dyadic cutoffs."""

from __future__ import annotations

import numpy as np

__all__ = ["smooth_glue", "smooth_step"]


def smooth_glue(u):
    """exp(-1/u) for u > 0, identically 0 for u <= 0."""
    arr = np.asarray(u, dtype=float)
    out = np.zeros_like(arr)
    pos = arr > 0
    with np.errstate(over="ignore", divide="ignore"):
        out[pos] = np.exp(-1.0 / arr[pos])
    return out if arr.ndim else float(out)


def smooth_step(u):
    """C-infinity monotone step: 0 for u <= 0, 1 for u >= 1, glued between."""
    arr = np.asarray(u, dtype=float)
    g1 = smooth_glue(arr)
    g2 = smooth_glue(1.0 - arr)
    out = np.where(arr <= 0, 0.0, np.where(arr >= 1, 1.0, g1 / np.where(g1 + g2 > 0, g1 + g2, 1.0)))
    return out if arr.ndim else float(out)
