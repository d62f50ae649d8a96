"""Modular and Luxemburg norm of the variable-exponent space on grid functions.

The modular of f at scale lambda is the Riemann sum of (|f|/lambda)^p(x) over
the grid box (functions are zero outside).  The norm is the infimum of the
lambdas whose modular does not exceed 1, located by bracketing and bisection:
the modular is monotone in lambda but its derivative can be stiff when p_plus
is large, so no Newton steps are attempted.
"""

from __future__ import annotations

import math

import numpy as np

from .exponents import ExponentField
from .grid import GridFunction, norm_lp

__all__ = ["modular", "luxemburg_norm"]

_MAX_EXPAND = 200
_MAX_BISECT = 200


def _modular_values(absf: np.ndarray, pvals: np.ndarray, lam: float, cell: float) -> float:
    with np.errstate(over="ignore"):
        total = float(np.sum((absf / lam) ** pvals) * cell)
    return math.inf if not math.isfinite(total) else total


def modular(f: GridFunction, p: ExponentField, lam: float) -> float:
    """Riemann sum of (|f|/lam)^p(x); returns inf on overflow (modular > 1)."""
    if not lam > 0:
        raise ValueError(f"scale must be positive, got {lam}")
    pvals = p.on_grid(f.spec)
    return _modular_values(np.abs(f.values), pvals, lam, f.spec.cell_volume)


def luxemburg_norm(f: GridFunction, p: ExponentField, rel_tol: float = 1e-12) -> float:
    """inf { lam > 0 : modular(f, p, lam) <= 1 } by geometric bisection.

    Returns lam with modular(f, p, lam) <= 1 <= modular(f, p, lam (1 - tol)).
    The initial bracket comes from the constant-exponent norms at p_minus and
    p_plus scaled by the box measure, then expands geometrically if needed.
    """
    if not 1e-15 < rel_tol < 1e-3:
        raise ValueError(f"rel_tol must lie in (1e-15, 1e-3), got {rel_tol}")
    absf = np.abs(f.values)
    if not np.any(absf > 0):
        return 0.0
    pvals = p.on_grid(f.spec)
    cell = f.spec.cell_volume

    def mod(lam: float) -> float:
        return _modular_values(absf, pvals, lam, cell)

    vol = max(1.0, f.spec.L**f.spec.n)
    # sup|f| * max(1, |box|) always has modular <= 1, so the bracket exists
    # even when the constant-exponent seed norms overflow for huge p_plus
    cap = float(np.max(absf)) * vol
    with np.errstate(over="ignore"):
        seeds = [norm_lp(f, p.p_minus)]
        if p.p_plus != p.p_minus:
            seeds.append(norm_lp(f, p.p_plus))
    seeds = [s for s in seeds if math.isfinite(s) and s > 0]
    hi = min(max(seeds) * vol, cap) if seeds else cap
    lo = (min(seeds) if seeds else cap) / vol

    for _ in range(_MAX_EXPAND):
        if mod(hi) <= 1.0:
            break
        hi *= 2.0
    else:
        raise RuntimeError("bracket expansion failed: modular stays above 1")
    for _ in range(_MAX_EXPAND):
        if mod(lo) > 1.0:
            break
        lo *= 0.5
        if lo < 1e-300:
            # modular <= 1 down to the smallest representable scale
            return 0.0

    # invariant: mod(lo) > 1 >= mod(hi); bisect in log space
    for _ in range(_MAX_BISECT):
        if hi / lo <= 1.0 + rel_tol:
            break
        mid = math.sqrt(lo * hi)
        if mod(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi
