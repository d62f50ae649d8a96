"""Dilation-multiplier operators and their dyadic decomposition checks.

The dilation operator at scale t multiplies the transform by sigma-hat(t xi),
equivalently averages f over the t-dilated measure.  The maximal operator
takes the pointwise supremum over a geometric grid of dilations.  Smooth
radial cutoffs split the multiplier into dyadic pieces localized near
|t xi| ~ 2^j; the two quantitative checks fit how the pieces' L^2 norms decay
in j and how far each piece is dominated by the Hardy-Littlewood maximal
function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .glue import smooth_step
from .grid import GridFunction, GridSpec, forward_ft, inverse_ft, norm_lp, sample_at
from .measures import AtomicMeasure, MeasureSpec

__all__ = [
    "TimeGrid",
    "cutoff_low",
    "cutoff_band",
    "apply_multiplier",
    "direct_average",
    "maximal_multiplier",
    "hl_maximal",
    "dyadic_radii",
    "DyadicL2Result",
    "dyadic_l2_ratios",
    "DominationResult",
    "domination_ratios",
]


@dataclass(frozen=True)
class TimeGrid:
    """Geometric dilation grid t_i = t_min 2^(i/q) covering [t_min, t_max]."""

    t_min: float
    t_max: float
    per_octave: int = 8

    def __post_init__(self):
        if not 0 < self.t_min < self.t_max:
            raise ValueError("need 0 < t_min < t_max")
        if self.per_octave < 4:
            raise ValueError("need at least 4 points per octave")

    def points(self) -> np.ndarray:
        count = int(math.floor(self.per_octave * math.log2(self.t_max / self.t_min))) + 1
        pts = self.t_min * 2.0 ** (np.arange(count) / self.per_octave)
        if pts[-1] < self.t_max * (1 - 1e-12):
            pts = np.append(pts, self.t_max)
        return np.minimum(pts, self.t_max)


def _lowpass_profile(s: np.ndarray) -> np.ndarray:
    # 1 on [0, 1], 0 on [2, inf), C-infinity glue between
    return 1.0 - smooth_step(np.asarray(s, dtype=float) - 1.0)


def cutoff_low(xi) -> np.ndarray:
    """Radial low-pass cutoff: 1 for |xi| <= 1, 0 for |xi| >= 2, smooth glue."""
    arr = np.asarray(xi, dtype=float)
    s = np.abs(arr) if arr.ndim <= 1 else np.sqrt(np.sum(arr * arr, axis=-1))
    return _lowpass_profile(s)


def _band_profile(s: np.ndarray, j: int) -> np.ndarray:
    return _lowpass_profile(s / 2.0**j) - _lowpass_profile(s / 2.0 ** (j - 1))


def cutoff_band(xi, j: int) -> np.ndarray:
    """Dyadic annulus cutoff, supported on 2^(j-1) <= |xi| <= 2^(j+1).

    Defined as the difference of rescaled low-pass cutoffs, so the sum of the
    low-pass piece and the bands up to J telescopes exactly to the low-pass
    cutoff at scale 2^-J."""
    if j < 1:
        raise ValueError("band index must be >= 1 (j = 0 is the low-pass piece)")
    arr = np.asarray(xi, dtype=float)
    s = np.abs(arr) if arr.ndim <= 1 else np.sqrt(np.sum(arr * arr, axis=-1))
    return _band_profile(s, j)


def _freq_rho(fspec: GridSpec) -> np.ndarray:
    axes = np.meshgrid(*([fspec.axis()] * fspec.n), indexing="ij")
    return np.sqrt(sum(a * a for a in axes))


def _multiplier_values(
    spec: MeasureSpec, t: float, fspec: GridSpec, rho: np.ndarray, piece: int | None
) -> np.ndarray:
    if spec.is_radial:
        m = spec.radial_profile((t * rho).ravel()).reshape(rho.shape).astype(complex)
    else:
        pts = fspec.points() * t
        m = np.asarray(spec.ft(pts)).reshape(rho.shape)
    if piece is not None:
        s = t * rho
        window = _lowpass_profile(s) if piece == 0 else _band_profile(s, piece)
        m = m * window
    return m


def _check_dilation(spec: MeasureSpec, t: float, L: float):
    if t * spec.support_radius > L / 4 + 1e-12:
        raise ValueError(
            f"dilation t = {t:g} pushes the support radius {spec.support_radius:g} "
            f"past L/4 = {L / 4:g}; the convolution would wrap (aliasing risk)"
        )


def apply_multiplier(
    f: GridFunction, spec: MeasureSpec, t: float, piece: int | None = None
) -> GridFunction:
    """Average of f over the t-dilated measure, computed on the transform side.

    With ``piece`` given, the multiplier is first localized by the dyadic
    cutoff at |t xi| ~ 2^piece (piece 0 is the low-pass cutoff), matching the
    decomposition whose pieces the maximal estimates control.
    """
    if t <= 0:
        raise ValueError("dilation must be positive")
    _check_dilation(spec, t, f.spec.L)
    F = forward_ft(f)
    rho = _freq_rho(F.spec)
    m = _multiplier_values(spec, t, F.spec, rho, piece)
    return inverse_ft(GridFunction(F.spec, F.values * m))


def direct_average(f: GridFunction, atoms: AtomicMeasure, t: float, x) -> np.ndarray | complex:
    """Atomic-measure average sum_i w_i f(x - t y_i) by grid interpolation.

    The independent slow route cross-validating the transform-side operator;
    points outside the box wrap periodically.
    """
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    scalar = np.asarray(x).ndim == 1
    out = np.zeros(pts.shape[0], dtype=complex)
    block = max(1, 2_000_000 // max(1, atoms.points.shape[0]))
    for lo in range(0, pts.shape[0], block):
        chunk = pts[lo : lo + block]
        query = chunk[:, None, :] - t * atoms.points[None, :, :]
        vals = sample_at(f, query.reshape(-1, f.spec.n)).reshape(chunk.shape[0], -1)
        out[lo : lo + block] = vals @ atoms.weights
    return out[0] if scalar else out


def maximal_multiplier(
    f: GridFunction, spec: MeasureSpec, tg: TimeGrid, piece: int | None = None
) -> GridFunction:
    """Pointwise maximum of |dilation average| over the dilation grid."""
    ts = tg.points()
    for t in ts:
        _check_dilation(spec, float(t), f.spec.L)
    F = forward_ft(f)
    rho = _freq_rho(F.spec)
    Fv = np.fft.ifftshift(F.values)
    vol = f.spec.cell_volume
    out = np.zeros(f.values.shape)
    for t in ts:
        m = np.fft.ifftshift(_multiplier_values(spec, float(t), F.spec, rho, piece))
        vals = np.fft.fftshift(np.fft.ifftn(Fv * m)) / vol
        np.maximum(out, np.abs(vals), out=out)
    return GridFunction(f.spec, out)


def dyadic_radii(spec: GridSpec) -> np.ndarray:
    """Dyadic radii from the grid spacing up to L/4."""
    k = int(math.floor(math.log2((spec.L / 4) / spec.dx)))
    return spec.dx * 2.0 ** np.arange(k + 1)


def hl_maximal(f: GridFunction, radii) -> GridFunction:
    """Hardy-Littlewood maximal function over centered discrete balls.

    For each radius the average of |f| over the grid points within Euclidean
    distance r (sum / point count, one periodic convolution each); the
    pointwise maximum over the radii list and the degenerate center-only
    ball, so Mf >= |f| holds at grid resolution.
    """
    spec = f.spec
    radii = np.asarray(radii, dtype=float)
    if np.any(radii < spec.dx) or np.any(radii > spec.L / 4 + 1e-12):
        raise ValueError("radii must lie within [dx, L/4]")
    absf = np.abs(f.values)
    out = absf.copy()  # the vanishing-radius ball: just the center
    Fa = np.fft.fftn(absf)
    offsets = np.meshgrid(*([np.fft.fftfreq(spec.N) * spec.L] * spec.n), indexing="ij")
    dist2 = sum(o * o for o in offsets)
    for r in radii:
        mask = dist2 <= r * r + 1e-12
        count = int(np.sum(mask))
        if count == 0:
            continue
        kernel = np.fft.fftn(mask.astype(float) / count)
        avg = np.real(np.fft.ifftn(Fa * kernel))
        np.maximum(out, avg, out=out)
    return GridFunction(spec, out)


@dataclass(frozen=True)
class DyadicL2Result:
    js: tuple
    ratios: tuple  # ||piece-maximal f||_2 / ||f||_2 per band
    slope: float  # least-squares slope of log2(ratio) against j


def _validate_bands(f: GridFunction, js) -> list[int]:
    js = [int(j) for j in js]
    nyquist = f.spec.N / (2 * f.spec.L)
    for j in js:
        if j < 1:
            raise ValueError("band indices must be >= 1")
        if 2.0 ** (j + 1) > nyquist * (1 + 1e-12):
            raise ValueError(
                f"band j = {j} needs frequencies up to 2^{j + 1}, beyond the "
                f"per-axis limit {nyquist:g}"
            )
    return js


def dyadic_l2_ratios(
    f: GridFunction, spec: MeasureSpec, js, tg: TimeGrid
) -> DyadicL2Result:
    """L^2 ratios of the band-localized maximal pieces, with fitted log2 slope.

    A decay bound (1+|xi|)^-alpha on the dilation-averaged multiplier makes
    the pieces contract like 2^((1/2 - alpha) j); the fitted slope is the
    numerical counterpart.
    """
    js = _validate_bands(f, js)
    base = norm_lp(f, 2)
    ratios = []
    for j in js:
        mj = maximal_multiplier(f, spec, tg, piece=j)
        ratios.append(norm_lp(mj, 2) / base)
    positive = [(j, r) for j, r in zip(js, ratios) if r > 0]
    if len(positive) < 2:
        raise ValueError("too few nonzero ratios to fit a slope")
    slope = float(
        np.polyfit([j for j, _ in positive], [math.log2(r) for _, r in positive], 1)[0]
    )
    return DyadicL2Result(tuple(js), tuple(ratios), slope)


@dataclass(frozen=True)
class DominationResult:
    js: tuple
    sup_ratios: tuple  # sup_x piece-maximal / (2^(j (n - beta)) Mf)
    slope: float  # fitted log2 slope; bounded sequences fit ~ <= 0
    active_floor: float


def domination_ratios(
    f: GridFunction,
    spec: MeasureSpec,
    beta: float,
    js,
    tg: TimeGrid,
    radii=None,
    floor: float = 1e-8,
) -> DominationResult:
    """Pointwise domination of the dyadic pieces by the HL maximal function.

    For nonnegative f, each band piece is dominated by 2^(j (n - beta)) Mf up
    to a constant; the returned sup-ratios should stay bounded in j (fitted
    slope ~ <= 0).  Points where Mf is below ``floor`` are excluded: the
    domination is vacuous where f has no mass nearby.
    """
    vals = np.real(f.values)
    if np.any(vals < -1e-14):
        raise ValueError("domination check needs a nonnegative f")
    if np.iscomplexobj(f.values) and np.max(np.abs(f.values.imag)) > 1e-14:
        raise ValueError("domination check needs a real f")
    if not np.any(vals > 0):
        raise ValueError("f must be nontrivial")
    js = _validate_bands(f, js)
    n = f.spec.n
    mf = hl_maximal(f, dyadic_radii(f.spec) if radii is None else radii).values
    active = mf > floor
    if not np.any(active):
        raise ValueError("maximal function vanishes everywhere above the floor")
    sup_ratios = []
    for j in js:
        mj = maximal_multiplier(f, spec, tg, piece=j).values
        ratio = mj[active] / (2.0 ** (j * (n - beta)) * mf[active])
        sup_ratios.append(float(np.max(ratio)))
    slope = float(np.polyfit(js, [math.log2(max(r, 1e-300)) for r in sup_ratios], 1)[0])
    return DominationResult(tuple(js), tuple(sup_ratios), slope, floor)
