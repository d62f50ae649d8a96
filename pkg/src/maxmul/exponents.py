"""Variable exponents p(.) and the admissibility arithmetic built on them.

Exponent families (constant, smooth step, radial log perturbation, grid
tabulated), log-Hoelder modulus estimation, the interpolation exponent map
and its constructive inverse, and the four range calculators that decide
which (p_minus, p_plus) windows make the dilation-maximal multiplier operator
bounded on the variable-exponent space.

Exponents are finite everywhere: 1 <= p_minus <= p_plus < infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .glue import smooth_step
from .grid import GridSpec

__all__ = [
    "ExponentField",
    "ConstantExponent",
    "SmoothStepExponent",
    "RadialExponent",
    "TabulatedExponent",
    "LogHolderReport",
    "RangeVerdict",
    "MaximalClassVerdict",
    "InterpolationConstruction",
    "SeriesBound",
    "bounds",
    "log_holder_estimate",
    "interpolation_exponent",
    "theta_admissible_max",
    "construct_interpolation_exponent",
    "range_absolute",
    "range_scaled",
    "range_pointwise_decay",
    "range_radial_fractal",
    "in_maximal_class",
    "dyadic_series_bound",
    "parse_exponent",
]


def _as_points(x, n: int):
    arr = np.asarray(x, dtype=float)
    if n == 1 and (arr.ndim == 0 or arr.shape[-1] != 1):
        arr = arr[..., np.newaxis]
    if arr.ndim == 1 and arr.shape == (n,):
        return arr.reshape(1, n), (), True
    if arr.shape[-1] != n:
        raise ValueError(f"points must have {n} coordinates")
    return arr.reshape(-1, n), arr.shape[:-1], False


class ExponentField:
    """Base class: a deterministic exponent rule with cached bounds."""

    ndim: int
    p_minus: float
    p_plus: float
    p_inf: float | None = None  # decay limit, when the family defines one

    def _validate(self):
        if not (1.0 <= self.p_minus <= self.p_plus < math.inf):
            raise ValueError(
                f"exponent bounds must satisfy 1 <= p- <= p+ < inf, "
                f"got ({self.p_minus}, {self.p_plus})"
            )

    def _eval(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x):
        pts, lead, scalar = _as_points(x, self.ndim)
        vals = self._eval(pts)
        return float(vals[0]) if scalar else vals.reshape(lead)

    def on_grid(self, spec: GridSpec) -> np.ndarray:
        """Exponent values at the grid points, shaped like the grid."""
        if spec.n != self.ndim:
            raise ValueError("grid dimension does not match the exponent field")
        return self._eval(spec.points()).reshape((spec.N,) * spec.n)

    def argmax_point(self) -> np.ndarray | None:
        """A point attaining (or approaching) p_plus, when known."""
        return None

    def interest_points(self) -> list[np.ndarray]:
        """Locations where the modulus estimator should concentrate pairs."""
        return []

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantExponent(ExponentField):
    value: float
    ndim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "p_minus", float(self.value))
        object.__setattr__(self, "p_plus", float(self.value))
        object.__setattr__(self, "p_inf", float(self.value))
        self._validate()

    def _eval(self, pts):
        return np.full(pts.shape[0], float(self.value))

    def argmax_point(self):
        return np.zeros(self.ndim)

    def describe(self):
        return f"const:{self.value:g}"


@dataclass(frozen=True)
class SmoothStepExponent(ExponentField):
    """Transition from p0 to p1 along the first coordinate, centered at x0.

    width > 0 uses the C-infinity glue over [x0 - w/2, x0 + w/2]; width = 0 is
    the hard jump (value p1 on x1 >= x0).  The declared decay limit is the
    midpoint: a two-sided step has no honest p_inf and the modulus estimator
    reports what the sampled window sees.
    """

    p0: float
    p1: float
    x0: float = 0.0
    width: float = 1.0
    ndim: int = 1

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be >= 0")
        object.__setattr__(self, "p_minus", float(min(self.p0, self.p1)))
        object.__setattr__(self, "p_plus", float(max(self.p0, self.p1)))
        object.__setattr__(self, "p_inf", 0.5 * (self.p0 + self.p1))
        self._validate()

    def _eval(self, pts):
        t = pts[:, 0]
        if self.width == 0:
            s = (t >= self.x0).astype(float)
        else:
            s = smooth_step((t - self.x0) / self.width + 0.5)
        return self.p0 + (self.p1 - self.p0) * s

    def argmax_point(self):
        out = np.zeros(self.ndim)
        out[0] = self.x0 + self.width if self.p1 >= self.p0 else self.x0 - self.width
        return out

    def interest_points(self):
        pt = np.zeros(self.ndim)
        pt[0] = self.x0
        return [pt]

    def describe(self):
        return f"step:{self.p0:g},{self.p1:g},x0={self.x0:g},w={self.width:g}"


@dataclass(frozen=True)
class RadialExponent(ExponentField):
    """p(x) = p_limit + amplitude / log(e + |x|); the canonical P_log family."""

    p_limit: float
    amplitude: float
    ndim: int = 1

    def __post_init__(self):
        lo = min(self.p_limit, self.p_limit + self.amplitude)
        hi = max(self.p_limit, self.p_limit + self.amplitude)
        object.__setattr__(self, "p_minus", float(lo))
        object.__setattr__(self, "p_plus", float(hi))
        object.__setattr__(self, "p_inf", float(self.p_limit))
        self._validate()

    def _eval(self, pts):
        r = np.sqrt(np.sum(pts * pts, axis=-1))
        return self.p_limit + self.amplitude / np.log(math.e + r)

    def argmax_point(self):
        return np.zeros(self.ndim) if self.amplitude >= 0 else None

    def describe(self):
        return f"radial:pinf={self.p_limit:g},A={self.amplitude:g}"


class TabulatedExponent(ExponentField):
    """Exponent tabulated on a grid; nearest-node evaluation, edge-clamped
    outside the box.  Bounds are the sample extremes and the grid is the
    documented domain."""

    def __init__(self, spec: GridSpec, values):
        vals = np.asarray(values, dtype=float)
        if vals.shape != (spec.N,) * spec.n:
            raise ValueError("value shape does not match the grid")
        self.spec = spec
        self.values = vals
        self.ndim = spec.n
        self.p_minus = float(np.min(vals))
        self.p_plus = float(np.max(vals))
        self.p_inf = None
        self._validate()

    def _eval(self, pts):
        idx = np.rint((pts + self.spec.L / 2) / self.spec.dx).astype(np.int64)
        idx = np.clip(idx, 0, self.spec.N - 1)
        return self.values[tuple(idx[:, ax] for ax in range(self.ndim))]

    def argmax_point(self):
        flat = int(np.argmax(self.values))
        idx = np.unravel_index(flat, self.values.shape)
        return np.array([-self.spec.L / 2 + i * self.spec.dx for i in idx])

    def interest_points(self):
        # steepest adjacent-node transition per axis: pair sampling must
        # concentrate there or grid-scale jumps go unseen
        pts = []
        for ax in range(self.ndim):
            diffs = np.abs(np.diff(self.values, axis=ax))
            if np.max(diffs) <= 0:
                continue
            idx = list(np.unravel_index(int(np.argmax(diffs)), diffs.shape))
            coord = np.array([-self.spec.L / 2 + i * self.spec.dx for i in idx])
            coord[ax] += 0.5 * self.spec.dx  # midpoint of the steep cell edge
            pts.append(coord)
        return pts

    def describe(self):
        return f"tabulated(N={self.spec.N}, L={self.spec.L:g})"


class MappedExponent(ExponentField):
    """Interpolation image 2 theta p / (2 - (1 - theta) p) of a base field.

    The image is positive and finite wherever the map is defined but may dip
    below 1 for small theta; the constructive window choice is what
    guarantees an image strictly inside (1, inf)."""

    def __init__(self, base: ExponentField, theta: float):
        self.base = base
        self.theta = float(theta)
        self.ndim = base.ndim
        # the map is monotone increasing where defined, so bounds map directly
        self.p_minus = self._map(base.p_minus)
        self.p_plus = self._map(base.p_plus)
        self.p_inf = None if base.p_inf is None else self._map(base.p_inf)
        if not 0 < self.p_minus <= self.p_plus < math.inf:
            raise ValueError(
                f"interpolation image must have finite positive bounds, "
                f"got ({self.p_minus}, {self.p_plus})"
            )

    def _map(self, u: float) -> float:
        return 2.0 * self.theta * u / (2.0 - (1.0 - self.theta) * u)

    def _eval(self, pts):
        u = self.base._eval(pts)
        return 2.0 * self.theta * u / (2.0 - (1.0 - self.theta) * u)

    def argmax_point(self):
        return self.base.argmax_point()

    def interest_points(self):
        return self.base.interest_points()

    def describe(self):
        return f"interp(theta={self.theta:g}) of {self.base.describe()}"


def bounds(p: ExponentField, resolution: int | None = None) -> tuple[float, float]:
    """(p_minus, p_plus); analytic for closed-form families, sample extremes
    for tabulated fields.  ``resolution`` is accepted for symmetry but the
    cached bounds are already exact for every shipped family."""
    del resolution
    return (p.p_minus, p.p_plus)


@dataclass(frozen=True)
class LogHolderReport:
    c1: float
    c2: float
    p_inf: float
    n_local_pairs: int
    n_far_samples: int
    c1_per_scale: tuple
    c1_diverging: bool
    c2_lower_bound_only: bool


_LOCAL_SCALES = [0.499] + [2.0**-k for k in range(2, 14)]


def log_holder_estimate(
    p: ExponentField,
    pair_budget: int = 4096,
    box_halfwidth: float = 8.0,
    far_radius: float = 1e6,
    seed: int = 0,
) -> LogHolderReport:
    """Sampled local and decay log-Hoelder moduli.

    c1 maximizes |p(x)-p(y)| log(e + 1/|x-y|) over pairs with |x-y| < 1/2,
    stratified over dyadic separations (plus pairs straddling any declared
    interest points, and lattice-offset pairs for tabulated fields, so jumps
    are not missed).  c1 is flagged diverging when the per-scale maxima keep
    growing down to the finest sampled separation, the numerical signature of
    a non-log-Hoelder field.

    c2 maximizes |p(x) - p_inf| log(e + |x|) over far samples.  Tabulated
    fields carry no decay information beyond their box: their c2 is a lower
    bound and is flagged as such.
    """
    if pair_budget < 1000:
        raise ValueError("pair budget must be at least 1000")
    rng = np.random.RandomState(seed)
    n = p.ndim

    tabulated = isinstance(p, TabulatedExponent)
    if tabulated:
        box_halfwidth = min(box_halfwidth, p.spec.L / 2)

    per_scale = pair_budget // (2 * len(_LOCAL_SCALES))
    interest = p.interest_points()
    c1_scale = []
    total_pairs = 0
    for d in _LOCAL_SCALES:
        best = 0.0
        # uniform pairs at separation d
        x = rng.uniform(-box_halfwidth, box_halfwidth, size=(per_scale, n))
        u = rng.normal(size=(per_scale, n))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        y = x + d * u
        pools = [(x, y)]
        # pairs straddling declared transition points
        for q in interest:
            s = rng.uniform(0, 1, size=(per_scale, 1))
            xq = q[None, :] - d * s * u
            pools.append((xq, xq + d * u))
        # lattice-offset pairs for tabulated fields (captures grid-scale jumps)
        if tabulated and d >= p.spec.dx:
            off = max(1, int(round(d / p.spec.dx)))
            if off < p.spec.N // 2:
                nodes = rng.randint(0, p.spec.N - off, size=(per_scale, n))
                ax = rng.randint(0, n, size=per_scale)
                nodes2 = nodes.copy()
                nodes2[np.arange(per_scale), ax] += off
                xg = -p.spec.L / 2 + nodes * p.spec.dx
                yg = -p.spec.L / 2 + nodes2 * p.spec.dx
                pools.append((xg, yg))
        for xa, ya in pools:
            dist = np.linalg.norm(xa - ya, axis=1)
            ok = (dist > 0) & (dist < 0.5)
            if not np.any(ok):
                continue
            mod = np.abs(p(xa[ok]) - p(ya[ok])) * np.log(math.e + 1.0 / dist[ok])
            best = max(best, float(np.max(mod)))
            total_pairs += int(np.sum(ok))
        c1_scale.append(best)
    c1 = max(c1_scale)

    # growth down to the finest separation marks a non-log-Hoelder field
    diverging = False
    if c1 > 0:
        finest = c1_scale[-1]
        diverging = finest >= 0.999 * c1 and finest > 1.1 * c1_scale[-4]

    # decay modulus
    lower_only = False
    if p.p_inf is not None:
        p_inf = float(p.p_inf)
    else:
        lower_only = True
        edge = rng.uniform(-1, 1, size=(64, n))
        edge /= np.linalg.norm(edge, axis=1, keepdims=True)
        p_inf = float(np.mean(p(edge * box_halfwidth * 0.999)))
    if tabulated:
        lower_only = True
        far_radius = min(far_radius, box_halfwidth)
    n_far = max(pair_budget // 4, 256)
    rr = np.exp(rng.uniform(np.log(2.0), np.log(max(far_radius, 4.0)), size=n_far))
    uu = rng.normal(size=(n_far, n))
    uu /= np.linalg.norm(uu, axis=1, keepdims=True)
    xs = rr[:, None] * uu
    c2 = float(np.max(np.abs(p(xs) - p_inf) * np.log(math.e + rr)))

    return LogHolderReport(
        c1=c1,
        c2=c2,
        p_inf=p_inf,
        n_local_pairs=total_pairs,
        n_far_samples=n_far,
        c1_per_scale=tuple(c1_scale),
        c1_diverging=bool(diverging),
        c2_lower_bound_only=lower_only,
    )


def interpolation_exponent(p: ExponentField, theta: float) -> ExponentField:
    """The exponent q with 1/p = (1 - theta)/2 + theta/q, i.e.
    q = 2 theta p / (2 - (1 - theta) p).  Requires p_plus < 2/(1 - theta)."""
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    limit = 2.0 / (1.0 - theta)
    if not p.p_plus < limit:
        witness = p.argmax_point()
        where = "" if witness is None else f" (attained near x = {np.asarray(witness).tolist()})"
        raise ValueError(
            f"interpolation exponent undefined: p_plus = {p.p_plus:g}{where} "
            f"violates p_plus < 2/(1-theta) = {limit:g}"
        )
    return MappedExponent(p, theta)


def theta_admissible_max(n: int, alpha: float, beta: float) -> float:
    """Open upper bound (2 alpha - 1) / (2 alpha - 1 + 2n - 2 beta) on the
    interpolation parameter; equals 1 in the full-dimension case beta = n."""
    _check_dimension_args(n, alpha, beta)
    return (2 * alpha - 1) / (2 * alpha - 1 + 2 * n - 2 * beta)


@dataclass(frozen=True)
class InterpolationConstruction:
    theta: float
    p_tilde: ExponentField
    delta: float
    theta0: float
    theta_max: float


def construct_interpolation_exponent(
    p: ExponentField, n: int, alpha: float, beta: float
) -> InterpolationConstruction:
    """Constructive choice of theta and the companion exponent.

    Writes 1/p(x) = 1/2 + r(x).  The admissible window forces
    -theta_max/2 < r < theta_max/2 with theta_max = (2a-1)/(2n+2a-2b-1);
    delta is half the smaller margin, theta0 = delta (< 2 delta), and
    theta = theta_max - theta0.  The returned exponent then satisfies
    1 < q_minus <= q_plus < inf and |r/theta| < 1/2 with strict room.
    """
    _check_dimension_args(n, alpha, beta)
    theta_max = theta_admissible_max(n, alpha, beta)
    r_inf = 1.0 / p.p_plus - 0.5  # infimum of r
    r_sup = 1.0 / p.p_minus - 0.5  # supremum of r
    margin_low = r_inf - (-theta_max / 2)  # fails when p_plus too large
    margin_high = theta_max / 2 - r_sup  # fails when p_minus too small
    if margin_low <= 0 or margin_high <= 0:
        rng = range_absolute(n, alpha, beta, p.p_minus, p.p_plus)
        side = []
        if margin_high <= 0:
            side.append(f"p_minus = {p.p_minus:g} does not exceed the lower bound {rng.lower:g}")
        if margin_low <= 0:
            side.append(f"p_plus = {p.p_plus:g} is not below the upper bound {rng.upper:g}")
        raise ValueError("admissible range violated: " + "; ".join(side))
    delta = 0.5 * min(margin_low, margin_high)
    theta0 = delta
    theta = theta_max - theta0
    p_tilde = interpolation_exponent(p, theta)
    return InterpolationConstruction(theta, p_tilde, delta, theta0, theta_max)


@dataclass(frozen=True)
class RangeVerdict:
    admissible: bool
    lower: float
    upper: float
    margin_low: float  # p_minus - lower
    margin_high: float  # upper - p_plus


def _check_dimension_args(n, alpha, beta):
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if not alpha > 0.5:
        raise ValueError(f"decay exponent must satisfy alpha > 1/2, got {alpha}")
    if not 0 <= beta <= n:
        raise ValueError(f"dimension parameter must satisfy 0 <= beta <= n, got {beta}")


def _check_p(p_minus, p_plus):
    if not (1 <= p_minus <= p_plus < math.inf):
        raise ValueError(f"need 1 <= p_minus <= p_plus < inf, got ({p_minus}, {p_plus})")


def _verdict(lower, upper, p_minus, p_plus) -> RangeVerdict:
    return RangeVerdict(
        admissible=bool(lower < p_minus and p_plus < upper),
        lower=float(lower),
        upper=float(upper),
        margin_low=float(p_minus - lower),
        margin_high=float(upper - p_plus),
    )


def range_absolute(n, alpha, beta, p_minus, p_plus) -> RangeVerdict:
    """Window with both endpoints fixed by (n, alpha, beta):

        (2n+2a-2b-1)/(n+2a-b-1) < p- <= p+ < (2n+2a-2b-1)/(n-b),

    degenerating to (0, inf) when beta = n."""
    _check_dimension_args(n, alpha, beta)
    _check_p(p_minus, p_plus)
    if beta == n:
        return _verdict(0.0, math.inf, p_minus, p_plus)
    num = 2 * n + 2 * alpha - 2 * beta - 1
    return _verdict(num / (n + 2 * alpha - beta - 1), num / (n - beta), p_minus, p_plus)


def range_scaled(n, alpha, beta, p_minus, p_plus) -> RangeVerdict:
    """Same lower endpoint, upper endpoint scaling with p_minus:
    p+ < ((n+2a-b-1)/(n-b)) p-."""
    _check_dimension_args(n, alpha, beta)
    _check_p(p_minus, p_plus)
    num = 2 * n + 2 * alpha - 2 * beta - 1
    if beta == n:
        return _verdict(0.0, math.inf, p_minus, p_plus)
    lower = num / (n + 2 * alpha - beta - 1)
    upper = (n + 2 * alpha - beta - 1) / (n - beta) * p_minus
    return _verdict(lower, upper, p_minus, p_plus)


def range_pointwise_decay(n, a, p_minus, p_plus) -> RangeVerdict:
    """Window for a pointwise decay bound (1+|xi|)^-a, a > 1/2 (the beta = 0
    case of the scaled window)."""
    if not a > 0.5:
        raise ValueError(f"decay exponent must satisfy a > 1/2, got {a}")
    if n < 1:
        raise ValueError("dimension must be >= 1")
    _check_p(p_minus, p_plus)
    lower = (2 * n + 2 * a - 1) / (n + 2 * a - 1)
    upper = (n + 2 * a - 1) / n * p_minus
    return _verdict(lower, upper, p_minus, p_plus)


def range_radial_fractal(n, alpha_dim, p_minus, p_plus) -> RangeVerdict:
    """Window for the rotation-invariant composition of an alpha_dim-dimensional
    radial measure (0 <= alpha_dim < 1) with sphere shells in dimension n >= 2:

        (n - a)/(n - 1) < p- <= p+ < ((n - 1)/(1 - a)) p-.

    Coincides with range_scaled at alpha = (n-1+a)/2, beta = n-1+a."""
    if not 0 <= alpha_dim < 1:
        raise ValueError(f"radial dimension must satisfy 0 <= a < 1, got {alpha_dim}")
    if n < 2:
        raise ValueError("ambient dimension must be >= 2")
    _check_p(p_minus, p_plus)
    lower = (n - alpha_dim) / (n - 1)
    upper = (n - 1) / (1 - alpha_dim) * p_minus
    return _verdict(lower, upper, p_minus, p_plus)


@dataclass(frozen=True)
class MaximalClassVerdict:
    ok: bool
    reasons: tuple
    report: LogHolderReport


def in_maximal_class(
    p: ExponentField, threshold: float = 1e3, **estimate_kwargs
) -> MaximalClassVerdict:
    """Sufficient criterion for the Hardy-Littlewood maximal operator to be
    bounded on the variable space: p_minus > 1, p_plus < inf, and finite
    log-Hoelder moduli (below ``threshold``, not diverging at fine scales)."""
    report = log_holder_estimate(p, **estimate_kwargs)
    reasons = []
    if not p.p_minus > 1:
        reasons.append("p_minus > 1 fails")
    if not p.p_plus < math.inf:
        reasons.append("p_plus < inf fails")
    if report.c1_diverging:
        reasons.append("local modulus c1 diverges at fine scales")
    if not report.c1 < threshold:
        reasons.append(f"c1 = {report.c1:g} exceeds threshold {threshold:g}")
    if not report.c2 < threshold:
        reasons.append(f"c2 = {report.c2:g} exceeds threshold {threshold:g}")
    return MaximalClassVerdict(ok=not reasons, reasons=tuple(reasons), report=report)


@dataclass(frozen=True)
class SeriesBound:
    rho: float
    converges: bool
    total: float
    theta_max: float
    per_term: tuple


def dyadic_series_bound(n, alpha, beta, theta, terms: int = 16) -> SeriesBound:
    """Geometric bound 2^{(1/2-a)(1-t) j} 2^{j (n-b) t} on the dyadic pieces.

    The ratio is rho = 2^{(1/2-a)(1-t) + (n-b) t}; the series over j converges
    exactly when theta < theta_admissible_max(n, alpha, beta)."""
    _check_dimension_args(n, alpha, beta)
    if not 0 <= theta <= 1:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    expo = (0.5 - alpha) * (1 - theta) + (n - beta) * theta
    rho = 2.0**expo
    converges = rho < 1
    total = 1.0 / (1.0 - rho) if converges else math.inf
    per = tuple(rho**j for j in range(terms))
    return SeriesBound(rho, converges, total, theta_admissible_max(n, alpha, beta), per)


def parse_exponent(text: str, ndim: int = 1) -> ExponentField:
    """Parse the CLI exponent mini-syntax.

    ``const:2.0`` | ``step:1.8,2.2,x0=0,w=1`` | ``radial:pinf=2,A=0.5``.
    """
    head, _, rest = text.strip().partition(":")
    if head == "const":
        return ConstantExponent(float(rest), ndim=ndim)
    if head == "step":
        parts = [s.strip() for s in rest.split(",")]
        if len(parts) < 2:
            raise ValueError(f"step exponent needs two values, got {text!r}")
        p0, p1 = float(parts[0]), float(parts[1])
        kv = {}
        for item in parts[2:]:
            key, _, val = item.partition("=")
            if not val:
                raise ValueError(f"malformed step parameter {item!r}")
            kv[key.strip()] = float(val)
        x0 = kv.pop("x0", 0.0)
        w = kv.pop("w", 1.0)
        if kv:
            raise ValueError(f"unknown step parameters {sorted(kv)}")
        return SmoothStepExponent(p0, p1, x0=x0, width=w, ndim=ndim)
    if head == "radial":
        kv = {}
        for item in rest.split(","):
            key, _, val = item.partition("=")
            if not val:
                raise ValueError(f"malformed radial parameter {item!r}")
            kv[key.strip()] = float(val)
        p_limit = kv.pop("pinf")
        amp = kv.pop("A", 0.5)
        if kv:
            raise ValueError(f"unknown radial parameters {sorted(kv)}")
        return RadialExponent(p_limit, amp, ndim=ndim)
    raise ValueError(f"unknown exponent family {head!r}")
