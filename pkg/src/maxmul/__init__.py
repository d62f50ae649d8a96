"""Numerical workbench for dilation-maximal multiplier operators on
variable-exponent Lebesgue spaces.

Core pieces: periodic grids with a continuous-convention Fourier transform,
variable exponents with their admissibility arithmetic, the Luxemburg norm,
compactly supported (possibly fractal) measures with closed-form transforms,
decay diagnostics, the dyadic decomposition of the maximal operator, and a
scenario CLI emitting reproducible CSV.
"""

from .bessel import bessel_j
from .decay import (
    DecayFit,
    fit_decay,
    pointwise_decay_fit,
    square_function,
    square_function_fit,
    square_function_grad,
    square_function_grad_fit,
)
from .exponents import (
    ConstantExponent,
    ExponentField,
    InterpolationConstruction,
    LogHolderReport,
    MaximalClassVerdict,
    RadialExponent,
    RangeVerdict,
    SeriesBound,
    SmoothStepExponent,
    TabulatedExponent,
    bounds,
    construct_interpolation_exponent,
    dyadic_series_bound,
    in_maximal_class,
    interpolation_exponent,
    log_holder_estimate,
    parse_exponent,
    range_absolute,
    range_pointwise_decay,
    range_radial_fractal,
    range_scaled,
    theta_admissible_max,
)
from .grid import (
    GridFunction,
    GridSpec,
    forward_ft,
    inverse_ft,
    norm_lp,
    sample,
    sample_at,
)
from .measures import (
    AtomicMeasure,
    BallVolume,
    CantorLine,
    DimensionFit,
    MeasureSpec,
    PointMass,
    RadialCompose,
    SphereSurface,
    atomize,
    beta_dimension_estimate,
    ft,
    ft_gradient,
    parse_measure,
)
from .multiplier import (
    DominationResult,
    DyadicL2Result,
    TimeGrid,
    apply_multiplier,
    cutoff_band,
    cutoff_low,
    direct_average,
    domination_ratios,
    dyadic_l2_ratios,
    dyadic_radii,
    hl_maximal,
    maximal_multiplier,
)
from .varlp import luxemburg_norm, modular

__version__ = "0.1.0"
