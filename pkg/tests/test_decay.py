import numpy as np
import pytest

from maxmul.decay import (
    decay_directions,
    fit_decay,
    pointwise_decay_fit,
    square_function,
    square_function_fit,
    square_function_grad,
)
from maxmul.measures import BallVolume, CantorLine, PointMass, RadialCompose, SphereSurface

CIRCLE = SphereSurface(2, 1.0)
CANTOR_RADIAL = RadialCompose(CantorLine(4), 2, shift=0.5)


def test_square_function_at_zero():
    assert square_function(CIRCLE, np.zeros(2)) == pytest.approx(1.0, abs=1e-12)


def test_square_function_unimodular_pointmass():
    pm = PointMass((1.0,))
    assert square_function(pm, np.array([10.0])) == pytest.approx(1.0, abs=1e-12)


def test_square_function_refinement():
    xi = np.array([64.0, 0.0])
    v1 = square_function(CIRCLE, xi)
    v2 = square_function(CIRCLE, xi, refine=10)
    assert abs(v1 - v2) / v2 < 1e-3


def test_square_function_below_sup():
    xi = np.array([17.0, 3.0])
    t = np.linspace(1, 2, 4001)
    sup = np.max(np.abs(CIRCLE.ft(t[:, None] * xi[None, :])))
    assert square_function(CIRCLE, xi) <= sup + 1e-6


def test_square_function_grad_pointmass():
    pm = PointMass((1.0,))
    assert square_function_grad(pm, np.array([10.0])) == pytest.approx(2 * np.pi, abs=1e-10)


def test_square_function_grad_at_zero_finite():
    v = square_function_grad(CIRCLE, np.zeros(2))
    assert np.isfinite(v)


def test_square_function_grad_refinement():
    xi = np.array([32.0, 8.0])
    v1 = square_function_grad(CIRCLE, xi)
    v2 = square_function_grad(CIRCLE, xi, refine=10)
    assert abs(v1 - v2) / v2 < 2e-3


def test_fit_exact_power_law():
    mags = 4.0 * 2.0 ** (np.arange(49) / 8)
    for mode in ("regression", "envelope"):
        fit = fit_decay(lambda xi: (1 + float(np.linalg.norm(xi))) ** -0.75, mags, mode=mode)
        assert fit.alpha == pytest.approx(0.75, abs=1e-6)
        assert fit.residual < 1e-9


def test_fit_validates_inputs():
    with pytest.raises(ValueError):
        fit_decay(lambda xi: 1.0, [1, 2, 4, 8, 16])  # too few magnitudes
    with pytest.raises(ValueError):
        fit_decay(lambda xi: 1.0, [1, 2, 3, 4, 5, 6])  # < 5 octaves
    with pytest.raises(ValueError):
        fit_decay(lambda xi: 1.0, 4.0 * 2.0 ** np.arange(8), mode="midpoint")


def test_fit_drops_zero_octaves():
    mags = 1.0 * 2.0 ** (np.arange(25) / 4)

    def sampler(xi):
        r = float(np.linalg.norm(xi))
        return 0.0 if r < 2.0 else (1 + r) ** -1.0

    fit = fit_decay(sampler, mags, mode="envelope")
    assert fit.dropped_octaves >= 1
    assert fit.alpha == pytest.approx(1.0, abs=1e-6)


def test_directions_shapes():
    assert decay_directions(1).shape == (1, 1)
    d2 = decay_directions(2, 8)
    assert d2.shape == (8, 2)
    assert np.allclose(np.linalg.norm(d2, axis=1), 1.0)
    d3 = decay_directions(3, 8)
    assert np.allclose(np.linalg.norm(d3, axis=1), 1.0)


def test_circle_pointwise_envelope():
    fit = pointwise_decay_fit(CIRCLE, 4.0, 512.0, per_octave=64)
    assert abs(fit.alpha - 0.5) < 0.05


def test_disk_pointwise_envelope():
    fit = pointwise_decay_fit(BallVolume(2, 1.0), 4.0, 512.0, per_octave=64)
    assert abs(fit.alpha - 1.5) < 0.1


def test_circle_square_function_fit():
    fit = square_function_fit(CIRCLE, 4.0, 512.0)
    assert abs(fit.alpha - 0.5) < 0.1


def test_delta_square_function_flat():
    fit = square_function_fit(PointMass((0.0, 0.0)), 4.0, 512.0)
    assert abs(fit.alpha) < 1e-12


def test_cantor_radial_smoke_fits():
    # coarse-range smoke check; the production-range fits with the tight
    # tolerances run in the acceptance suite
    fp = pointwise_decay_fit(CANTOR_RADIAL, 4.0, 256.0, per_octave=64)
    fs = square_function_fit(CANTOR_RADIAL, 4.0, 256.0)
    assert abs(fp.alpha - 0.5) < 0.15
    assert abs(fs.alpha - 0.75) < 0.15
    assert fs.alpha - fp.alpha > 0.1
